#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kato.hpp"
#include "types.hpp"

namespace qsym::dyn {

// Sup over t in R is approximated by a uniform grid plus random probe times.
struct TimeSamplingPlan {
  int grid_count = 4096;
  double grid_horizon = 0.0;  // 0: choose 4*pi / min-gap of H(eps)
  int random_count = 512;
  double random_horizon_factor = 1e6;  // random times in [0, factor * T]
  std::uint64_t seed = 42;
};

struct WanderingRangeEstimate {
  double lower = 0.0;   // certified lower estimate (max over samples)
  double upper = 0.0;   // certified upper bound, 2*||offblock||_F
  double t_argmax = 0.0;
  int samples_used = 0;
};

// e^{itH} S e^{-itH}
ComplexMatrix heisenberg(const ComplexMatrix& s, const HermitianMatrix& h,
                         double t);

// Fragile/robust split of the evolution difference:
//   A = e^{itH(eps)} [S, e^{-itH~(eps)}]
//   B = e^{itH(eps)} [S, e^{-itH(eps)} - e^{-itH~(eps)}]
// with A + B = e^{itH(eps)} S e^{-itH(eps)} - S.
std::pair<ComplexMatrix, ComplexMatrix> split_ab(const ComplexMatrix& s,
                                                 const HermitianMatrix& h,
                                                 const HermitianMatrix& v,
                                                 double eps, double t,
                                                 const kato::KatoFamily& fam);

// delta_{H+eps V}(S; psi) = sup_t ||(e^{it(H+epsV)} S e^{-it(H+epsV)} - S) psi||
WanderingRangeEstimate wandering_range(const ComplexMatrix& s,
                                       const HermitianMatrix& h,
                                       const HermitianMatrix& v, double eps,
                                       const ComplexVector& psi,
                                       const TimeSamplingPlan& plan = {});

// 14 sqrt(d) ||V|| ||S|| |eps| / eta; 0 with a vacuous-gap flag when the
// spectrum has a single cluster.
struct FiniteDimBound {
  double value = 0.0;
  bool vacuous_gap = false;
};

FiniteDimBound finite_dim_bound(const ComplexMatrix& s,
                                const HermitianMatrix& v, double eps,
                                const spectral::SpectralDecomposition& dec);

// sup_t ||(e^{-itH(eps)} - e^{-itH~(eps)}) psi|| over the sampled times
double eternal_gap(const HermitianMatrix& h, const HermitianMatrix& v,
                   double eps, const ComplexVector& psi,
                   const kato::KatoFamily& fam,
                   const TimeSamplingPlan& plan = {});

struct ExponentFit {
  double gamma = 0.0;
  double r_squared = 0.0;
};

// Least-squares slope of log(delta) vs log(eps).
ExponentFit exponent_fit(const std::vector<double>& eps_values,
                         const std::vector<double>& delta_values);

}  // namespace qsym::dyn
