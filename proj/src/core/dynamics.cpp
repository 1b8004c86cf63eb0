#include "dynamics.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "numkernel.hpp"

namespace qsym::dyn {

namespace {

std::vector<double> sample_times(const TimeSamplingPlan& plan, double T) {
  std::vector<double> ts;
  ts.reserve(static_cast<size_t>(plan.grid_count + plan.random_count));
  for (int i = 0; i < plan.grid_count; ++i)
    ts.push_back(T * static_cast<double>(i) /
                 static_cast<double>(std::max(1, plan.grid_count - 1)));
  std::mt19937_64 rng(plan.seed);
  std::uniform_real_distribution<double> uni(0.0, plan.random_horizon_factor * T);
  for (int i = 0; i < plan.random_count; ++i) ts.push_back(uni(rng));
  return ts;
}

double horizon(const TimeSamplingPlan& plan,
               const spectral::SpectralDecomposition& dec) {
  if (plan.grid_horizon > 0.0) return plan.grid_horizon;
  const double gap = dec.gap;
  if (!std::isfinite(gap) || gap <= 0.0) return 2.0 * std::numbers::pi;
  return 4.0 * std::numbers::pi / gap;
}

}  // namespace

ComplexMatrix heisenberg(const ComplexMatrix& s, const HermitianMatrix& h,
                         double t) {
  const ComplexMatrix u = num::unitary_exp(h, t);  // e^{-itH}
  return u.adjoint() * s * u;
}

std::pair<ComplexMatrix, ComplexMatrix> split_ab(const ComplexMatrix& s,
                                                 const HermitianMatrix& h,
                                                 const HermitianMatrix& v,
                                                 double eps, double t,
                                                 const kato::KatoFamily& fam) {
  const HermitianMatrix he(ComplexMatrix(h.mat() + eps * v.mat()));
  const ComplexMatrix evolve = num::unitary_exp(he, t);       // e^{-itH(eps)}
  const ComplexMatrix back = evolve.adjoint();                // e^{+itH(eps)}
  const HermitianMatrix ht = kato::block_diagonal_approx(h, v, eps, fam);
  const ComplexMatrix evolve_t = num::unitary_exp(ht, t);     // e^{-itH~(eps)}
  const ComplexMatrix a = back * commutator(s, evolve_t);
  const ComplexMatrix b = back * commutator(s, evolve - evolve_t);
  return {a, b};
}

WanderingRangeEstimate wandering_range(const ComplexMatrix& s,
                                       const HermitianMatrix& h,
                                       const HermitianMatrix& v, double eps,
                                       const ComplexVector& psi,
                                       const TimeSamplingPlan& plan) {
  if (std::abs(psi.norm() - 1.0) > 1e-10)
    throw UsageError("wandering_range: psi must be a unit vector");
  const HermitianMatrix he(ComplexMatrix(h.mat() + eps * v.mat()));
  const auto dec = spectral::decompose(he);
  const num::EigResult eig{dec.eigenvalues, dec.eigenvectors};
  const Eigen::Index n = h.dim();

  const ComplexMatrix sp = eig.vectors.adjoint() * s * eig.vectors;
  const ComplexVector phi = eig.vectors.adjoint() * psi;
  const ComplexVector sphi = sp * phi;

  WanderingRangeEstimate est;
  double off2 = 0.0;
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      if (dec.cluster_of[a] != dec.cluster_of[b]) off2 += std::norm(sp(a, b));
  est.upper = 2.0 * std::sqrt(off2);

  const double T = horizon(plan, dec);
  const std::vector<double> ts = sample_times(plan, T);
  ComplexVector z(n), y(n);
  for (double t : ts) {
    for (Eigen::Index b = 0; b < n; ++b)
      z(b) = std::exp(Complex(0.0, -t * dec.eigenvalues(b))) * phi(b);
    y = sp * z;
    double acc = 0.0;
    for (Eigen::Index a = 0; a < n; ++a)
      acc += std::norm(std::exp(Complex(0.0, t * dec.eigenvalues(a))) * y(a) -
                       sphi(a));
    const double val = std::sqrt(acc);
    if (val > est.lower) {
      est.lower = val;
      est.t_argmax = t;
    }
  }
  est.samples_used = static_cast<int>(ts.size());
  return est;
}

FiniteDimBound finite_dim_bound(const ComplexMatrix& s,
                                const HermitianMatrix& v, double eps,
                                const spectral::SpectralDecomposition& dec) {
  FiniteDimBound b;
  if (!std::isfinite(dec.gap)) {
    b.vacuous_gap = true;
    return b;
  }
  const double d = static_cast<double>(dec.cluster_count());
  b.value = 14.0 * std::sqrt(d) * op_norm(v) * op_norm(s) * std::abs(eps) /
            dec.gap;
  return b;
}

double eternal_gap(const HermitianMatrix& h, const HermitianMatrix& v,
                   double eps, const ComplexVector& psi,
                   const kato::KatoFamily& fam, const TimeSamplingPlan& plan) {
  const HermitianMatrix he(ComplexMatrix(h.mat() + eps * v.mat()));
  const auto dec = spectral::decompose(he);
  const kato::PerturbedFamily pf = kato::perturbed_family(h, v, eps, fam);

  const ComplexVector phi = dec.eigenvectors.adjoint() * psi;
  std::vector<ComplexVector> parts;  // P_n(0) psi
  for (const ComplexMatrix& p : fam.subprojections) parts.push_back(p * psi);

  const double T = horizon(plan, dec);
  double sup = 0.0;
  const Eigen::Index n = h.dim();
  ComplexVector z(n);
  for (double t : sample_times(plan, T)) {
    for (Eigen::Index b = 0; b < n; ++b)
      z(b) = std::exp(Complex(0.0, -t * dec.eigenvalues(b))) * phi(b);
    ComplexVector a = dec.eigenvectors * z;  // e^{-itH(eps)} psi
    for (int j = 0; j < fam.count(); ++j)
      a -= std::exp(Complex(0.0, -t * pf.values[j])) * parts[j];
    sup = std::max(sup, a.norm());
  }
  return sup;
}

ExponentFit exponent_fit(const std::vector<double>& eps_values,
                         const std::vector<double>& delta_values) {
  if (eps_values.size() != delta_values.size() || eps_values.size() < 3)
    throw UsageError("exponent_fit: need >= 3 matching samples");
  const size_t m = eps_values.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < m; ++i) {
    if (eps_values[i] <= 0.0 || delta_values[i] <= 0.0)
      throw UsageError("exponent_fit: values must be positive");
    const double x = std::log(eps_values[i]);
    const double y = std::log(delta_values[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
  }
  const double nm = static_cast<double>(m);
  const double varx = sxx - sx * sx / nm;
  const double vary = syy - sy * sy / nm;
  const double cov = sxy - sx * sy / nm;
  ExponentFit fit;
  fit.gamma = cov / varx;
  fit.r_squared = vary > 0.0 ? (cov * cov) / (varx * vary) : 1.0;
  return fit;
}

}  // namespace qsym::dyn
