#pragma once

#include <string>
#include <utility>
#include <vector>

#include "types.hpp"

namespace qsym::scenario {

struct NamedSymmetry {
  std::string name;
  ComplexMatrix op;
};

struct ModelInstance {
  std::string name;
  HermitianMatrix h;
  HermitianMatrix v;
  std::vector<NamedSymmetry> symmetries;
  std::string metadata;
};

// Block-diagonal H with the given degeneracies; bundled symmetries are the
// eigenprojections, one in-block swap per degenerate block, and the identity.
// V defaults to a coupling inside the first degenerate block (sigma_x-like),
// the workhorse fragile/robust test bed.
ModelInstance degenerate_diag(const std::vector<int>& multiplicities,
                              const std::vector<double>& values);

// Truncated harmonic oscillator on N Fock levels: H = diag(n + 1/2),
// V = momentum, parity and number projections bundled.
ModelInstance truncated_oscillator(int n_levels);

struct AlphaIntegral {
  double g = 0.0;        // (int sin^2(2 eps x) / (1+x^2)^{a/2} dx)^{1/2}
  double c_alpha = 0.0;  // same with eps = 1
};

// Quadrature of the slow-wandering lower-bound constants, to abs_tol on the
// squared integrals. The integration variable is rescaled by eps, the weight
// tail beyond `cutoff` is restored analytically, and the remaining
// oscillatory tail is bounded; throws naming the required cutoff when that
// bound exceeds the tolerance budget.
AlphaIntegral oscillator_alpha_integral(double alpha, double eps, double cutoff,
                                        double abs_tol);

// Same truncated integrals without a tail requirement, for ratio checks
// against the truncated norm of psi_alpha.
double alpha_integrand_integral(double alpha, double eps, double cutoff,
                                double abs_tol);
double psi_alpha_norm(double alpha, double cutoff, double abs_tol);

struct ShiftCheckReport {
  int modes_checked = 0;
  double max_deviation = 0.0;  // vs n + 1/2 - eps^2/2
};

ShiftCheckReport oscillator_shift_check(int n_levels, double eps);

std::vector<std::string> scenario_names();

}  // namespace qsym::scenario
