#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "algebra.hpp"
#include "kato.hpp"
#include "types.hpp"

namespace qsym::robust {

enum class Status { Robust, Fragile, Inconclusive };

// Witness of fragility: a pair of unit vectors in distinct subprojection
// ranges with 2|<psi_m|S psi_n>| > 0, a dynamically testable lower bound on
// the wandering range.
struct FragilityWitness {
  int n = 0, m = 0;
  ComplexVector psi_n, psi_m;
  double lower_bound = 0.0;
};

struct RobustnessVerdict {
  Status status = Status::Inconclusive;
  bool robust = false;
  double max_commutator = 0.0;  // max_n ||[S, P_n(0)]||_F
  std::optional<FragilityWitness> witness;
  bool residual_degeneracy_caveat = false;

  const char* status_name() const;
};

struct SymmetryCheck {
  bool is_symmetry = false;
  double residual = 0.0;
};

SymmetryCheck is_symmetry(const ComplexMatrix& s, const HermitianMatrix& h,
                          double tol = 1e-8);

struct ClassifyOptions {
  double tol_rel = 1e-8;          // robust iff max_commutator <= tol_rel*||S||_F
  double hysteresis = 10.0;       // fragile requires > hysteresis * tol
  kato::SubprojectionOptions kato;
};

// Decide V-robustness of S from the commutators with the Kato subprojections.
RobustnessVerdict classify(const ComplexMatrix& s, const HermitianMatrix& h,
                           const HermitianMatrix& v,
                           const ClassifyOptions& opts = {});

RobustnessVerdict classify(const ComplexMatrix& s, const kato::KatoFamily& fam,
                           const ClassifyOptions& opts = {});

// Commuting-perturbation shortcut: robust iff [S, V] = 0.
RobustnessVerdict classify_commuting(const ComplexMatrix& s,
                                     const HermitianMatrix& h,
                                     const HermitianMatrix& v,
                                     double tol_rel = 1e-8);

// R_V(H) = {P_n(0)}'
algebra::OperatorAlgebra robust_algebra(const HermitianMatrix& h,
                                        const HermitianMatrix& v,
                                        const ClassifyOptions& opts = {});

struct RestrictedResult {
  algebra::OperatorAlgebra intersection;     // over the sampled perturbations
  algebra::OperatorAlgebra predicted;        // ({H} u J)''
  bool matches_prediction = false;
  int samples_used = 0;
};

// Monte-Carlo check of the symmetry-restricted robust algebra: sample
// Hermitian perturbations from {J}' and intersect the single-V robust
// algebras.
RestrictedResult robust_algebra_restricted(
    const HermitianMatrix& h, const std::vector<HermitianMatrix>& j_set,
    int num_samples, std::uint64_t seed, const ClassifyOptions& opts = {});

// Theorem-complete check: S completely robust iff S is block-scalar over the
// eigenprojections of H.
bool completely_robust(const ComplexMatrix& s, const HermitianMatrix& h,
                       double tol_rel = 1e-8);

}  // namespace qsym::robust
