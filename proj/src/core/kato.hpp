#pragma once

#include <optional>
#include <vector>

#include "spectral.hpp"
#include "types.hpp"

namespace qsym::kato {

// Limit subprojections P_n(0) of the perturbed eigenprojections of H + eps V,
// with their parent clusters of H and eigenvalue-branch data.
struct KatoFamily {
  std::vector<ComplexMatrix> subprojections;  // P_n(0)
  std::vector<int> parent;                    // n -> cluster k of H
  std::vector<double> slope;                  // h_n'(0)
  std::vector<double> second_order;           // NaN when unused
  std::vector<int> splitting_order;           // 1 or 2
  std::vector<bool> residual_flag;  // degeneracy unresolved at max order
  spectral::SpectralDecomposition base;       // decomposition of H

  int count() const { return static_cast<int>(subprojections.size()); }
  bool any_residual() const;
  int rank(int n) const;
};

struct SubprojectionOptions {
  // relative clustering tolerance for reduced-operator eigenvalues
  double branch_tol_rel = 1e-7;
};

spectral::SpectralDecomposition perturbed_spectral(const HermitianMatrix& h,
                                                   const HermitianMatrix& v,
                                                   double eps,
                                                   double cluster_tol);

// Degenerate perturbation theory through second order: split each cluster of
// H by the reduced operator P_k V P_k, then by P V Q (h_k - H)^{-1} Q V P on
// sub-blocks still degenerate at first order.
KatoFamily subprojections(const HermitianMatrix& h, const HermitianMatrix& v,
                          const spectral::SpectralDecomposition& dec,
                          const SubprojectionOptions& opts = {});

// Independent numerical oracle: diagonalize H + eps V along a decreasing eps
// sequence, group branches, and extrapolate the projections to eps -> 0.
// Throws NumericError when the extrapolation is inconsistent across the
// sequence.
KatoFamily subprojections_numerical(const HermitianMatrix& h,
                                    const HermitianMatrix& v,
                                    const std::vector<double>& eps_sequence);

// Perturbed branch data at a fixed eps, paired to the family by maximal
// trace overlap.
struct PerturbedFamily {
  std::vector<ComplexMatrix> projections;  // P_n(eps)
  std::vector<double> values;              // h_n(eps), exact eigenvalue means
  double min_overlap = 1.0;  // min_n tr(P_n(eps) P_n(0))/rank_n
};

PerturbedFamily perturbed_family(const HermitianMatrix& h,
                                 const HermitianMatrix& v, double eps,
                                 const KatoFamily& family);

struct KatoUnitary {
  double epsilon = 0.0;
  ComplexMatrix matrix;
  double max_rn_norm = 0.0;
};

// U(eps) = sum_n P_n(eps) P_n(0) (1 - R_n)^{-1/2}, R_n = (P_n(eps)-P_n(0))^2.
// Throws EpsilonTooLarge when some ||R_n|| >= 1.
KatoUnitary kato_unitary(const HermitianMatrix& h, const HermitianMatrix& v,
                         double eps, const KatoFamily& family);

// H~(eps) = sum_n h_n(eps) P_n(0)
HermitianMatrix block_diagonal_approx(const HermitianMatrix& h,
                                      const HermitianMatrix& v, double eps,
                                      const KatoFamily& family);

// S_eps = U S U^dag; requires S to commute with every P_n(0).
ComplexMatrix adiabatic_invariant(const ComplexMatrix& s, const KatoUnitary& u,
                                  const KatoFamily& family, double tol = 1e-7);

// Crude perturbative radius: min(eta_sub, eta) / (4 ||V||_op), where eta_sub
// is the smallest first-order splitting gap.
double safe_epsilon(const HermitianMatrix& v, const KatoFamily& family);

}  // namespace qsym::kato
