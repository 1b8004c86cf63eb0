#pragma once

#include <limits>
#include <vector>

#include "numkernel.hpp"
#include "types.hpp"

namespace qsym::spectral {

constexpr double kInfiniteGap = std::numeric_limits<double>::infinity();

// H = sum_k h_k P_k over distinct clustered eigenvalues.
struct SpectralDecomposition {
  RealVector distinct_values;             // ascending cluster means h_k
  std::vector<ComplexMatrix> projections; // P_k
  std::vector<int> multiplicities;        // r_k
  double gap = kInfiniteGap;              // min_{k!=l} |h_k - h_l|
  bool ambiguous_clustering = false;      // a linked chain spans > 10*tol

  // raw eigendata, kept for downstream splitting work
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
  std::vector<int> cluster_of;  // eigenvalue index -> cluster index

  int cluster_count() const { return static_cast<int>(projections.size()); }
  Eigen::Index dim() const { return eigenvectors.rows(); }

  // orthonormal basis of Range(P_k), as eigenvector columns
  ComplexMatrix cluster_basis(int k) const;
};

double default_cluster_tol(const HermitianMatrix& h);

SpectralDecomposition decompose(const HermitianMatrix& h, double cluster_tol);
SpectralDecomposition decompose(const HermitianMatrix& h);

struct FunctionOfH {
  bool is_function = false;
  std::vector<Complex> scalars;  // s_k = trace(P_k S)/r_k
  double residual = 0.0;
};

// True iff S = sum_k s_k P_k within tol (block-scalar w.r.t. the family).
FunctionOfH is_function_of_h(const ComplexMatrix& s,
                             const SpectralDecomposition& dec, double tol);

// Common eigenprojections Q of a commuting Hermitian pair; refinement of
// both spectral families. Throws NumericError on non-commuting inputs.
std::vector<ComplexMatrix> joint_decompose(const HermitianMatrix& h,
                                           const HermitianMatrix& j,
                                           double tol);

}  // namespace qsym::spectral
