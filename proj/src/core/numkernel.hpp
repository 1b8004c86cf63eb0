#pragma once

#include <utility>
#include <vector>

#include "types.hpp"

namespace qsym::num {

struct EigResult {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // unitary, columns are eigenvectors
};

// Hermitian eigendecomposition with a fixed ordering and phase convention:
// ascending eigenvalues, first significant component of each eigenvector
// made real positive.
EigResult hermitian_eig(const HermitianMatrix& a);

// e^{-itH}
ComplexMatrix unitary_exp(const HermitianMatrix& h, double t);

// Orthonormal (Frobenius) basis of the near-nullspace of a linear map L on
// n x n matrices, presented as an (m x n^2) matrix acting on column-major
// vec(X). Keeps right singular directions with sigma <= tol * sigma_max.
std::vector<ComplexMatrix> nullspace_basis(const ComplexMatrix& stacked,
                                           Eigen::Index n, double tol = 1e-9);

// Matrix of the map X -> [X, G] acting on vec(X), n^2 x n^2.
ComplexMatrix commutator_map(const ComplexMatrix& g);

inline ComplexMatrix vec(const ComplexMatrix& x) {
  return Eigen::Map<const ComplexMatrix>(x.data(), x.size(), 1);
}

inline ComplexMatrix unvec(const Eigen::Ref<const ComplexVector>& v,
                           Eigen::Index n) {
  return Eigen::Map<const ComplexMatrix>(v.data(), n, n);
}

}  // namespace qsym::num
