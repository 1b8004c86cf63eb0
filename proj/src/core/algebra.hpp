#pragma once

#include <cstdint>
#include <vector>

#include "types.hpp"

namespace qsym::algebra {

// Orthonormal (Frobenius) basis of a *-closed span of n x n matrices.
struct OperatorAlgebra {
  Eigen::Index dim_space = 0;        // n
  std::vector<ComplexMatrix> basis;  // orthonormal in <A,B> = tr(A^dag B)

  int dimension() const { return static_cast<int>(basis.size()); }

  // Frobenius-orthogonal projection of X onto the span.
  ComplexMatrix project(const ComplexMatrix& x) const;
};

struct Membership {
  bool contained = false;
  double residual = 0.0;
};

// {X : [X, G_i] = 0 for all i}. An empty generator set imposes nothing, so
// the commutant is the full matrix algebra; pass dim_hint to fix n then.
OperatorAlgebra commutant(const std::vector<ComplexMatrix>& generators,
                          double tol = 1e-9, Eigen::Index dim_hint = 0);

OperatorAlgebra bicommutant(const std::vector<ComplexMatrix>& generators,
                            double tol = 1e-9);

Membership contains(const OperatorAlgebra& a, const ComplexMatrix& x,
                    double tol = 1e-8);

bool equal(const OperatorAlgebra& a, const OperatorAlgebra& b,
           double tol = 1e-8);

// Hermitian part of a seeded Gaussian combination of basis elements,
// renormalized to unit operator norm. Deterministic in the seed.
HermitianMatrix sample_hermitian(const OperatorAlgebra& a, std::uint64_t seed);

OperatorAlgebra intersect(const std::vector<OperatorAlgebra>& algebras,
                          double tol = 1e-9);

}  // namespace qsym::algebra
