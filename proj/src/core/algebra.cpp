#include "algebra.hpp"

#include <cmath>
#include <random>

#include "numkernel.hpp"

namespace qsym::algebra {

ComplexMatrix OperatorAlgebra::project(const ComplexMatrix& x) const {
  ComplexMatrix p = ComplexMatrix::Zero(dim_space, dim_space);
  for (const ComplexMatrix& b : basis) p += (b.adjoint() * x).trace() * b;
  return p;
}

static OperatorAlgebra full_algebra(Eigen::Index n) {
  OperatorAlgebra a;
  a.dim_space = n;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      ComplexMatrix e = ComplexMatrix::Zero(n, n);
      e(i, j) = 1.0;
      a.basis.push_back(e);
    }
  return a;
}

OperatorAlgebra commutant(const std::vector<ComplexMatrix>& generators,
                          double tol, Eigen::Index dim_hint) {
  if (generators.empty()) {
    if (dim_hint <= 0)
      throw UsageError("commutant: empty generator set needs a dim hint");
    return full_algebra(dim_hint);
  }
  const Eigen::Index n = generators.front().rows();
  for (const ComplexMatrix& g : generators)
    if (g.rows() != n || g.cols() != n)
      throw UsageError("commutant: generators must share one dimension");

  ComplexMatrix stacked(static_cast<Eigen::Index>(generators.size()) * n * n,
                        n * n);
  double scale = 0.0;
  for (size_t i = 0; i < generators.size(); ++i) {
    stacked.middleRows(static_cast<Eigen::Index>(i) * n * n, n * n) =
        num::commutator_map(generators[i]);
    scale = std::max(scale, generators[i].norm());
  }
  if (scale == 0.0) return full_algebra(n);

  OperatorAlgebra a;
  a.dim_space = n;
  a.basis = num::nullspace_basis(stacked, n, tol);
  return a;
}

OperatorAlgebra bicommutant(const std::vector<ComplexMatrix>& generators,
                            double tol) {
  return commutant(commutant(generators, tol).basis, tol);
}

Membership contains(const OperatorAlgebra& a, const ComplexMatrix& x,
                    double tol) {
  if (x.rows() != a.dim_space || x.cols() != a.dim_space)
    throw UsageError("contains: dimension mismatch");
  Membership m;
  m.residual = (x - a.project(x)).norm();
  m.contained = m.residual <= tol * std::max(1.0, x.norm());
  return m;
}

bool equal(const OperatorAlgebra& a, const OperatorAlgebra& b, double tol) {
  if (a.dim_space != b.dim_space || a.dimension() != b.dimension())
    return false;
  for (const ComplexMatrix& x : a.basis)
    if (!contains(b, x, tol).contained) return false;
  for (const ComplexMatrix& x : b.basis)
    if (!contains(a, x, tol).contained) return false;
  return true;
}

HermitianMatrix sample_hermitian(const OperatorAlgebra& a,
                                 std::uint64_t seed) {
  if (a.basis.empty())
    throw UsageError("sample_hermitian: empty algebra");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Eigen::Index n = a.dim_space;
  for (int attempt = 0; attempt < 32; ++attempt) {
    ComplexMatrix x = ComplexMatrix::Zero(n, n);
    for (const ComplexMatrix& b : a.basis) x += gauss(rng) * b;
    ComplexMatrix herm = (x + x.adjoint()) / 2.0;
    const double nrm = op_norm(herm);
    if (nrm > 1e-12) return HermitianMatrix(ComplexMatrix(herm / nrm));
  }
  throw NumericError("sample_hermitian: no nonzero Hermitian element found");
}

OperatorAlgebra intersect(const std::vector<OperatorAlgebra>& algebras,
                          double tol) {
  if (algebras.empty()) throw UsageError("intersect: need at least one algebra");
  const Eigen::Index n = algebras.front().dim_space;
  const Eigen::Index n2 = n * n;
  ComplexMatrix stacked(static_cast<Eigen::Index>(algebras.size()) * n2, n2);
  for (size_t i = 0; i < algebras.size(); ++i) {
    const OperatorAlgebra& a = algebras[i];
    if (a.dim_space != n)
      throw UsageError("intersect: dimension mismatch");
    ComplexMatrix b(n2, static_cast<Eigen::Index>(a.basis.size()));
    for (size_t j = 0; j < a.basis.size(); ++j)
      b.col(static_cast<Eigen::Index>(j)) = num::vec(a.basis[j]);
    // complement projector: X in the span iff (I - B B^dag) vec(X) = 0
    stacked.middleRows(static_cast<Eigen::Index>(i) * n2, n2) =
        ComplexMatrix::Identity(n2, n2) - b * b.adjoint();
  }
  OperatorAlgebra out;
  out.dim_space = n;
  out.basis = num::nullspace_basis(stacked, n, tol);
  return out;
}

}  // namespace qsym::algebra
