#include "numkernel.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace qsym::num {

EigResult hermitian_eig(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.mat());
  if (es.info() != Eigen::Success)
    throw NumericError("hermitian_eig: solver did not converge");
  EigResult r{es.eigenvalues(), es.eigenvectors()};
  // phase convention: first significant component real positive
  const Eigen::Index n = a.dim();
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::Index pivot = 0;
    const double vmax = r.vectors.col(j).cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(r.vectors(i, j)) > 1e-8 * vmax) {
        pivot = i;
        break;
      }
    }
    const Complex z = r.vectors(pivot, j);
    if (std::abs(z) > 0.0) r.vectors.col(j) *= std::conj(z) / std::abs(z);
  }
  return r;
}

ComplexMatrix unitary_exp(const HermitianMatrix& h, double t) {
  const EigResult e = hermitian_eig(h);
  ComplexVector phases(e.values.size());
  for (Eigen::Index i = 0; i < e.values.size(); ++i)
    phases(i) = std::exp(Complex(0.0, -t * e.values(i)));
  return e.vectors * phases.asDiagonal() * e.vectors.adjoint();
}

std::vector<ComplexMatrix> nullspace_basis(const ComplexMatrix& stacked,
                                           Eigen::Index n, double tol) {
  if (stacked.cols() != n * n)
    throw UsageError("nullspace_basis: map must act on n^2-dim space");
  // JacobiSVD: BDCSVD mislabels null directions on some complex inputs
  Eigen::JacobiSVD<ComplexMatrix> svd(stacked, Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double cut = tol * (smax > 0.0 ? smax : 1.0);
  std::vector<ComplexMatrix> basis;
  // singular values are descending; the nullspace lives in the tail
  for (Eigen::Index i = 0; i < n * n; ++i) {
    const double s = i < sv.size() ? sv(i) : 0.0;
    if (s <= cut) basis.push_back(unvec(svd.matrixV().col(i), n));
  }
  return basis;
}

ComplexMatrix commutator_map(const ComplexMatrix& g) {
  const Eigen::Index n = g.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  ComplexMatrix l(n * n, n * n);
  // vec(XG - GX) = (G^T (x) I - I (x) G) vec(X)
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      // Kronecker products assembled blockwise
      l.block(n * j, n * i, n, n) =
          g.transpose()(j, i) * id - (i == j ? g : ComplexMatrix::Zero(n, n));
    }
  return l;
}

}  // namespace qsym::num
