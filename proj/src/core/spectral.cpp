#include "spectral.hpp"

#include <algorithm>
#include <cmath>

namespace qsym::spectral {

ComplexMatrix SpectralDecomposition::cluster_basis(int k) const {
  const Eigen::Index n = dim();
  ComplexMatrix w(n, multiplicities[k]);
  Eigen::Index c = 0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    if (cluster_of[i] == k) w.col(c++) = eigenvectors.col(i);
  return w;
}

double default_cluster_tol(const HermitianMatrix& h) {
  return 1e-8 * std::max(1.0, op_norm(h));
}

SpectralDecomposition decompose(const HermitianMatrix& h, double cluster_tol) {
  if (cluster_tol <= 0.0) throw UsageError("decompose: cluster_tol must be > 0");
  const num::EigResult eig = num::hermitian_eig(h);
  const Eigen::Index n = h.dim();

  SpectralDecomposition dec;
  dec.eigenvalues = eig.values;
  dec.eigenvectors = eig.vectors;
  dec.cluster_of.assign(n, 0);

  // single-linkage on the sorted eigenvalues
  std::vector<std::pair<Eigen::Index, Eigen::Index>> ranges;  // [begin, end)
  Eigen::Index begin = 0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    if (i == n || eig.values(i) - eig.values(i - 1) > cluster_tol) {
      ranges.emplace_back(begin, i);
      begin = i;
    }
  }

  const int kcount = static_cast<int>(ranges.size());
  dec.distinct_values.resize(kcount);
  for (int k = 0; k < kcount; ++k) {
    auto [b, e] = ranges[k];
    const Eigen::Index r = e - b;
    dec.multiplicities.push_back(static_cast<int>(r));
    dec.distinct_values(k) = eig.values.segment(b, r).mean();
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = b; i < e; ++i) {
      p += eig.vectors.col(i) * eig.vectors.col(i).adjoint();
      dec.cluster_of[i] = k;
    }
    dec.projections.push_back((p + p.adjoint()) / 2.0);
    if (eig.values(e - 1) - eig.values(b) > 10.0 * cluster_tol)
      dec.ambiguous_clustering = true;
  }

  dec.gap = kInfiniteGap;
  for (int k = 1; k < kcount; ++k)
    dec.gap = std::min(dec.gap,
                       dec.distinct_values(k) - dec.distinct_values(k - 1));
  return dec;
}

SpectralDecomposition decompose(const HermitianMatrix& h) {
  return decompose(h, default_cluster_tol(h));
}

FunctionOfH is_function_of_h(const ComplexMatrix& s,
                             const SpectralDecomposition& dec, double tol) {
  if (s.rows() != dec.dim() || s.cols() != dec.dim())
    throw UsageError("is_function_of_h: dimension mismatch");
  FunctionOfH out;
  ComplexMatrix approx = ComplexMatrix::Zero(s.rows(), s.cols());
  for (int k = 0; k < dec.cluster_count(); ++k) {
    const Complex sk = (dec.projections[k] * s).trace() /
                       static_cast<double>(dec.multiplicities[k]);
    out.scalars.push_back(sk);
    approx += sk * dec.projections[k];
  }
  out.residual = (s - approx).norm();
  out.is_function = out.residual <= tol;
  return out;
}

std::vector<ComplexMatrix> joint_decompose(const HermitianMatrix& h,
                                           const HermitianMatrix& j,
                                           double tol) {
  const double comm = commutator(h.mat(), j.mat()).norm();
  const double scale = std::max(1e-300, h.mat().norm() * j.mat().norm());
  if (comm > tol * scale)
    throw NumericError("joint_decompose: inputs do not commute, residual " +
                       std::to_string(comm));
  const SpectralDecomposition dh = decompose(h);
  std::vector<ComplexMatrix> qs;
  for (int k = 0; k < dh.cluster_count(); ++k) {
    const ComplexMatrix w = dh.cluster_basis(k);
    const HermitianMatrix jk(ComplexMatrix(w.adjoint() * j.mat() * w));
    const SpectralDecomposition dj = decompose(jk);
    for (const ComplexMatrix& q : dj.projections)
      qs.push_back(w * q * w.adjoint());
  }
  return qs;
}

}  // namespace qsym::spectral
