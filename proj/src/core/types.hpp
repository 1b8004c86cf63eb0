#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace qsym {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Error hierarchy. The C API maps these onto status codes.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct UsageError : Error {
  explicit UsageError(const std::string& msg) : Error(msg) {}
};

struct NumericError : Error {
  explicit NumericError(const std::string& msg) : Error(msg) {}
};

struct EpsilonTooLarge : NumericError {
  explicit EpsilonTooLarge(const std::string& msg) : NumericError(msg) {}
};

struct NotASymmetry : NumericError {
  explicit NotASymmetry(const std::string& msg) : NumericError(msg) {}
};

struct NotRobust : NumericError {
  explicit NotRobust(const std::string& msg) : NumericError(msg) {}
};

inline double frob(const ComplexMatrix& a) { return a.norm(); }

inline bool all_finite(const ComplexMatrix& a) {
  return a.allFinite();
}

// Dense complex square matrix constrained to be Hermitian at construction.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols())
      throw UsageError("HermitianMatrix: matrix must be square");
    if (!all_finite(m_))
      throw UsageError("HermitianMatrix: non-finite entries");
    const double dev = (m_ - m_.adjoint()).norm();
    if (dev > 1e-12 * (1.0 + m_.norm()))
      throw UsageError("HermitianMatrix: not Hermitian, deviation " +
                       std::to_string(dev));
    // symmetrize away roundoff so downstream solvers see an exact input
    m_ = ((m_ + m_.adjoint()) / 2.0).eval();
  }

  Eigen::Index dim() const { return m_.rows(); }
  const ComplexMatrix& mat() const { return m_; }

 private:
  ComplexMatrix m_;
};

inline double op_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

inline double op_norm(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.mat(),
                                                  Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

inline ComplexMatrix commutator(const ComplexMatrix& a,
                                const ComplexMatrix& b) {
  return a * b - b * a;
}

}  // namespace qsym
