#include "scenarios.hpp"

#include <cmath>
#include <numbers>

#include "numkernel.hpp"
#include "quadrature.hpp"

namespace qsym::scenario {

ModelInstance degenerate_diag(const std::vector<int>& multiplicities,
                              const std::vector<double>& values) {
  if (multiplicities.size() != values.size() || multiplicities.empty())
    throw UsageError("degenerate_diag: need matching multiplicities/values");
  for (size_t i = 1; i < values.size(); ++i)
    if (values[i] == values[i - 1])
      throw UsageError("degenerate_diag: values must be distinct");
  Eigen::Index n = 0;
  for (int m : multiplicities) {
    if (m < 1) throw UsageError("degenerate_diag: multiplicities must be >= 1");
    n += m;
  }

  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  ComplexMatrix v = ComplexMatrix::Zero(n, n);
  std::vector<NamedSymmetry> syms;
  Eigen::Index offset = 0;
  bool v_placed = false;
  for (size_t k = 0; k < multiplicities.size(); ++k) {
    const Eigen::Index m = multiplicities[k];
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < m; ++i) {
      h(offset + i, offset + i) = values[k];
      p(offset + i, offset + i) = 1.0;
    }
    syms.push_back({"P" + std::to_string(k), p});
    if (m >= 2) {
      ComplexMatrix swap = ComplexMatrix::Identity(n, n);
      swap(offset, offset) = swap(offset + 1, offset + 1) = 0.0;
      swap(offset, offset + 1) = swap(offset + 1, offset) = 1.0;
      syms.push_back({"swap" + std::to_string(k), swap});
      if (!v_placed) {
        v(offset, offset + 1) = v(offset + 1, offset) = 1.0;
        v_placed = true;
      }
    }
    offset += m;
  }
  syms.push_back({"identity", ComplexMatrix::Identity(n, n)});

  ModelInstance model{"degenerate-diag", HermitianMatrix(h), HermitianMatrix(v),
                      std::move(syms),
                      "block-diagonal H with planted degeneracies"};
  return model;
}

ModelInstance truncated_oscillator(int n_levels) {
  if (n_levels < 4)
    throw UsageError("truncated_oscillator: need at least 4 levels");
  const Eigen::Index n = n_levels;
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  ComplexMatrix lower = ComplexMatrix::Zero(n, n);  // annihilation
  for (Eigen::Index i = 0; i < n; ++i) {
    h(i, i) = static_cast<double>(i) + 0.5;
    if (i + 1 < n) lower(i, i + 1) = std::sqrt(static_cast<double>(i + 1));
  }
  const Complex im(0.0, 1.0);
  const ComplexMatrix p = im * (lower.adjoint() - lower) / std::sqrt(2.0);

  std::vector<NamedSymmetry> syms;
  ComplexMatrix parity = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) parity(i, i) = (i % 2 == 0) ? 1.0 : -1.0;
  syms.push_back({"parity", parity});
  for (Eigen::Index i = 0; i < n; ++i) {
    ComplexMatrix num_proj = ComplexMatrix::Zero(n, n);
    num_proj(i, i) = 1.0;
    syms.push_back({"N" + std::to_string(i), num_proj});
  }
  syms.push_back({"identity", ComplexMatrix::Identity(n, n)});

  ModelInstance model{"oscillator", HermitianMatrix(h), HermitianMatrix(p),
                      std::move(syms),
                      "Fock-truncated harmonic oscillator, V = momentum"};
  return model;
}

namespace {

double alpha_weight(double alpha, double x) {
  return std::pow(1.0 + x * x, -alpha / 2.0);
}

// int_Y^inf (eps^2 + y^2)^{-a/2} dy by the binomial series in (eps/y)^2;
// alternating with shrinking terms once Y^2 > eps^2 (a/2 + k).
double weight_tail(double alpha, double eps, double y) {
  double sum = 0.0;
  double coef = 1.0;
  for (int k = 0; k < 12; ++k) {
    sum += coef * std::pow(eps, 2.0 * k) *
           std::pow(y, 1.0 - alpha - 2.0 * k) / (alpha - 1.0 + 2.0 * k);
    coef *= -(alpha / 2.0 + k) / (k + 1.0);
  }
  return sum;
}

// int_R sin^2(2 eps x) (1+x^2)^{-a/2} dx, rescaled by y = eps x so the
// oscillation period is fixed, with the truncated tail restored analytically:
//   = eps^{a-1} [ 2 int_0^Y sin^2(2y) w~(y) dy
//                 + int_Y^inf w~ dy  -  int_Y^inf cos(4y) w~ dy ],
// w~(y) = (eps^2 + y^2)^{-a/2}. The last term is only bounded (one
// integration by parts gives |.| <= w~(Y)/2) and must fit the error budget.
double squared_integral(double alpha, double eps, double cutoff,
                        double abs_tol) {
  const double scale = std::pow(eps, alpha - 1.0);
  const double osc_bound = scale * std::pow(eps * eps + cutoff * cutoff,
                                            -alpha / 2.0) / 2.0;
  if (osc_bound > abs_tol / 2.0) {
    const double y_req = std::pow(scale / abs_tol, 1.0 / alpha);
    throw UsageError(
        "oscillator_alpha_integral: oscillatory tail bound " +
        std::to_string(osc_bound) + " exceeds budget; need cutoff >= " +
        std::to_string(y_req));
  }
  const auto f = [alpha, eps](double y) {
    const double s = std::sin(2.0 * y);
    return s * s * std::pow(eps * eps + y * y, -alpha / 2.0);
  };
  const double quad_tol = abs_tol / (2.0 * scale);
  const double body = 2.0 * quad::adaptive_simpson(f, 0.0, cutoff, quad_tol,
                                                   std::numbers::pi / 8.0);
  return scale * (body + weight_tail(alpha, eps, cutoff));
}

}  // namespace

double alpha_integrand_integral(double alpha, double eps, double cutoff,
                                double abs_tol) {
  const double period = std::numbers::pi / (2.0 * std::abs(eps));
  const auto f = [alpha, eps](double x) {
    const double s = std::sin(2.0 * eps * x);
    return s * s * alpha_weight(alpha, x);
  };
  // even integrand
  return 2.0 * quad::adaptive_simpson(f, 0.0, cutoff, abs_tol / 2.0,
                                      period / 4.0);
}

double psi_alpha_norm(double alpha, double cutoff, double abs_tol) {
  const auto f = [alpha](double x) { return alpha_weight(alpha, x); };
  return std::sqrt(2.0 *
                   quad::adaptive_simpson(f, 0.0, cutoff, abs_tol,
                                          std::max(1.0, cutoff / 64.0)));
}

AlphaIntegral oscillator_alpha_integral(double alpha, double eps, double cutoff,
                                        double abs_tol) {
  if (alpha <= 1.0) throw UsageError("oscillator_alpha_integral: alpha must be > 1");
  if (eps <= 0.0 || eps > 1.0)
    throw UsageError("oscillator_alpha_integral: eps must be in (0,1]");
  if (cutoff <= 1.0)
    throw UsageError("oscillator_alpha_integral: cutoff must exceed 1");
  AlphaIntegral out;
  out.g = std::sqrt(squared_integral(alpha, eps, cutoff, abs_tol));
  out.c_alpha = std::sqrt(squared_integral(alpha, 1.0, cutoff, abs_tol));
  return out;
}

ShiftCheckReport oscillator_shift_check(int n_levels, double eps) {
  const ModelInstance osc = truncated_oscillator(n_levels);
  const HermitianMatrix he(
      ComplexMatrix(osc.h.mat() + eps * osc.v.mat()));
  const num::EigResult eig = num::hermitian_eig(he);
  ShiftCheckReport rep;
  rep.modes_checked = n_levels / 3;
  for (int i = 0; i < rep.modes_checked; ++i) {
    const double expected = static_cast<double>(i) + 0.5 - eps * eps / 2.0;
    rep.max_deviation =
        std::max(rep.max_deviation, std::abs(eig.values(i) - expected));
  }
  return rep;
}

std::vector<std::string> scenario_names() {
  return {"degenerate-diag", "oscillator", "oscillator-alpha"};
}

}  // namespace qsym::scenario
