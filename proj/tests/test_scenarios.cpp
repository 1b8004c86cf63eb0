#include <doctest.h>

#include <cmath>
#include <numbers>

#include "core/kato.hpp"
#include "core/numkernel.hpp"
#include "core/robustness.hpp"
#include "core/scenarios.hpp"

using namespace qsym;

TEST_CASE("degenerate_diag builds the workhorse model") {
  const auto model = scenario::degenerate_diag({2, 1}, {0.0, 1.0});
  CHECK(model.h.dim() == 3);
  CHECK(model.h.mat()(2, 2) == Complex(1.0));
  CHECK(model.v.mat()(0, 1) == Complex(1.0));
  for (const auto& sym : model.symmetries)
    CHECK(robust::is_symmetry(sym.op, model.h).is_symmetry);
  CHECK_THROWS_AS(scenario::degenerate_diag({2, 1}, {1.0, 1.0}), UsageError);
  CHECK_THROWS_AS(scenario::degenerate_diag({0}, {1.0}), UsageError);
}

TEST_CASE("degenerate_diag with H=0 makes everything a symmetry") {
  const auto model = scenario::degenerate_diag({3}, {0.0});
  CHECK(model.h.mat().norm() == 0.0);
  CHECK(spectral::decompose(model.h).gap == spectral::kInfiniteGap);
}

TEST_CASE("truncated oscillator spectrum and parity identity") {
  CHECK_THROWS_AS(scenario::truncated_oscillator(3), UsageError);
  const auto model = scenario::truncated_oscillator(4);
  for (int i = 0; i < 4; ++i)
    CHECK(model.h.mat()(i, i).real() == doctest::Approx(i + 0.5));

  // parity equals i e^{-i pi H} exactly in this truncation
  const ComplexMatrix expm = num::unitary_exp(model.h, std::numbers::pi);
  const ComplexMatrix& parity = model.symmetries.front().op;
  CHECK((parity - Complex(0, 1) * expm).norm() < 1e-12);
  CHECK(robust::completely_robust(parity, model.h));
}

TEST_CASE("ladder commutator defect sits in the truncation corner") {
  const int n = 8;
  ComplexMatrix lower = ComplexMatrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) lower(i, i + 1) = std::sqrt(i + 1.0);
  const Complex im(0, 1);
  const ComplexMatrix x = (lower + lower.adjoint()) / std::sqrt(2.0);
  const ComplexMatrix p = im * (lower.adjoint() - lower) / std::sqrt(2.0);
  ComplexMatrix defect = x * p - p * x - im * ComplexMatrix::Identity(n, n);
  CHECK(std::abs(defect(n - 1, n - 1) + im * Complex(n)) ==
        doctest::Approx(0.0));
  defect(n - 1, n - 1) = 0.0;
  CHECK(defect.norm() < 1e-12);
}

TEST_CASE("kato unitary acts as a position-shift on low modes") {
  const int n = 60;
  const double eps = 0.1;
  const auto model = scenario::truncated_oscillator(n);
  const auto fam =
      kato::subprojections(model.h, model.v, spectral::decompose(model.h));
  const auto u = kato::kato_unitary(model.h, model.v, eps, fam);

  ComplexMatrix lower = ComplexMatrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) lower(i, i + 1) = std::sqrt(i + 1.0);
  const HermitianMatrix x(
      ComplexMatrix((lower + lower.adjoint()) / std::sqrt(2.0)));
  const ComplexMatrix shift = num::unitary_exp(x, eps);  // e^{-i eps x}
  const int low = n / 2;
  const double dev =
      (u.matrix - shift).topLeftCorner(low, low).cwiseAbs().maxCoeff();
  CHECK(dev < 1e-3);
}

TEST_CASE("momentum perturbation shifts levels by -eps^2/2") {
  const auto rep = scenario::oscillator_shift_check(60, 0.2);
  CHECK(rep.modes_checked == 20);
  CHECK(rep.max_deviation < 1e-6);
}

TEST_CASE("alpha=2 integral hits the closed form") {
  const auto out = scenario::oscillator_alpha_integral(2.0, 0.5, 1e4, 1e-8);
  const double closed = std::numbers::pi / 2.0 * (1.0 - std::exp(-4.0));
  CHECK(std::abs(out.c_alpha * out.c_alpha - closed) < 1e-8);
  CHECK(out.g < out.c_alpha);
  CHECK(out.g > 0.0);
}

TEST_CASE("alpha integral rejects impossible tail budgets") {
  CHECK_THROWS_AS(scenario::oscillator_alpha_integral(1.5, 0.5, 10.0, 1e-12),
                  UsageError);
  CHECK_THROWS_AS(scenario::oscillator_alpha_integral(0.9, 0.5, 1e4, 1e-8),
                  UsageError);
}

TEST_CASE("alpha integral scales like eps^{(alpha-1)/2}") {
  const double a = 2.0;
  const auto g1 = scenario::oscillator_alpha_integral(a, 1e-4, 2e5, 1e-4 * 1e-4);
  const auto g2 = scenario::oscillator_alpha_integral(a, 1e-6, 2e5, 1e-4 * 1e-6);
  const double slope = std::log(g1.g / g2.g) / std::log(1e-4 / 1e-6);
  CHECK(slope == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("truncated ratio approaches 1/sqrt(2) as alpha -> 1") {
  const double c = std::sqrt(scenario::alpha_integrand_integral(
      1.05, 1.0, 1e6, 1e-4));
  const double nrm = scenario::psi_alpha_norm(1.05, 1e6, 1e-4);
  CHECK(std::abs(c / nrm - 1.0 / std::sqrt(2.0)) < 0.1);
}

TEST_CASE("scenario names are stable") {
  const auto names = scenario::scenario_names();
  REQUIRE(names.size() == 3);
  CHECK(names[0] == "degenerate-diag");
  CHECK(names[1] == "oscillator");
  CHECK(names[2] == "oscillator-alpha");
}
