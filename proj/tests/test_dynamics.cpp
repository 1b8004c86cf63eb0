#include <doctest.h>

#include <cmath>

#include "core/dynamics.hpp"
#include "core/robustness.hpp"
#include "testutil.hpp"

using namespace qsym;

namespace {

HermitianMatrix workhorse_h() {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(2, 2) = 1.0;
  return HermitianMatrix(m);
}

HermitianMatrix workhorse_v() {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 1) = m(1, 0) = 1.0;
  return HermitianMatrix(m);
}

ComplexMatrix diag_m(std::initializer_list<double> vals) {
  const Eigen::Index n = static_cast<Eigen::Index>(vals.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  Eigen::Index i = 0;
  for (double v : vals) m(i, i) = v, ++i;
  return m;
}

}  // namespace

TEST_CASE("heisenberg evolution fixes commuting observables") {
  const auto inst = test::planted_instance(5, 61);
  const ComplexMatrix& h = inst.h.mat();
  CHECK((dyn::heisenberg(h * h, inst.h, 1.7) - h * h).norm() < 1e-10);
  const ComplexMatrix s = inst.v.mat();
  CHECK((dyn::heisenberg(s, inst.h, 0.0) - s).norm() < 1e-12);
  // unitarily similar at all times
  CHECK(dyn::heisenberg(s, inst.h, 2.3).norm() == doctest::Approx(s.norm()));
}

TEST_CASE("A+B reproduces the evolution defect and A vanishes for robust S") {
  const auto h = workhorse_h();
  const auto v = workhorse_v();
  const auto fam = kato::subprojections(h, v, spectral::decompose(h));
  const double eps = 0.05, t = 3.1;

  ComplexMatrix s_rob = v.mat();
  s_rob(2, 2) = 1.0;
  for (const ComplexMatrix& s : {ComplexMatrix(diag_m({1, -1, 1})), s_rob}) {
    const auto [a, b] = dyn::split_ab(s, h, v, eps, t, fam);
    const HermitianMatrix he(ComplexMatrix(h.mat() + eps * v.mat()));
    const ComplexMatrix defect = dyn::heisenberg(s, he, t) - s;
    CHECK((a + b - defect).norm() < 1e-9);
  }
  const auto [a, b] = dyn::split_ab(s_rob, h, v, eps, t, fam);
  CHECK(a.norm() < 1e-10);
}

TEST_CASE("wandering range of a fragile symmetry reaches the witness bound") {
  const auto h = workhorse_h();
  const auto v = workhorse_v();
  const ComplexMatrix s = diag_m({1, -1, 1});
  const auto verdict = robust::classify(s, h, v);
  REQUIRE(verdict.witness.has_value());
  const ComplexVector psi =
      (verdict.witness->psi_m + verdict.witness->psi_n) / std::sqrt(2.0);

  for (double eps : {1e-2, 1e-3}) {
    const auto est = dyn::wandering_range(s, h, v, eps, psi);
    CHECK(est.lower >= 0.95 * verdict.witness->lower_bound);
    CHECK(est.lower <= est.upper + 1e-12);
  }
}

TEST_CASE("wandering range of a robust symmetry shrinks linearly") {
  const auto inst = test::planted_instance(6, 44);
  const auto s = algebra::sample_hermitian(
      robust::robust_algebra(inst.h, inst.v), 17);
  const ComplexVector psi = test::random_unit(6, 7);
  std::vector<double> eps{1e-1, 1e-2, 1e-3};
  std::vector<double> lows;
  for (double e : eps)
    lows.push_back(dyn::wandering_range(s.mat(), inst.h, inst.v, e, psi).lower);
  const auto fit = dyn::exponent_fit(eps, lows);
  CHECK(fit.gamma > 0.9);
  CHECK(fit.r_squared > 0.99);
}

TEST_CASE("wandering range rejects non-unit probes") {
  const auto h = workhorse_h();
  CHECK_THROWS_AS(dyn::wandering_range(diag_m({1, -1, 1}), h, workhorse_v(),
                                       0.1, ComplexVector::Zero(3)),
                  UsageError);
}

TEST_CASE("exponent_fit recovers exact power laws") {
  std::vector<double> eps{1e-1, 1e-2, 1e-3, 1e-4};
  std::vector<double> delta;
  for (double e : eps) delta.push_back(3.7 * std::pow(e, 1.5));
  const auto fit = dyn::exponent_fit(eps, delta);
  CHECK(fit.gamma == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(fit.r_squared == doctest::Approx(1.0));
  CHECK_THROWS_AS(dyn::exponent_fit({1e-1, 1e-2}, {0.1, 0.01}), UsageError);
}

TEST_CASE("finite-dimensional bound formula and vacuous-gap sentinel") {
  const auto h = workhorse_h();
  const auto dec = spectral::decompose(h);
  const ComplexMatrix s = diag_m({1, -1, 1});
  const auto v = workhorse_v();
  const double eps = 0.02;
  const auto bound = dyn::finite_dim_bound(s, v, eps, dec);
  CHECK_FALSE(bound.vacuous_gap);
  // d counts the distinct eigenvalues of H, here 2
  CHECK(bound.value ==
        doctest::Approx(14.0 * std::sqrt(2.0) * op_norm(v) * op_norm(s) * eps /
                        dec.gap));

  const auto flat = spectral::decompose(HermitianMatrix(ComplexMatrix::Zero(3, 3)));
  const auto vac = dyn::finite_dim_bound(s, v, eps, flat);
  CHECK(vac.vacuous_gap);
  CHECK(vac.value == 0.0);
}

TEST_CASE("eternal gap is small within the perturbative regime") {
  const auto inst = test::planted_instance(6, 71);
  const auto fam =
      kato::subprojections(inst.h, inst.v, spectral::decompose(inst.h));
  const ComplexVector psi = test::random_unit(6, 11);
  const double g1 = dyn::eternal_gap(inst.h, inst.v, 1e-1, psi, fam);
  const double g3 = dyn::eternal_gap(inst.h, inst.v, 1e-3, psi, fam);
  CHECK(g3 < g1);
  CHECK(g3 < 1e-2);
}
