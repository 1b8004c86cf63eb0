#include <doctest.h>

#include "core/robustness.hpp"
#include "core/spectral.hpp"
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

TEST_CASE("is_symmetry distinguishes conserved from non-conserved") {
  CHECK(robust::is_symmetry(diag_m({1, -1, 1}), workhorse_h()).is_symmetry);
  ComplexMatrix x(2, 2);
  x << 0, 1, 1, 0;
  const HermitianMatrix h2(diag_m({0, 1}));
  const auto check = robust::is_symmetry(x, h2);
  CHECK_FALSE(check.is_symmetry);
  CHECK(check.residual > 0.1);
}

TEST_CASE("sigma_z-like symmetry is fragile with witness bound 2") {
  const auto verdict =
      robust::classify(diag_m({1, -1, 1}), workhorse_h(), workhorse_v());
  CHECK(verdict.status == robust::Status::Fragile);
  CHECK_FALSE(verdict.robust);
  REQUIRE(verdict.witness.has_value());
  CHECK(verdict.witness->lower_bound == doctest::Approx(2.0));
  CHECK(verdict.witness->psi_n.norm() == doctest::Approx(1.0));
  CHECK(verdict.witness->psi_m.norm() == doctest::Approx(1.0));
  CHECK(verdict.witness->n != verdict.witness->m);
  // the witness realizes the largest cross-block matrix element of S
  const Complex elem = verdict.witness->psi_m.adjoint() *
                       (diag_m({1, -1, 1}) * verdict.witness->psi_n);
  CHECK(2.0 * std::abs(elem) == doctest::Approx(verdict.witness->lower_bound));
}

TEST_CASE("sigma_x-like symmetry survives the same perturbation") {
  ComplexMatrix s = workhorse_v().mat();
  s(2, 2) = 1.0;
  const auto verdict = robust::classify(s, workhorse_h(), workhorse_v());
  CHECK(verdict.status == robust::Status::Robust);
  CHECK(verdict.robust);
  CHECK_FALSE(verdict.witness.has_value());
}

TEST_CASE("identity and functions of H are always robust") {
  const auto inst = test::planted_instance(6, 5);
  const ComplexMatrix id = ComplexMatrix::Identity(6, 6);
  CHECK(robust::classify(id, inst.h, inst.v).robust);
  const ComplexMatrix& h = inst.h.mat();
  CHECK(robust::classify(h * h + h, inst.h, inst.v).robust);
}

TEST_CASE("commuting shortcut matches the subprojection route") {
  const auto inst = test::planted_instance(6, 8);
  const auto dec = spectral::decompose(inst.h);
  const auto hp = algebra::commutant({inst.h.mat()});
  const auto v = algebra::sample_hermitian(hp, 19);
  REQUIRE(commutator(inst.h.mat(), v.mat()).norm() < 1e-8);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    // alternate robust candidates ([S,V]=0) and generic symmetries of H
    const HermitianMatrix s =
        seed % 2 == 0
            ? algebra::sample_hermitian(
                  algebra::commutant({inst.h.mat(), v.mat()}), 100 + seed)
            : algebra::sample_hermitian(hp, 200 + seed);
    const auto a = robust::classify(s.mat(), inst.h, v);
    const auto b = robust::classify_commuting(s.mat(), inst.h, v);
    CHECK(a.status == b.status);
  }
}

TEST_CASE("robust algebra of the workhorse is the joint diagonal") {
  const auto alg = robust::robust_algebra(workhorse_h(), workhorse_v());
  CHECK(alg.dimension() == 3);
  ComplexMatrix s = workhorse_v().mat();
  s(2, 2) = 1.0;
  CHECK(algebra::contains(alg, s).contained);
  CHECK_FALSE(algebra::contains(alg, diag_m({1, -1, 1})).contained);
}

TEST_CASE("robust algebra sits between the bicommutant and the commutant") {
  for (std::uint64_t seed : {3, 4, 5}) {
    const auto inst = test::planted_instance(6, seed);
    const auto rv = robust::robust_algebra(inst.h, inst.v);
    const auto lower = algebra::bicommutant({inst.h.mat()});
    const auto upper = algebra::commutant({inst.h.mat()});
    for (const auto& b : lower.basis)
      CHECK(algebra::contains(rv, b, 1e-7).contained);
    for (const auto& b : rv.basis)
      CHECK(algebra::contains(upper, b, 1e-7).contained);
  }
}

TEST_CASE("restricted robust algebra matches ({H} u J)''") {
  const HermitianMatrix h(diag_m({0, 0, 1}));
  const HermitianMatrix j(diag_m({1, 1, -1}));
  const auto res = robust::robust_algebra_restricted(h, {j}, 25, 42);
  CHECK(res.matches_prediction);
  CHECK(res.predicted.dimension() == 2);
  CHECK(res.intersection.dimension() == 2);
}

TEST_CASE("unrestricted sampling recovers the bicommutant of H") {
  const auto inst = test::planted_instance(5, 23);
  const auto res = robust::robust_algebra_restricted(inst.h, {}, 25, 42);
  CHECK(res.matches_prediction);
  CHECK(res.predicted.dimension() ==
        algebra::bicommutant({inst.h.mat()}).dimension());
}

TEST_CASE("completely robust means block-scalar") {
  const auto h = workhorse_h();
  CHECK(robust::completely_robust(ComplexMatrix::Identity(3, 3), h));
  CHECK(robust::completely_robust(diag_m({2, 2, -1}), h));
  CHECK_FALSE(robust::completely_robust(diag_m({1, -1, 1}), h));
  ComplexMatrix s = workhorse_v().mat();
  s(2, 2) = 1.0;
  CHECK_FALSE(robust::completely_robust(s, h));
}

TEST_CASE("residual degeneracy yields a caveat, not a fragile call") {
  // V blind to the ground block: the block never splits
  const auto h = workhorse_h();
  const HermitianMatrix v(diag_m({0, 0, 1}));
  // scalar on the residual block: still safely robust
  const auto ok = robust::classify(diag_m({3, 3, 7}), h, v);
  CHECK(ok.robust);
  // non-scalar on the residual block: cannot be decided at order 2
  const auto undecided = robust::classify(diag_m({1, -1, 1}), h, v);
  CHECK(undecided.status == robust::Status::Inconclusive);
  CHECK(undecided.residual_degeneracy_caveat);
}
