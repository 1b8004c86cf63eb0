#include <doctest.h>

#include "core/numkernel.hpp"
#include "testutil.hpp"

using namespace qsym;

namespace {

ComplexMatrix sigma_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix sigma_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace

TEST_CASE("hermitian_eig on sigma_x") {
  const auto eig = num::hermitian_eig(HermitianMatrix(sigma_x()));
  CHECK(eig.values(0) == doctest::Approx(-1.0));
  CHECK(eig.values(1) == doctest::Approx(1.0));
  // unitary columns
  CHECK((eig.vectors.adjoint() * eig.vectors -
         ComplexMatrix::Identity(2, 2)).norm() < 1e-14);
  // phase convention: first significant component real positive
  for (int j = 0; j < 2; ++j) {
    CHECK(eig.vectors(0, j).real() > 0);
    CHECK(std::abs(eig.vectors(0, j).imag()) < 1e-14);
  }
}

TEST_CASE("hermitian_eig is bitwise deterministic") {
  const auto h = test::random_hermitian(7, 99);
  const auto a = num::hermitian_eig(h);
  const auto b = num::hermitian_eig(h);
  CHECK(a.values == b.values);
  CHECK(a.vectors == b.vectors);
}

TEST_CASE("unitary_exp Pauli rotation") {
  // e^{-i (pi/2) sigma_x} = -i sigma_x
  const ComplexMatrix u =
      num::unitary_exp(HermitianMatrix(sigma_x()), std::acos(-1.0) / 2.0);
  const ComplexMatrix expected = Complex(0, -1) * sigma_x();
  CHECK((u - expected).norm() < 1e-12);
}

TEST_CASE("unitary_exp at t=0 is the identity") {
  const auto h = test::random_hermitian(5, 3);
  CHECK((num::unitary_exp(h, 0.0) - ComplexMatrix::Identity(5, 5)).norm() <
        1e-14);
}

TEST_CASE("commutator_map matches the commutator") {
  std::mt19937_64 rng(17);
  const ComplexMatrix g = test::random_ginibre(4, rng);
  const ComplexMatrix x = test::random_ginibre(4, rng);
  const ComplexMatrix lhs = num::unvec(num::commutator_map(g) * num::vec(x), 4);
  CHECK((lhs - commutator(x, g)).norm() < 1e-12);
}

TEST_CASE("nullspace of the commutator map counts sum r_k^2") {
  // diag(0,1): commuting matrices are the diagonal ones -> dimension 2
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(1, 1) = 1.0;
  const auto basis = num::nullspace_basis(num::commutator_map(d), 2);
  CHECK(basis.size() == 2);
  for (const auto& b : basis) {
    CHECK(commutator(b, d).norm() < 1e-10);
    CHECK(b.norm() == doctest::Approx(1.0));
  }
}

TEST_CASE("nullspace basis is Frobenius-orthonormal") {
  const auto basis = num::nullspace_basis(num::commutator_map(sigma_z()), 2);
  REQUIRE(basis.size() == 2);
  const Complex inner = (basis[0].adjoint() * basis[1]).trace();
  CHECK(std::abs(inner) < 1e-12);
}

TEST_CASE("vec/unvec round-trip") {
  std::mt19937_64 rng(5);
  const ComplexMatrix x = test::random_ginibre(3, rng);
  CHECK((num::unvec(num::vec(x), 3) - x).norm() == 0.0);
}
