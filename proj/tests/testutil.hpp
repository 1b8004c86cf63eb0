#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "core/algebra.hpp"
#include "core/types.hpp"

namespace qsym::test {

inline ComplexMatrix random_ginibre(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = Complex(gauss(rng), gauss(rng));
  return g;
}

inline ComplexMatrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  const ComplexMatrix g = random_ginibre(n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  // fix the phase ambiguity so the draw is deterministic in the seed
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

// GUE-style draw, rescaled to unit operator norm.
inline HermitianMatrix random_hermitian(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const ComplexMatrix g = random_ginibre(n, rng);
  ComplexMatrix h = (g + g.adjoint()) / 2.0;
  return HermitianMatrix(ComplexMatrix(h / op_norm(HermitianMatrix(h))));
}

inline ComplexVector random_unit(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexVector psi(n);
  for (Eigen::Index i = 0; i < n; ++i) psi(i) = Complex(gauss(rng), gauss(rng));
  return psi / psi.norm();
}

struct Instance {
  HermitianMatrix h;
  HermitianMatrix v;
};

// Hamiltonian with planted eigenvalue degeneracies in a random eigenbasis,
// plus an unstructured unit-norm perturbation.
inline Instance planted_instance(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 1);
  std::uniform_int_distribution<int> block(1, 3);
  std::vector<int> mult;
  Eigen::Index total = 0;
  while (total < n) {
    const int m = std::min<Eigen::Index>(block(rng), n - total);
    mult.push_back(m);
    total += m;
  }
  RealVector diag(n);
  Eigen::Index at = 0;
  double level = 0.0;
  std::uniform_real_distribution<double> gapd(0.7, 1.5);
  for (int m : mult) {
    for (int i = 0; i < m; ++i) diag(at++) = level;
    level += gapd(rng);
  }
  const ComplexMatrix u = random_unitary(n, rng);
  ComplexMatrix h = u * diag.asDiagonal() * u.adjoint();
  return Instance{HermitianMatrix(ComplexMatrix((h + h.adjoint()) / 2.0)),
                  random_hermitian(n, seed * 0x9e3779b97f4a7c15ULL + 2)};
}

}  // namespace qsym::test
