#include "robustness.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "spectral.hpp"

namespace qsym::robust {

const char* RobustnessVerdict::status_name() const {
  switch (status) {
    case Status::Robust: return "robust";
    case Status::Fragile: return "fragile";
    default: return "inconclusive";
  }
}

SymmetryCheck is_symmetry(const ComplexMatrix& s, const HermitianMatrix& h,
                          double tol) {
  SymmetryCheck c;
  c.residual = commutator(s, h.mat()).norm();
  c.is_symmetry = c.residual <= tol * s.norm() * std::max(1.0, h.mat().norm());
  return c;
}

namespace {

std::optional<FragilityWitness> build_witness(const ComplexMatrix& s,
                                              const kato::KatoFamily& fam) {
  FragilityWitness best;
  for (int m = 0; m < fam.count(); ++m)
    for (int n = 0; n < fam.count(); ++n) {
      if (m == n) continue;
      const ComplexMatrix block =
          fam.subprojections[m] * s * fam.subprojections[n];
      Eigen::JacobiSVD<ComplexMatrix> svd(
          block, Eigen::ComputeThinU | Eigen::ComputeThinV);
      if (svd.singularValues().size() == 0) continue;
      const double sigma = svd.singularValues()(0);
      if (2.0 * sigma > best.lower_bound) {
        best.n = n;
        best.m = m;
        best.psi_n = svd.matrixV().col(0);
        best.psi_m = svd.matrixU().col(0);
        best.lower_bound = 2.0 * sigma;
      }
    }
  if (best.lower_bound == 0.0) return std::nullopt;
  return best;
}

// A residual-flagged merged block hides a possibly finer true splitting.
// S acting as a scalar on the block commutes with any finer subprojection,
// so only non-scalar action makes the verdict inconclusive.
bool touches_residual_block(const ComplexMatrix& s,
                            const kato::KatoFamily& fam, double tol) {
  for (int j = 0; j < fam.count(); ++j) {
    if (!fam.residual_flag[j]) continue;
    const ComplexMatrix& p = fam.subprojections[j];
    const int r = fam.rank(j);
    const Complex sj = (p * s).trace() / static_cast<double>(r);
    if ((p * s * p - sj * p).norm() > tol) return true;
  }
  return false;
}

}  // namespace

RobustnessVerdict classify(const ComplexMatrix& s, const kato::KatoFamily& fam,
                           const ClassifyOptions& opts) {
  RobustnessVerdict verdict;
  const double tol = opts.tol_rel * std::max(1e-300, s.norm());
  for (int j = 0; j < fam.count(); ++j)
    verdict.max_commutator = std::max(
        verdict.max_commutator, commutator(s, fam.subprojections[j]).norm());

  if (verdict.max_commutator <= tol) {
    if (touches_residual_block(s, fam, tol)) {
      verdict.status = Status::Inconclusive;
      verdict.residual_degeneracy_caveat = true;
    } else {
      verdict.status = Status::Robust;
      verdict.robust = true;
    }
  } else if (verdict.max_commutator > opts.hysteresis * tol) {
    verdict.status = Status::Fragile;
    verdict.witness = build_witness(s, fam);
  } else {
    verdict.status = Status::Inconclusive;
  }
  return verdict;
}

RobustnessVerdict classify(const ComplexMatrix& s, const HermitianMatrix& h,
                           const HermitianMatrix& v,
                           const ClassifyOptions& opts) {
  const SymmetryCheck sym = is_symmetry(s, h);
  if (!sym.is_symmetry)
    throw NotASymmetry("classify: [S,H] residual " +
                       std::to_string(sym.residual));
  const auto dec = spectral::decompose(h);
  const auto fam = kato::subprojections(h, v, dec, opts.kato);
  return classify(s, fam, opts);
}

RobustnessVerdict classify_commuting(const ComplexMatrix& s,
                                     const HermitianMatrix& h,
                                     const HermitianMatrix& v,
                                     double tol_rel) {
  const double scale = h.mat().norm() * v.mat().norm();
  if (commutator(h.mat(), v.mat()).norm() > tol_rel * std::max(1.0, scale))
    throw UsageError("classify_commuting: V does not commute with H");
  const SymmetryCheck sym = is_symmetry(s, h);
  if (!sym.is_symmetry)
    throw NotASymmetry("classify_commuting: [S,H] residual " +
                       std::to_string(sym.residual));
  RobustnessVerdict verdict;
  verdict.max_commutator = commutator(s, v.mat()).norm();
  const double tol =
      tol_rel * std::max(1e-300, s.norm()) * std::max(1.0, v.mat().norm());
  if (verdict.max_commutator <= tol) {
    verdict.status = Status::Robust;
    verdict.robust = true;
  } else if (verdict.max_commutator > 10.0 * tol) {
    verdict.status = Status::Fragile;
  } else {
    verdict.status = Status::Inconclusive;
  }
  return verdict;
}

algebra::OperatorAlgebra robust_algebra(const HermitianMatrix& h,
                                        const HermitianMatrix& v,
                                        const ClassifyOptions& opts) {
  const auto dec = spectral::decompose(h);
  const auto fam = kato::subprojections(h, v, dec, opts.kato);
  return algebra::commutant(fam.subprojections);
}

RestrictedResult robust_algebra_restricted(
    const HermitianMatrix& h, const std::vector<HermitianMatrix>& j_set,
    int num_samples, std::uint64_t seed, const ClassifyOptions& opts) {
  if (num_samples < 1)
    throw UsageError("robust_algebra_restricted: need >= 1 sample");
  std::vector<ComplexMatrix> j_mats;
  for (const auto& j : j_set) {
    const double comm = commutator(h.mat(), j.mat()).norm();
    if (comm > 1e-8 * std::max(1.0, h.mat().norm() * j.mat().norm()))
      throw UsageError("robust_algebra_restricted: J must commute with H");
    j_mats.push_back(j.mat());
  }
  if (j_mats.empty())
    j_mats.push_back(ComplexMatrix::Identity(h.dim(), h.dim()));

  const algebra::OperatorAlgebra j_comm = algebra::commutant(j_mats);

  RestrictedResult res;
  std::vector<algebra::OperatorAlgebra> singles;
  for (int i = 0; i < num_samples; ++i) {
    const HermitianMatrix v =
        algebra::sample_hermitian(j_comm, seed + static_cast<std::uint64_t>(i));
    singles.push_back(robust_algebra(h, v, opts));
  }
  res.samples_used = num_samples;
  res.intersection = algebra::intersect(singles);

  std::vector<ComplexMatrix> gens = j_mats;
  gens.push_back(h.mat());
  res.predicted = algebra::bicommutant(gens);
  res.matches_prediction = algebra::equal(res.intersection, res.predicted);
  return res;
}

bool completely_robust(const ComplexMatrix& s, const HermitianMatrix& h,
                       double tol_rel) {
  const auto dec = spectral::decompose(h);
  return spectral::is_function_of_h(s, dec,
                                    tol_rel * std::max(1.0, s.norm()))
      .is_function;
}

}  // namespace qsym::robust
