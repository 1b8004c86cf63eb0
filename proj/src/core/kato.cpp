#include "kato.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

#include "numkernel.hpp"

namespace qsym::kato {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// single-linkage grouping of an ascending value sequence
std::vector<std::pair<Eigen::Index, Eigen::Index>> link_groups(
    const RealVector& vals, double tol) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> groups;
  Eigen::Index begin = 0;
  for (Eigen::Index i = 1; i <= vals.size(); ++i) {
    if (i == vals.size() || vals(i) - vals(i - 1) > tol) {
      groups.emplace_back(begin, i);
      begin = i;
    }
  }
  return groups;
}

ComplexMatrix projector_from_columns(const ComplexMatrix& y) {
  ComplexMatrix p = y * y.adjoint();
  return (p + p.adjoint()) / 2.0;
}

}  // namespace

bool KatoFamily::any_residual() const {
  return std::any_of(residual_flag.begin(), residual_flag.end(),
                     [](bool b) { return b; });
}

int KatoFamily::rank(int n) const {
  return static_cast<int>(
      std::lround(subprojections[n].trace().real()));
}

spectral::SpectralDecomposition perturbed_spectral(const HermitianMatrix& h,
                                                   const HermitianMatrix& v,
                                                   double eps,
                                                   double cluster_tol) {
  HermitianMatrix he(ComplexMatrix(h.mat() + eps * v.mat()));
  return spectral::decompose(he, cluster_tol);
}

KatoFamily subprojections(const HermitianMatrix& h, const HermitianMatrix& v,
                          const spectral::SpectralDecomposition& dec,
                          const SubprojectionOptions& opts) {
  KatoFamily fam;
  fam.base = dec;
  const Eigen::Index n = h.dim();
  const double vnorm = op_norm(v);
  const double tol1 = opts.branch_tol_rel * std::max(1.0, vnorm);

  auto push = [&](const ComplexMatrix& p, int k, double s, double so, int ord,
                  bool res) {
    fam.subprojections.push_back(p);
    fam.parent.push_back(k);
    fam.slope.push_back(s);
    fam.second_order.push_back(so);
    fam.splitting_order.push_back(ord);
    fam.residual_flag.push_back(res);
  };

  for (int k = 0; k < dec.cluster_count(); ++k) {
    const ComplexMatrix w = dec.cluster_basis(k);
    const Eigen::Index r = w.cols();
    if (r == 1) {
      const double s = (w.adjoint() * v.mat() * w)(0, 0).real();
      push(dec.projections[k], k, s, kNaN, 1, false);
      continue;
    }
    const HermitianMatrix a1(ComplexMatrix(w.adjoint() * v.mat() * w));
    const num::EigResult e1 = num::hermitian_eig(a1);
    for (auto [b, e] : link_groups(e1.values, tol1)) {
      const Eigen::Index s = e - b;
      const double slope = e1.values.segment(b, s).mean();
      const ComplexMatrix y = w * e1.vectors.middleCols(b, s);
      if (s == 1) {
        push(projector_from_columns(y), k, slope, kNaN, 1, false);
        continue;
      }
      // second-order reduced operator on the still-degenerate sub-block:
      // Y^dag V Q (h_k - H)^{-1} Q V Y, Q = I - P_k
      ComplexMatrix g = ComplexMatrix::Zero(n, n);
      const double hk = dec.distinct_values(k);
      for (Eigen::Index i = 0; i < n; ++i) {
        if (dec.cluster_of[i] == k) continue;
        g += (1.0 / (hk - dec.eigenvalues(i))) * dec.eigenvectors.col(i) *
             dec.eigenvectors.col(i).adjoint();
      }
      const HermitianMatrix a2(
          ComplexMatrix(y.adjoint() * v.mat() * g * v.mat() * y));
      const num::EigResult e2 = num::hermitian_eig(a2);
      const double tol2 =
          opts.branch_tol_rel * std::max(1.0, e2.values.cwiseAbs().maxCoeff());
      for (auto [b2, e2i] : link_groups(e2.values, tol2)) {
        const Eigen::Index s2 = e2i - b2;
        const ComplexMatrix y2 = y * e2.vectors.middleCols(b2, s2);
        push(projector_from_columns(y2), k, slope,
             e2.values.segment(b2, s2).mean(), 2, s2 > 1);
      }
    }
  }
  return fam;
}

PerturbedFamily perturbed_family(const HermitianMatrix& h,
                                 const HermitianMatrix& v, double eps,
                                 const KatoFamily& family) {
  const Eigen::Index n = h.dim();
  if (eps == 0.0) {
    // the unperturbed limit: degenerate branches make overlaps ambiguous
    PerturbedFamily pf;
    pf.projections = family.subprojections;
    for (int j = 0; j < family.count(); ++j)
      pf.values.push_back(family.base.distinct_values(family.parent[j]));
    return pf;
  }
  const HermitianMatrix he(ComplexMatrix(h.mat() + eps * v.mat()));
  const num::EigResult eig = num::hermitian_eig(he);
  const int m = family.count();

  std::vector<int> capacity(m);
  for (int j = 0; j < m; ++j) capacity[j] = family.rank(j);

  // greedy maximal-overlap assignment of perturbed eigenvectors to P_n(0)
  std::vector<std::tuple<double, Eigen::Index, int>> cand;
  cand.reserve(static_cast<size_t>(n) * m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      const double o = (eig.vectors.col(i).adjoint() *
                        family.subprojections[j] * eig.vectors.col(i))(0, 0)
                           .real();
      cand.emplace_back(o, i, j);
    }
  std::sort(cand.begin(), cand.end(),
            [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });

  std::vector<int> assigned(n, -1);
  for (const auto& [o, i, j] : cand) {
    if (assigned[i] >= 0 || capacity[j] == 0) continue;
    assigned[i] = j;
    --capacity[j];
  }

  PerturbedFamily pf;
  pf.projections.assign(m, ComplexMatrix::Zero(n, n));
  pf.values.assign(m, 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int j = assigned[i];
    pf.projections[j] += eig.vectors.col(i) * eig.vectors.col(i).adjoint();
    pf.values[j] += eig.values(i);
  }
  for (int j = 0; j < m; ++j) {
    pf.values[j] /= family.rank(j);
    const double ov =
        (pf.projections[j] * family.subprojections[j]).trace().real() /
        family.rank(j);
    pf.min_overlap = std::min(pf.min_overlap, ov);
  }
  if (pf.min_overlap <= 0.5)
    throw NumericError(
        "perturbed_family: ambiguous branch pairing, min overlap " +
        std::to_string(pf.min_overlap));
  return pf;
}

KatoUnitary kato_unitary(const HermitianMatrix& h, const HermitianMatrix& v,
                         double eps, const KatoFamily& family) {
  const Eigen::Index n = h.dim();
  KatoUnitary u;
  u.epsilon = eps;
  u.matrix = ComplexMatrix::Zero(n, n);
  const PerturbedFamily pf = perturbed_family(h, v, eps, family);
  for (int j = 0; j < family.count(); ++j) {
    const ComplexMatrix d = pf.projections[j] - family.subprojections[j];
    const HermitianMatrix rn(ComplexMatrix(d * d));
    const num::EigResult er = num::hermitian_eig(rn);
    const double rmax = er.values.cwiseAbs().maxCoeff();
    u.max_rn_norm = std::max(u.max_rn_norm, rmax);
    if (rmax >= 1.0)
      throw EpsilonTooLarge("kato_unitary: ||R_n|| = " + std::to_string(rmax) +
                            " >= 1, eps outside the perturbative neighbourhood");
    ComplexVector inv_sqrt(n);
    for (Eigen::Index i = 0; i < n; ++i)
      inv_sqrt(i) = 1.0 / std::sqrt(1.0 - std::max(0.0, er.values(i)));
    const ComplexMatrix root =
        er.vectors * inv_sqrt.asDiagonal() * er.vectors.adjoint();
    u.matrix += pf.projections[j] * family.subprojections[j] * root;
  }
  const double unit_dev =
      (u.matrix * u.matrix.adjoint() - ComplexMatrix::Identity(n, n)).norm();
  if (unit_dev > 1e-6)
    throw NumericError("kato_unitary: result not unitary, deviation " +
                       std::to_string(unit_dev));
  return u;
}

HermitianMatrix block_diagonal_approx(const HermitianMatrix& h,
                                      const HermitianMatrix& v, double eps,
                                      const KatoFamily& family) {
  const PerturbedFamily pf = perturbed_family(h, v, eps, family);
  ComplexMatrix ht = ComplexMatrix::Zero(h.dim(), h.dim());
  for (int j = 0; j < family.count(); ++j)
    ht += pf.values[j] * family.subprojections[j];
  return HermitianMatrix(ht);
}

ComplexMatrix adiabatic_invariant(const ComplexMatrix& s, const KatoUnitary& u,
                                  const KatoFamily& family, double tol) {
  const double scale = std::max(1.0, s.norm());
  for (int j = 0; j < family.count(); ++j) {
    const double c = commutator(s, family.subprojections[j]).norm();
    if (c > tol * scale)
      throw NotRobust("adiabatic_invariant: S does not commute with P_" +
                      std::to_string(j) + "(0), residual " + std::to_string(c));
  }
  return u.matrix * s * u.matrix.adjoint();
}

double safe_epsilon(const HermitianMatrix& v, const KatoFamily& family) {
  const double vnorm = op_norm(v);
  if (vnorm == 0.0) return std::numeric_limits<double>::infinity();
  double eta_sub = std::numeric_limits<double>::infinity();
  for (int i = 0; i < family.count(); ++i)
    for (int j = i + 1; j < family.count(); ++j) {
      if (family.parent[i] != family.parent[j]) continue;
      const double d = std::abs(family.slope[i] - family.slope[j]);
      if (d > 0.0) eta_sub = std::min(eta_sub, d);
    }
  const double eta = family.base.gap;
  const double m = std::min(eta_sub, eta);
  return std::isfinite(m) ? m / (4.0 * vnorm)
                          : std::numeric_limits<double>::infinity();
}

KatoFamily subprojections_numerical(const HermitianMatrix& h,
                                    const HermitianMatrix& v,
                                    const std::vector<double>& eps_sequence) {
  if (eps_sequence.size() < 2)
    throw UsageError("subprojections_numerical: need >= 2 eps values");
  for (size_t i = 0; i + 1 < eps_sequence.size(); ++i)
    if (!(eps_sequence[i] > eps_sequence[i + 1]) || eps_sequence.back() <= 0.0)
      throw UsageError(
          "subprojections_numerical: eps sequence must be decreasing positive");

  const spectral::SpectralDecomposition dec = spectral::decompose(h);
  const Eigen::Index n = h.dim();
  const double scale = std::max(1.0, dec.eigenvalues.cwiseAbs().maxCoeff());
  const double branch_tol = 1e-11 * scale * std::max<double>(10, n);

  struct Branch {
    int parent;
    ComplexMatrix proj;
    double value;
  };
  std::vector<std::vector<Branch>> sweeps;

  for (double eps : eps_sequence) {
    const HermitianMatrix he(ComplexMatrix(h.mat() + eps * v.mat()));
    const num::EigResult eig = num::hermitian_eig(he);
    // parent assignment by maximal overlap with the clusters of H
    std::vector<std::vector<Eigen::Index>> by_parent(dec.cluster_count());
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double bo = -1.0;
      for (int k = 0; k < dec.cluster_count(); ++k) {
        const double o = (eig.vectors.col(i).adjoint() * dec.projections[k] *
                          eig.vectors.col(i))(0, 0)
                             .real();
        if (o > bo) {
          bo = o;
          best = k;
        }
      }
      by_parent[best].push_back(i);
    }
    std::vector<Branch> branches;
    for (int k = 0; k < dec.cluster_count(); ++k) {
      auto& idx = by_parent[k];
      std::sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
        return eig.values(a) < eig.values(b);
      });
      RealVector vals(static_cast<Eigen::Index>(idx.size()));
      for (size_t t = 0; t < idx.size(); ++t)
        vals(static_cast<Eigen::Index>(t)) = eig.values(idx[t]);
      for (auto [b, e] : link_groups(vals, branch_tol)) {
        Branch br;
        br.parent = k;
        br.value = vals.segment(b, e - b).mean();
        ComplexMatrix p = ComplexMatrix::Zero(n, n);
        for (Eigen::Index t = b; t < e; ++t)
          p += eig.vectors.col(idx[static_cast<size_t>(t)]) *
               eig.vectors.col(idx[static_cast<size_t>(t)]).adjoint();
        br.proj = (p + p.adjoint()) / 2.0;
        branches.push_back(std::move(br));
      }
    }
    sweeps.push_back(std::move(branches));
  }

  const size_t nb = sweeps.back().size();
  for (const auto& sw : sweeps)
    if (sw.size() != nb)
      throw NumericError(
          "subprojections_numerical: branch count varies across the eps "
          "sweep (avoided crossing in range?)");

  // align every sweep to the order of the finest (last) one by trace overlap
  const auto& ref = sweeps.back();
  std::vector<std::vector<int>> match(sweeps.size());
  for (size_t s = 0; s < sweeps.size(); ++s) {
    std::vector<int> used(nb, 0);
    match[s].assign(nb, -1);
    for (size_t j = 0; j < nb; ++j) {
      double bo = -1.0;
      int bi = -1;
      for (size_t i = 0; i < nb; ++i) {
        if (used[i] || sweeps[s][i].parent != ref[j].parent) continue;
        const double o = (sweeps[s][i].proj * ref[j].proj).trace().real();
        if (o > bo) {
          bo = o;
          bi = static_cast<int>(i);
        }
      }
      if (bi < 0)
        throw NumericError(
            "subprojections_numerical: branch structure inconsistent across "
            "the sweep");
      match[s][j] = bi;
      used[bi] = 1;
    }
  }

  auto extrapolate = [&](size_t sa, size_t sb, size_t j) {
    const double ea = eps_sequence[sa], eb = eps_sequence[sb];
    const ComplexMatrix& pa = sweeps[sa][match[sa][j]].proj;
    const ComplexMatrix& pb = sweeps[sb][match[sb][j]].proj;
    ComplexMatrix raw = (ea * pb - eb * pa) / (ea - eb);
    const HermitianMatrix hr(ComplexMatrix((raw + raw.adjoint()) / 2.0));
    const num::EigResult er = num::hermitian_eig(hr);
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double lam = er.values(i);
      if (std::abs(lam - std::round(lam)) > 0.2)
        throw NumericError(
            "subprojections_numerical: extrapolated projection not near "
            "idempotent");
      if (std::round(lam) == 1.0)
        p += er.vectors.col(i) * er.vectors.col(i).adjoint();
    }
    return p;
  };

  const size_t last = sweeps.size() - 1;
  KatoFamily fam;
  fam.base = dec;
  for (size_t j = 0; j < nb; ++j) {
    const ComplexMatrix p0 = extrapolate(last - 1, last, j);
    if (sweeps.size() >= 3) {
      const ComplexMatrix p0b = extrapolate(last - 2, last - 1, j);
      if ((p0 - p0b).norm() > 1e-5)
        throw NumericError(
            "subprojections_numerical: inconsistent extrapolation across the "
            "eps sequence");
    }
    const int k = ref[j].parent;
    const double hk = dec.distinct_values(k);
    const double ea = eps_sequence[last - 1], eb = eps_sequence[last];
    const double sa = (sweeps[last - 1][match[last - 1][j]].value - hk) / ea;
    const double sb = (ref[j].value - hk) / eb;
    const double slope = (ea * sb - eb * sa) / (ea - eb);
    const double second = (ref[j].value - hk - eb * slope) / (eb * eb);

    fam.subprojections.push_back(p0);
    fam.parent.push_back(k);
    fam.slope.push_back(slope);
    fam.second_order.push_back(second);
    fam.splitting_order.push_back(0);  // filled below
    fam.residual_flag.push_back(false);
  }

  // splitting order: 1 when the branch slope is isolated within its parent
  for (size_t i = 0; i < nb; ++i) {
    bool isolated = true;
    for (size_t j = 0; j < nb; ++j) {
      if (i == j || fam.parent[i] != fam.parent[j]) continue;
      if (std::abs(fam.slope[i] - fam.slope[j]) <
          1e-6 * std::max(1.0, std::abs(fam.slope[i])))
        isolated = false;
    }
    fam.splitting_order[i] = isolated ? 1 : 2;
  }
  return fam;
}

}  // namespace qsym::kato
