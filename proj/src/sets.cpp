#include "disjopt/sets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

namespace disjopt::sets {

namespace {

using polycone::Direction;

constexpr int kBranchCap = 100000;

double clamp(double x, double lo, double hi) { return std::min(std::max(x, lo), hi); }

std::vector<int> support(const VectorXd& z, double tol) {
  std::vector<int> s;
  for (int i = 0; i < z.size(); ++i)
    if (std::abs(z[i]) > tol) s.push_back(i);
  return s;
}

VectorXd unit(int dim, int i, double sign = 1.0) {
  VectorXd e = VectorXd::Zero(dim);
  e[i] = sign;
  return e;
}

// Enumerates all k-subsets of {0..m-1} \ fixed, appended to `fixed`.
void enumerate_supersets(const std::vector<int>& fixed, int m, int size,
                         const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<bool> in(m, false);
  for (int i : fixed) in[i] = true;
  std::vector<int> free;
  for (int i = 0; i < m; ++i)
    if (!in[i]) free.push_back(i);
  int need = size - static_cast<int>(fixed.size());
  if (need < 0) return;
  if (need > static_cast<int>(free.size())) return;
  std::vector<int> pick(need);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == need) {
      std::vector<int> J = fixed;
      J.insert(J.end(), pick.begin(), pick.end());
      std::sort(J.begin(), J.end());
      fn(J);
      return;
    }
    for (int i = start; i < static_cast<int>(free.size()); ++i) {
      pick[depth] = free[i];
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

}  // namespace

VectorXd StructuredSet::project(const VectorXd&) const {
  throw std::logic_error("this set does not expose a projection oracle");
}

ConvexCone StructuredSet::regular_normal_cone(const VectorXd& point) const {
  return polycone::polar(tangent_cone(point));
}

// ---------------------------------------------------------------------------
// BoxSparsitySet

BoxSparsitySet::BoxSparsitySet(int n, int kappa, VectorXd lower, VectorXd upper)
    : n_(n), kappa_(kappa), lower_(std::move(lower)), upper_(std::move(upper)) {
  if (n < 2 || kappa < 1 || kappa >= n)
    throw std::invalid_argument("BoxSparsitySet: need 1 <= kappa < n");
  if (lower_.size() != n || upper_.size() != n)
    throw std::invalid_argument("BoxSparsitySet: bound dimension mismatch");
  for (int i = 0; i < n; ++i) {
    if (!(lower_[i] <= 0.0 && 0.0 <= upper_[i]))
      throw std::invalid_argument("BoxSparsitySet: bounds must straddle zero");
  }
}

BoxSparsitySet::BoxSparsitySet(int n, int kappa, double lower, double upper)
    : BoxSparsitySet(n, kappa, VectorXd::Constant(n, lower), VectorXd::Constant(n, upper)) {}

bool BoxSparsitySet::member(const VectorXd& z, double tol) const {
  if (z.size() != n_) return false;
  int nnz = 0;
  for (int i = 0; i < n_; ++i) {
    if (std::abs(z[i]) > tol) ++nnz;
    if (z[i] < lower_[i] - tol || z[i] > upper_[i] + tol) return false;
  }
  return nnz <= kappa_;
}

VectorXd BoxSparsitySet::project(const VectorXd& z) const {
  // Per coordinate, the cost of keeping i is (z_i - clamp_i)^2 and the cost
  // of zeroing it is z_i^2; keep the kappa highest-benefit coordinates, ties
  // broken by smallest index.
  VectorXd clamped(n_);
  std::vector<std::pair<double, int>> benefit(n_);
  for (int i = 0; i < n_; ++i) {
    clamped[i] = clamp(z[i], lower_[i], upper_[i]);
    double keep_cost = (z[i] - clamped[i]) * (z[i] - clamped[i]);
    benefit[i] = {z[i] * z[i] - keep_cost, i};
  }
  std::sort(benefit.begin(), benefit.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  VectorXd out = VectorXd::Zero(n_);
  for (int k = 0; k < kappa_; ++k) out[benefit[k].second] = clamped[benefit[k].second];
  return out;
}

ConeUnion BoxSparsitySet::tangent_cone(const VectorXd& z) const {
  if (!member(z)) throw NotAMember("BoxSparsitySet::tangent_cone: point is not a member");
  std::vector<int> supp = support(z, kSparsityTol);
  ConeUnion out;
  out.dim = n_;
  auto branch_for = [&](const std::vector<int>& J) {
    std::vector<bool> inJ(n_, false);
    for (int i : J) inJ[i] = true;
    std::vector<VectorXd> ineqs, eqs;
    for (int i = 0; i < n_; ++i) {
      if (!inJ[i]) {
        eqs.push_back(unit(n_, i));
        continue;
      }
      bool at_lower = std::isfinite(lower_[i]) && z[i] <= lower_[i] + kSparsityTol;
      bool at_upper = std::isfinite(upper_[i]) && z[i] >= upper_[i] - kSparsityTol;
      if (at_lower && at_upper)
        eqs.push_back(unit(n_, i));
      else if (at_lower)
        ineqs.push_back(unit(n_, i, -1.0));  // d_i >= 0
      else if (at_upper)
        ineqs.push_back(unit(n_, i));  // d_i <= 0
    }
    out.branches.push_back(polycone::dd_convert(
        ConvexCone::from_halfspaces(n_, std::move(ineqs), std::move(eqs)), Direction::HtoV));
  };
  if (binomial(n_ - static_cast<int>(supp.size()), kappa_ - static_cast<int>(supp.size())) >
      kBranchCap)
    throw EnumerationCapExceeded("BoxSparsitySet::tangent_cone: too many branches");
  enumerate_supersets(supp, n_, kappa_, branch_for);
  return polycone::canonicalize(out);
}

ConeUnion BoxSparsitySet::limiting_normal_cone(const VectorXd& z) const {
  if (!member(z)) throw NotAMember("BoxSparsitySet::limiting_normal_cone: point not a member");
  std::vector<int> supp = support(z, kSparsityTol);
  ConeUnion out;
  out.dim = n_;
  auto branch_for = [&](const std::vector<int>& J) {
    std::vector<bool> inJ(n_, false);
    for (int i : J) inJ[i] = true;
    std::vector<bool> inSupp(n_, false);
    for (int i : supp) inSupp[i] = true;
    std::vector<VectorXd> ineqs, eqs;
    for (int i = 0; i < n_; ++i) {
      if (!inJ[i]) continue;  // v_i free
      bool at_lower = std::isfinite(lower_[i]) && z[i] <= lower_[i] + kSparsityTol;
      bool at_upper = std::isfinite(upper_[i]) && z[i] >= upper_[i] - kSparsityTol;
      if (inSupp[i]) {
        if (at_upper)
          ineqs.push_back(unit(n_, i, -1.0));  // v_i >= 0
        else if (at_lower)
          ineqs.push_back(unit(n_, i));  // v_i <= 0
        else
          eqs.push_back(unit(n_, i));
      } else {
        // z_i = 0 and i kept in the support superset
        bool lower_zero = lower_[i] >= -kSparsityTol;
        bool upper_zero = upper_[i] <= kSparsityTol;
        if (lower_zero && upper_zero)
          continue;  // pinned coordinate: v_i free
        else if (lower_zero)
          ineqs.push_back(unit(n_, i));  // v_i <= 0
        else if (upper_zero)
          ineqs.push_back(unit(n_, i, -1.0));  // v_i >= 0
        else
          eqs.push_back(unit(n_, i));
      }
    }
    out.branches.push_back(polycone::dd_convert(
        ConvexCone::from_halfspaces(n_, std::move(ineqs), std::move(eqs)), Direction::HtoV));
  };
  if (binomial(n_ - static_cast<int>(supp.size()), kappa_ - static_cast<int>(supp.size())) >
      kBranchCap)
    throw EnumerationCapExceeded("BoxSparsitySet::limiting_normal_cone: too many branches");
  enumerate_supersets(supp, n_, kappa_, branch_for);
  return polycone::canonicalize(out);
}

BigInt BoxSparsitySet::branch_count() const { return binomial(n_, kappa_); }

// ---------------------------------------------------------------------------
// ComplementaritySet

ComplementaritySet::ComplementaritySet(int n, VectorXd z_upper, VectorXd lambda_upper)
    : n_(n), z_upper_(std::move(z_upper)), lambda_upper_(std::move(lambda_upper)) {
  if (n < 1) throw std::invalid_argument("ComplementaritySet: need n >= 1");
  if (z_upper_.size() != n || lambda_upper_.size() != n)
    throw std::invalid_argument("ComplementaritySet: bound dimension mismatch");
  for (int i = 0; i < n; ++i)
    if (z_upper_[i] < 0 || lambda_upper_[i] < 0)
      throw std::invalid_argument("ComplementaritySet: bounds must be nonnegative");
}

ComplementaritySet::ComplementaritySet(int n, double z_upper, double lambda_upper)
    : ComplementaritySet(n, VectorXd::Constant(n, z_upper),
                         VectorXd::Constant(n, lambda_upper)) {}

bool ComplementaritySet::member(const VectorXd& point, double tol) const {
  if (point.size() != 2 * n_) return false;
  for (int i = 0; i < n_; ++i) {
    double z = point[i], l = point[n_ + i];
    if (z < -tol || z > z_upper_[i] + tol) return false;
    if (l < -tol || l > lambda_upper_[i] + tol) return false;
    if (std::abs(z * l) > tol) return false;
  }
  return true;
}

std::pair<VectorXd, VectorXd> ComplementaritySet::project_pair(const VectorXd& z,
                                                               const VectorXd& lam) const {
  VectorXd pz(n_), pl(n_);
  for (int i = 0; i < n_; ++i) {
    double cz = clamp(z[i], 0.0, z_upper_[i]);
    double cl = clamp(lam[i], 0.0, lambda_upper_[i]);
    double cost_z = (z[i] - cz) * (z[i] - cz) + lam[i] * lam[i];
    double cost_l = z[i] * z[i] + (lam[i] - cl) * (lam[i] - cl);
    if (cost_z <= cost_l) {  // ties keep the z-branch
      pz[i] = cz;
      pl[i] = 0.0;
    } else {
      pz[i] = 0.0;
      pl[i] = cl;
    }
  }
  return {pz, pl};
}

VectorXd ComplementaritySet::project(const VectorXd& point) const {
  auto [pz, pl] = project_pair(point.head(n_), point.tail(n_));
  VectorXd out(2 * n_);
  out.head(n_) = pz;
  out.tail(n_) = pl;
  return out;
}

namespace {

// Per-pair cone pieces over local coordinates (d_z, d_lambda); rows are
// 2-vectors to be embedded at coordinates (i, n+i).
struct PairPieces {
  // each piece: list of (coeff_z, coeff_lambda, is_eq)
  std::vector<std::vector<std::tuple<double, double, bool>>> pieces;
};

PairPieces pair_tangent(double z, double l, double zu, double lu, double tol) {
  PairPieces out;
  auto piece = [&](std::vector<std::tuple<double, double, bool>> rows) {
    out.pieces.push_back(std::move(rows));
  };
  if (z > tol) {  // on the z-leg, lambda pinned at 0
    std::vector<std::tuple<double, double, bool>> rows{{0, 1, true}};
    if (z >= zu - tol) rows.push_back({1, 0, false});  // d_z <= 0 at the cap
    piece(std::move(rows));
  } else if (l > tol) {
    std::vector<std::tuple<double, double, bool>> rows{{1, 0, true}};
    if (l >= lu - tol) rows.push_back({0, 1, false});
    piece(std::move(rows));
  } else {  // biactive corner
    if (zu > tol)
      piece({{0, 1, true}, {-1, 0, false}});  // d_lambda = 0, d_z >= 0
    else
      piece({{0, 1, true}, {1, 0, true}});  // z pinned: d = 0 on this leg
    if (lu > tol)
      piece({{1, 0, true}, {0, -1, false}});
    else
      piece({{1, 0, true}, {0, 1, true}});
  }
  return out;
}

PairPieces pair_limiting(double z, double l, double zu, double lu, double tol) {
  PairPieces out;
  auto piece = [&](std::vector<std::tuple<double, double, bool>> rows) {
    out.pieces.push_back(std::move(rows));
  };
  if (z > tol) {
    if (z >= zu - tol)
      piece({{-1, 0, false}});  // v_z >= 0, v_lambda free
    else
      piece({{1, 0, true}});  // v_z = 0, v_lambda free
  } else if (l > tol) {
    if (l >= lu - tol)
      piece({{0, -1, false}});
    else
      piece({{0, 1, true}});
  } else {
    bool z_pinned = zu <= tol, l_pinned = lu <= tol;
    if (z_pinned && l_pinned) {
      piece({});  // whole plane
    } else if (z_pinned) {
      piece({{0, 1, false}});  // v_z free, v_lambda <= 0
    } else if (l_pinned) {
      piece({{1, 0, false}});  // v_z <= 0, v_lambda free
    } else {
      piece({{1, 0, true}});                  // {0} x R
      piece({{0, 1, true}});                  // R x {0}
      piece({{1, 0, false}, {0, 1, false}});  // nonpositive quadrant
    }
  }
  return out;
}

}  // namespace

ConeUnion ComplementaritySet::tangent_cone(const VectorXd& point) const {
  if (!member(point)) throw NotAMember("ComplementaritySet::tangent_cone: point not a member");
  std::vector<PairPieces> per(n_);
  size_t total = 1;
  for (int i = 0; i < n_; ++i) {
    per[i] = pair_tangent(point[i], point[n_ + i], z_upper_[i], lambda_upper_[i], kSparsityTol);
    total *= per[i].pieces.size();
    if (total > kBranchCap)
      throw EnumerationCapExceeded("ComplementaritySet::tangent_cone: too many branches");
  }
  ConeUnion out;
  out.dim = 2 * n_;
  std::vector<size_t> idx(n_, 0);
  for (;;) {
    std::vector<VectorXd> ineqs, eqs;
    for (int i = 0; i < n_; ++i)
      for (const auto& [cz, cl, is_eq] : per[i].pieces[idx[i]]) {
        VectorXd row = VectorXd::Zero(2 * n_);
        row[i] = cz;
        row[n_ + i] = cl;
        (is_eq ? eqs : ineqs).push_back(row);
      }
    out.branches.push_back(polycone::dd_convert(
        ConvexCone::from_halfspaces(2 * n_, std::move(ineqs), std::move(eqs)), Direction::HtoV));
    int j = n_ - 1;
    while (j >= 0 && ++idx[j] == per[j].pieces.size()) idx[j--] = 0;
    if (j < 0) break;
  }
  return polycone::canonicalize(out);
}

ConeUnion ComplementaritySet::limiting_normal_cone(const VectorXd& point) const {
  if (!member(point))
    throw NotAMember("ComplementaritySet::limiting_normal_cone: point not a member");
  std::vector<PairPieces> per(n_);
  size_t total = 1;
  for (int i = 0; i < n_; ++i) {
    per[i] = pair_limiting(point[i], point[n_ + i], z_upper_[i], lambda_upper_[i], kSparsityTol);
    total *= per[i].pieces.size();
    if (total > kBranchCap)
      throw EnumerationCapExceeded("ComplementaritySet::limiting_normal_cone: too many branches");
  }
  ConeUnion out;
  out.dim = 2 * n_;
  std::vector<size_t> idx(n_, 0);
  for (;;) {
    std::vector<VectorXd> ineqs, eqs;
    for (int i = 0; i < n_; ++i)
      for (const auto& [cz, cl, is_eq] : per[i].pieces[idx[i]]) {
        VectorXd row = VectorXd::Zero(2 * n_);
        row[i] = cz;
        row[n_ + i] = cl;
        (is_eq ? eqs : ineqs).push_back(row);
      }
    out.branches.push_back(polycone::dd_convert(
        ConvexCone::from_halfspaces(2 * n_, std::move(ineqs), std::move(eqs)), Direction::HtoV));
    int j = n_ - 1;
    while (j >= 0 && ++idx[j] == per[j].pieces.size()) idx[j--] = 0;
    if (j < 0) break;
  }
  return polycone::canonicalize(out);
}

BigInt ComplementaritySet::branch_count() const {
  BigInt r = 1;
  return r << n_;
}

// ---------------------------------------------------------------------------
// PolyUnionSet

PolyUnionSet::PolyUnionSet(int dim, std::vector<PolyBranch> branches)
    : dim_(dim), branches_(std::move(branches)) {
  if (branches_.empty()) throw std::invalid_argument("PolyUnionSet: branch list empty");
  for (const auto& br : branches_) {
    if ((br.A.rows() > 0 && br.A.cols() != dim) || (br.B.rows() > 0 && br.B.cols() != dim))
      throw std::invalid_argument("PolyUnionSet: row dimension mismatch");
    if (br.A.rows() != br.a.size() || br.B.rows() != br.b.size())
      throw std::invalid_argument("PolyUnionSet: rhs size mismatch");
  }
}

namespace {

bool branch_member(const PolyBranch& br, const VectorXd& z, double tol) {
  double scale = tol * (1.0 + z.norm());
  for (int i = 0; i < br.A.rows(); ++i)
    if (br.A.row(i).dot(z) > br.a[i] + scale * (1.0 + br.A.row(i).norm())) return false;
  for (int i = 0; i < br.B.rows(); ++i)
    if (std::abs(br.B.row(i).dot(z) - br.b[i]) > scale * (1.0 + br.B.row(i).norm())) return false;
  return true;
}

// Local tangent branch at z: tight inequality rows become homogeneous
// inequalities, equality rows stay equalities.
ConvexCone local_tangent_branch(const PolyBranch& br, const VectorXd& z, int dim, double tol) {
  std::vector<VectorXd> ineqs, eqs;
  for (int i = 0; i < br.A.rows(); ++i) {
    double slack = br.a[i] - br.A.row(i).dot(z);
    if (slack <= tol * (1.0 + std::abs(br.a[i]) + br.A.row(i).norm() * z.norm()))
      ineqs.push_back(br.A.row(i).transpose());
  }
  for (int i = 0; i < br.B.rows(); ++i) eqs.push_back(br.B.row(i).transpose());
  return ConvexCone::from_halfspaces(dim, std::move(ineqs), std::move(eqs));
}

}  // namespace

bool PolyUnionSet::member(const VectorXd& z, double tol) const {
  for (const auto& br : branches_)
    if (branch_member(br, z, tol)) return true;
  return false;
}

ConeUnion PolyUnionSet::tangent_cone(const VectorXd& z) const {
  if (!member(z)) throw NotAMember("PolyUnionSet::tangent_cone: point not a member");
  ConeUnion out;
  out.dim = dim_;
  for (const auto& br : branches_)
    if (branch_member(br, z, kSparsityTol))
      out.branches.push_back(polycone::dd_convert(
          local_tangent_branch(br, z, dim_, kSparsityTol), Direction::HtoV));
  return polycone::canonicalize(out);
}

ConeUnion PolyUnionSet::limiting_normal_cone(const VectorXd& z) const {
  if (!member(z)) throw NotAMember("PolyUnionSet::limiting_normal_cone: point not a member");
  if (dim_ > 6) throw EnumerationCapExceeded("PolyUnionSet::limiting_normal_cone: dim > 6");
  // Locally the set is z + union of the active branch tangent cones; the
  // limiting cone collects the regular cone at one witness per face of the
  // induced hyperplane arrangement (cone scaling realizes every face
  // arbitrarily close to the point).
  std::vector<ConvexCone> local;
  for (const auto& br : branches_)
    if (branch_member(br, z, kSparsityTol))
      local.push_back(polycone::dd_convert(local_tangent_branch(br, z, dim_, kSparsityTol),
                                           Direction::HtoV));
  if (local.size() > 10)
    throw EnumerationCapExceeded("PolyUnionSet::limiting_normal_cone: more than 10 branches");

  // Distinct hyperplane normals across all local branches.
  std::vector<VectorXd> hyps;
  auto add_hyp = [&](const VectorXd& h) {
    if (h.norm() <= 1e-12) return;
    VectorXd u = h / h.norm();
    for (const auto& o : hyps)
      if ((o - u).norm() <= 1e-9 || (o + u).norm() <= 1e-9) return;
    hyps.push_back(u);
  };
  for (const auto& c : local) {
    for (const auto& a : c.ineq_normals) add_hyp(a);
    for (const auto& b : c.eq_normals) add_hyp(b);
  }

  // Three-way refinement of the branch cones by every hyperplane; every
  // realizable tightness pattern appears as the relative interior of some
  // cell.
  std::vector<ConvexCone> cells = local;
  for (const auto& h : hyps) {
    std::vector<ConvexCone> next;
    std::map<std::string, int> seen;
    auto push = [&](ConvexCone c) {
      std::ostringstream key;
      key.precision(9);
      std::vector<std::string> gs;
      for (const auto& g : c.generators) {
        std::ostringstream gk;
        for (int i = 0; i < g.size(); ++i) gk << std::llround(g[i] * 1e7) << ',';
        gs.push_back(gk.str());
      }
      std::sort(gs.begin(), gs.end());
      for (const auto& s : gs) key << s << ';';
      key << '|' << c.lineality.size();
      for (const auto& l : c.lineality)
        for (int i = 0; i < l.size(); ++i) key << ',' << std::llround(l[i] * 1e7);
      if (seen.emplace(key.str(), 1).second) next.push_back(std::move(c));
    };
    for (const auto& c : cells) {
      bool pos = false, neg = false;
      for (const auto& g : c.generators) {
        double s = h.dot(g);
        pos = pos || s > 1e-9;
        neg = neg || s < -1e-9;
      }
      for (const auto& l : c.lineality) {
        double s = std::abs(h.dot(l));
        pos = pos || s > 1e-9;
        neg = neg || s > 1e-9;
      }
      if (!pos && !neg) {
        push(c);
        continue;
      }
      for (int side = 0; side < 3; ++side) {
        ConvexCone cc = c;
        cc.has_vrep = false;
        cc.reps_synced = false;
        if (side == 0)
          cc.ineq_normals.push_back(h);
        else if (side == 1)
          cc.ineq_normals.push_back(VectorXd(-h));
        else
          cc.eq_normals.push_back(h);
        push(polycone::dd_convert(cc, Direction::HtoV));
      }
    }
    cells = std::move(next);
    if (cells.size() > 20000)
      throw EnumerationCapExceeded("PolyUnionSet::limiting_normal_cone: cell explosion");
  }

  ConeUnion out;
  out.dim = dim_;
  for (const auto& cell : cells) {
    VectorXd witness = VectorXd::Zero(dim_);
    for (const auto& g : cell.generators) witness += g;
    // Regular normal cone of the union at the witness: intersection of the
    // polars of the branch tangents over branches containing it.
    std::vector<VectorXd> ineqs, eqs;
    bool inside_any = false;
    for (const auto& c : local) {
      if (!c.contains(witness, 1e-8)) continue;
      inside_any = true;
      for (const auto& a : c.ineq_normals) {
        if (std::abs(a.dot(witness)) <= 1e-8 * (1.0 + witness.norm()))
          ineqs.push_back(a);  // tight row: polar generator
      }
      for (const auto& b : c.eq_normals) eqs.push_back(b);
    }
    if (!inside_any) continue;
    // polar of {d : tight.d <= 0, eq.d = 0} = cone(tight) + span(eq)
    ConvexCone nhat = ConvexCone::from_generators(dim_, std::move(ineqs), std::move(eqs));
    out.branches.push_back(polycone::dd_convert(nhat, Direction::VtoH));
  }
  return polycone::canonicalize(out);
}

// ---------------------------------------------------------------------------
// K_cc helpers

KccImage kcc_image(const VectorXd& z, int kappa, double tol) {
  int n = static_cast<int>(z.size());
  KccImage img;
  img.n = n;
  std::vector<int> supp = support(z, tol);
  img.empty = static_cast<int>(supp.size()) > kappa;
  int rows = 1 + 2 * n + static_cast<int>(supp.size());
  MatrixXd A(1 + 2 * n, n);
  VectorXd a(1 + 2 * n);
  A.row(0) = -VectorXd::Ones(n).transpose();  // e^T lambda >= n - kappa
  a[0] = -(n - kappa);
  for (int i = 0; i < n; ++i) {
    A.row(1 + 2 * i) = -unit(n, i).transpose();
    a[1 + 2 * i] = 0.0;
    A.row(2 + 2 * i) = unit(n, i).transpose();
    a[2 + 2 * i] = 1.0;
  }
  MatrixXd B(static_cast<int>(supp.size()), n);
  VectorXd b = VectorXd::Zero(static_cast<int>(supp.size()));
  for (size_t k = 0; k < supp.size(); ++k) B.row(static_cast<int>(k)) = unit(n, supp[k]);
  (void)rows;
  img.polyhedron = PolyBranch{std::move(A), std::move(a), std::move(B), std::move(b)};
  return img;
}

std::vector<VectorXd> kcc_image_vertices(const KccImage& image) {
  if (image.empty) return {};
  return polycone::polytope_vertices(image.polyhedron.A, image.polyhedron.a, image.polyhedron.B,
                                     image.polyhedron.b);
}

PolyUnionSet kcc_graph_set(int n, int kappa) {
  // One branch per subset I of pair indices: z_i = 0 and 0 <= lambda_i <= 1
  // on I, lambda_i = 0 off I, plus the budget row e^T lambda >= n - kappa.
  std::vector<PolyBranch> branches;
  int dim = 2 * n;
  for (uint64_t mask = 0; mask < (uint64_t(1) << n); ++mask) {
    std::vector<VectorXd> ineq_rows, eq_rows;
    std::vector<double> ineq_rhs, eq_rhs;
    VectorXd budget = VectorXd::Zero(dim);
    for (int i = 0; i < n; ++i) budget[n + i] = -1.0;
    ineq_rows.push_back(budget);
    ineq_rhs.push_back(-(n - kappa));
    for (int i = 0; i < n; ++i) {
      if (mask & (uint64_t(1) << i)) {
        eq_rows.push_back(unit(dim, i));
        eq_rhs.push_back(0.0);
        ineq_rows.push_back(unit(dim, n + i, -1.0));
        ineq_rhs.push_back(0.0);
        ineq_rows.push_back(unit(dim, n + i));
        ineq_rhs.push_back(1.0);
      } else {
        eq_rows.push_back(unit(dim, n + i));
        eq_rhs.push_back(0.0);
      }
    }
    PolyBranch br;
    br.A.resize(static_cast<int>(ineq_rows.size()), dim);
    br.a.resize(static_cast<int>(ineq_rows.size()));
    for (size_t r = 0; r < ineq_rows.size(); ++r) {
      br.A.row(static_cast<int>(r)) = ineq_rows[r];
      br.a[static_cast<int>(r)] = ineq_rhs[r];
    }
    br.B.resize(static_cast<int>(eq_rows.size()), dim);
    br.b.resize(static_cast<int>(eq_rows.size()));
    for (size_t r = 0; r < eq_rows.size(); ++r) {
      br.B.row(static_cast<int>(r)) = eq_rows[r];
      br.b[static_cast<int>(r)] = eq_rhs[r];
    }
    branches.push_back(std::move(br));
  }
  return PolyUnionSet(dim, std::move(branches));
}

VectorXd kvc_selection(const VectorXd& Gz) { return Gz.cwiseMax(0.0); }

// ---------------------------------------------------------------------------
// Fixture format

std::string format_poly_union(const PolyUnionSet& set) {
  std::ostringstream os;
  os << "DIM " << set.dim() << '\n';
  char buf[64];
  auto emit = [&](const char* kw, const Eigen::RowVectorXd& row, double rhs, const char* rel) {
    os << kw;
    for (int i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
      os << ' ' << buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", rhs);
    os << ' ' << rel << ' ' << buf << '\n';
  };
  for (const auto& br : set.branches()) {
    os << "BRANCH\n";
    for (int i = 0; i < br.A.rows(); ++i) emit("INEQ", br.A.row(i), br.a[i], "<=");
    for (int i = 0; i < br.B.rows(); ++i) emit("EQ", br.B.row(i), br.b[i], "=");
  }
  return os.str();
}

PolyUnionSet parse_poly_union(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int dim = -1;
  struct RawBranch {
    std::vector<VectorXd> arow, brow;
    std::vector<double> arhs, brhs;
  };
  std::vector<RawBranch> raw;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "DIM") {
      if (!(ls >> dim) || dim <= 0)
        throw polycone::ParseError("poly-union line " + std::to_string(lineno) + ": bad DIM");
      continue;
    }
    if (tok == "BRANCH") {
      if (dim <= 0) throw polycone::ParseError("poly-union: DIM must precede BRANCH");
      raw.emplace_back();
      continue;
    }
    if (tok != "INEQ" && tok != "EQ")
      throw polycone::ParseError("poly-union line " + std::to_string(lineno) +
                                 ": expected INEQ or EQ");
    if (raw.empty()) throw polycone::ParseError("poly-union: row before BRANCH");
    std::vector<double> nums;
    std::string t;
    while (ls >> t) {
      if (t == "<=" || t == "=" || t == "==") continue;
      try {
        nums.push_back(std::stod(t));
      } catch (...) {
        throw polycone::ParseError("poly-union line " + std::to_string(lineno) +
                                   ": bad number '" + t + "'");
      }
    }
    if (static_cast<int>(nums.size()) != dim + 1)
      throw polycone::ParseError("poly-union line " + std::to_string(lineno) + ": expected " +
                                 std::to_string(dim + 1) + " numbers");
    VectorXd row(dim);
    for (int i = 0; i < dim; ++i) row[i] = nums[i];
    if (tok == "INEQ") {
      raw.back().arow.push_back(row);
      raw.back().arhs.push_back(nums[dim]);
    } else {
      raw.back().brow.push_back(row);
      raw.back().brhs.push_back(nums[dim]);
    }
  }
  if (dim <= 0) throw polycone::ParseError("poly-union: missing DIM");
  if (raw.empty()) throw polycone::ParseError("poly-union: no BRANCH blocks");
  std::vector<PolyBranch> branches;
  for (auto& rb : raw) {
    PolyBranch br;
    br.A.resize(static_cast<int>(rb.arow.size()), dim);
    br.a.resize(static_cast<int>(rb.arow.size()));
    for (size_t i = 0; i < rb.arow.size(); ++i) {
      br.A.row(static_cast<int>(i)) = rb.arow[i];
      br.a[static_cast<int>(i)] = rb.arhs[i];
    }
    br.B.resize(static_cast<int>(rb.brow.size()), dim);
    br.b.resize(static_cast<int>(rb.brow.size()));
    for (size_t i = 0; i < rb.brow.size(); ++i) {
      br.B.row(static_cast<int>(i)) = rb.brow[i];
      br.b[static_cast<int>(i)] = rb.brhs[i];
    }
    branches.push_back(std::move(br));
  }
  return PolyUnionSet(dim, std::move(branches));
}

}  // namespace disjopt::sets
