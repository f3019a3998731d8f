#include "disjopt/polycone.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

namespace disjopt::polycone {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kRankThreshold = 1e-9;

VectorXd normalized(const VectorXd& v) {
  double n = v.norm();
  return n > 0 ? VectorXd(v / n) : v;
}

bool near_zero(const VectorXd& v, double tol = kPivotTol) { return v.norm() <= tol; }

int rank_of(const std::vector<VectorXd>& rows, int dim) {
  if (rows.empty()) return 0;
  MatrixXd m(static_cast<int>(rows.size()), dim);
  for (size_t i = 0; i < rows.size(); ++i) m.row(static_cast<int>(i)) = rows[i];
  Eigen::ColPivHouseholderQR<MatrixXd> qr(m);
  qr.setThreshold(kRankThreshold);
  return static_cast<int>(qr.rank());
}

// Gram-Schmidt basis of span(vs); keeps vectors of non-negligible residual.
std::vector<VectorXd> orthonormal_basis(const std::vector<VectorXd>& vs) {
  std::vector<VectorXd> basis;
  for (const auto& v : vs) {
    VectorXd w = v;
    for (const auto& b : basis) w -= (b.dot(w)) * b;
    if (w.norm() > 1e-9) basis.push_back(w.normalized());
  }
  return basis;
}

VectorXd project_out(const VectorXd& v, const std::vector<VectorXd>& onb) {
  VectorXd w = v;
  for (const auto& b : onb) w -= (b.dot(w)) * b;
  return w;
}

// Incremental double-description state. Invariants:
//   cone(rays) + span(lin) equals the intersection of processed constraints;
//   every processed normal is orthogonal to every lineality vector;
//   rays are extreme modulo the lineality space and unit length.
struct DdState {
  int n;
  std::vector<VectorXd> lin;
  std::vector<VectorXd> rays;
  std::vector<VectorXd> proc_ineq;
  std::vector<VectorXd> proc_eq;

  explicit DdState(int dim) : n(dim) {
    for (int i = 0; i < dim; ++i) {
      VectorXd e = VectorXd::Zero(dim);
      e[i] = 1.0;
      lin.push_back(e);
    }
  }

  void dedupe_rays() {
    std::vector<VectorXd> out;
    for (const auto& r : rays) {
      bool dup = false;
      for (const auto& o : out)
        if ((o - r).norm() <= 1e-9) {
          dup = true;
          break;
        }
      if (!dup) out.push_back(r);
    }
    rays = std::move(out);
  }

  bool adjacent(const VectorXd& p, const VectorXd& m, int rank_all) const {
    std::vector<VectorXd> tight = proc_eq;
    for (const auto& h : proc_ineq)
      if (std::abs(h.dot(p)) <= kMembershipTol && std::abs(h.dot(m)) <= kMembershipTol)
        tight.push_back(h);
    return rank_of(tight, n) == rank_all - 2;
  }

  int rank_processed() const {
    std::vector<VectorXd> all = proc_ineq;
    all.insert(all.end(), proc_eq.begin(), proc_eq.end());
    return rank_of(all, n);
  }

  // Pivot a lineality vector onto the hyperplane of `normal`; returns the
  // removed (scaled) vector or nullopt when the lineality space is already
  // contained in the hyperplane.
  std::optional<VectorXd> lineality_pivot(const VectorXd& normal) {
    int pick = -1;
    double best = kPivotTol;
    for (size_t i = 0; i < lin.size(); ++i) {
      double d = std::abs(normal.dot(lin[i]));
      if (d > best) {
        best = d;
        pick = static_cast<int>(i);
      }
    }
    if (pick < 0) return std::nullopt;
    VectorXd l0 = lin[pick];
    lin.erase(lin.begin() + pick);
    double d0 = normal.dot(l0);
    for (auto& l : lin) l -= (normal.dot(l) / d0) * l0;
    lin = orthonormal_basis(lin);
    for (auto& r : rays) r = r - (normal.dot(r) / d0) * l0;
    std::vector<VectorXd> kept;
    for (auto& r : rays)
      if (!near_zero(r)) kept.push_back(normalized(r));
    rays = std::move(kept);
    dedupe_rays();
    return l0;
  }

  void insert_eq(const VectorXd& b) {
    if (near_zero(b)) return;
    if (lineality_pivot(b)) {
      proc_eq.push_back(normalized(b));
      return;
    }
    split(b, /*keep_positive=*/false, /*equality=*/true);
    proc_eq.push_back(normalized(b));
  }

  void insert_ineq(const VectorXd& a) {
    if (near_zero(a)) return;
    if (auto l0 = lineality_pivot(a)) {
      VectorXd r0 = *l0;
      if (a.dot(r0) > 0) r0 = -r0;
      rays.push_back(normalized(r0));
      dedupe_rays();
      proc_ineq.push_back(normalized(a));
      return;
    }
    split(a, /*keep_positive=*/false, /*equality=*/false);
    proc_ineq.push_back(normalized(a));
  }

  // Classic DD step on the ray list for a constraint with the lineality
  // space inside its hyperplane.
  void split(const VectorXd& h, bool keep_positive, bool equality) {
    (void)keep_positive;
    std::vector<VectorXd> plus, minus, zero;
    for (const auto& r : rays) {
      double s = h.dot(r);
      if (s > kMembershipTol)
        plus.push_back(r);
      else if (s < -kMembershipTol)
        minus.push_back(r);
      else
        zero.push_back(r);
    }
    if (plus.empty() && !equality) return;  // redundant constraint
    std::vector<VectorXd> next = zero;
    if (!equality) next.insert(next.end(), minus.begin(), minus.end());
    if (!plus.empty() && !minus.empty()) {
      int rank_all = rank_processed();
      for (const auto& p : plus)
        for (const auto& m : minus) {
          if (rays.size() > 2 && !adjacent(p, m, rank_all)) continue;
          double sp = h.dot(p), sm = h.dot(m);
          VectorXd w = sp * m - sm * p;
          if (near_zero(w)) continue;
          next.push_back(normalized(w));
        }
    }
    rays = std::move(next);
    dedupe_rays();
  }
};

std::vector<VectorXd> unit_rows(const std::vector<VectorXd>& rows) {
  std::vector<VectorXd> out;
  for (const auto& r : rows) {
    if (near_zero(r)) continue;
    out.push_back(normalized(r));
  }
  return out;
}

ConvexCone run_h_to_v(const ConvexCone& cone) {
  if (cone.dim > kMaxDim)
    throw DimensionTooLarge("dd_convert: dimension " + std::to_string(cone.dim) +
                            " exceeds cap " + std::to_string(kMaxDim));
  DdState st(cone.dim);
  for (const auto& b : cone.eq_normals)
    if (!near_zero(b)) st.insert_eq(b);
  for (const auto& a : cone.ineq_normals)
    if (!near_zero(a)) st.insert_ineq(a);
  ConvexCone out = cone;
  out.generators = st.rays;
  out.lineality = st.lin;
  out.has_vrep = true;
  out.has_hrep = true;
  out.reps_synced = true;
  return out;
}

}  // namespace

ConvexCone ConvexCone::from_generators(int dim, std::vector<VectorXd> gens,
                                       std::vector<VectorXd> lins) {
  ConvexCone c;
  c.dim = dim;
  c.generators = unit_rows(gens);
  c.lineality = orthonormal_basis(lins);
  c.has_vrep = true;
  return c;
}

ConvexCone ConvexCone::from_halfspaces(int dim, std::vector<VectorXd> ineqs,
                                       std::vector<VectorXd> eqs) {
  ConvexCone c;
  c.dim = dim;
  c.ineq_normals = unit_rows(ineqs);
  c.eq_normals = unit_rows(eqs);
  c.has_hrep = true;
  return c;
}

ConvexCone ConvexCone::full_space(int dim) {
  ConvexCone c;
  c.dim = dim;
  for (int i = 0; i < dim; ++i) {
    VectorXd e = VectorXd::Zero(dim);
    e[i] = 1.0;
    c.lineality.push_back(e);
  }
  c.has_vrep = true;
  c.has_hrep = true;  // no constraints
  c.reps_synced = true;
  return c;
}

ConvexCone ConvexCone::zero(int dim) {
  ConvexCone c;
  c.dim = dim;
  for (int i = 0; i < dim; ++i) {
    VectorXd e = VectorXd::Zero(dim);
    e[i] = 1.0;
    c.eq_normals.push_back(e);
  }
  c.has_vrep = true;  // empty V-rep encodes {0}
  c.has_hrep = true;
  c.reps_synced = true;
  return c;
}

bool ConvexCone::contains(const VectorXd& v, double tol) const {
  if (!has_hrep) return ensure_synced(*this).contains(v, tol);
  double scale = tol * (1.0 + v.norm());
  for (const auto& a : ineq_normals)
    if (a.dot(v) > scale) return false;
  for (const auto& b : eq_normals)
    if (std::abs(b.dot(v)) > scale) return false;
  return true;
}

ConvexCone dd_convert(const ConvexCone& cone, Direction direction) {
  if (cone.dim > kMaxDim)
    throw DimensionTooLarge("dd_convert: dimension " + std::to_string(cone.dim) +
                            " exceeds cap " + std::to_string(kMaxDim));
  if (direction == Direction::HtoV) {
    if (!cone.has_hrep) throw std::logic_error("dd_convert(HtoV): no H-representation");
    return run_h_to_v(cone);
  }
  if (!cone.has_vrep) throw std::logic_error("dd_convert(VtoH): no V-representation");
  // Polar of the V-rep is an H-rep cone; its V-rep supplies our H-rep by
  // bipolarity of closed finitely generated cones.
  ConvexCone pol;
  pol.dim = cone.dim;
  pol.ineq_normals = unit_rows(cone.generators);
  pol.eq_normals = orthonormal_basis(cone.lineality);
  pol.has_hrep = true;
  ConvexCone pol_v = run_h_to_v(pol);
  ConvexCone out = cone;
  out.ineq_normals = pol_v.generators;
  out.eq_normals = pol_v.lineality;
  out.has_hrep = true;
  // Re-run H->V so the stored generators are the extreme rays.
  ConvexCone synced = run_h_to_v(out);
  synced.has_vrep = true;
  return synced;
}

ConvexCone ensure_synced(const ConvexCone& cone) {
  if (cone.reps_synced) return cone;
  if (cone.has_hrep) return dd_convert(cone, Direction::HtoV);
  if (cone.has_vrep) return dd_convert(cone, Direction::VtoH);
  throw std::logic_error("cone without any representation");
}

ConeUnion ensure_synced(const ConeUnion& u) {
  ConeUnion out;
  out.dim = u.dim;
  for (const auto& b : u.branches) out.branches.push_back(ensure_synced(b));
  return out;
}

namespace {

int64_t quantize(double x) {
  double q = x / kRepEqTol;
  if (q > 9e17) q = 9e17;
  if (q < -9e17) q = -9e17;
  return static_cast<int64_t>(std::llround(q));
}

std::string branch_hash(const ConvexCone& c) {
  std::vector<VectorXd> onb = orthonormal_basis(c.lineality);
  std::vector<std::vector<int64_t>> rows;
  for (const auto& g : c.generators) {
    VectorXd w = project_out(g, onb);
    if (w.norm() <= 1e-9) continue;
    w.normalize();
    std::vector<int64_t> r(c.dim);
    for (int i = 0; i < c.dim; ++i) r[i] = quantize(w[i]);
    rows.push_back(std::move(r));
  }
  std::sort(rows.begin(), rows.end());
  // Canonical subspace key: quantized projector diagonal-major entries.
  MatrixXd proj = MatrixXd::Zero(c.dim, c.dim);
  for (const auto& b : onb) proj += b * b.transpose();
  std::ostringstream os;
  os << c.dim << '|';
  for (int i = 0; i < c.dim; ++i)
    for (int j = 0; j < c.dim; ++j) os << quantize(proj(i, j)) << ',';
  os << '|';
  for (const auto& r : rows) {
    for (auto v : r) os << v << ',';
    os << ';';
  }
  return os.str();
}

bool branch_subset_convex(const ConvexCone& a, const ConvexCone& b) {
  // a, b convex and synced: a within b iff every generator and +/- lineality
  // vector of a satisfies b's constraints.
  for (const auto& g : a.generators)
    if (!b.contains(g, kRepEqTol)) return false;
  for (const auto& l : a.lineality) {
    if (!b.contains(l, kRepEqTol)) return false;
    if (!b.contains(VectorXd(-l), kRepEqTol)) return false;
  }
  return true;
}

bool is_zero_cone(const ConvexCone& c) { return c.generators.empty() && c.lineality.empty(); }

}  // namespace

ConeUnion canonicalize(const ConeUnion& u) {
  ConeUnion synced = ensure_synced(u);
  std::vector<ConvexCone> kept;
  std::map<std::string, int> seen;
  for (auto& b : synced.branches) {
    std::string h = branch_hash(b);
    if (seen.count(h)) continue;
    seen[h] = 1;
    kept.push_back(std::move(b));
  }
  // Absorption: drop branches contained in another branch.
  std::vector<bool> dead(kept.size(), false);
  for (size_t i = 0; i < kept.size(); ++i) {
    if (dead[i]) continue;
    for (size_t j = 0; j < kept.size(); ++j) {
      if (i == j || dead[j]) continue;
      if (branch_subset_convex(kept[i], kept[j])) {
        dead[i] = true;
        break;
      }
    }
  }
  ConeUnion out;
  out.dim = synced.dim;
  for (size_t i = 0; i < kept.size(); ++i)
    if (!dead[i]) out.branches.push_back(std::move(kept[i]));
  if (out.branches.empty()) out.branches.push_back(ConvexCone::zero(out.dim));
  return out;
}

ConvexCone polar(const ConvexCone& c) { return polar(ConeUnion(c)); }

ConvexCone polar(const ConeUnion& c) {
  ConeUnion synced = ensure_synced(c);
  std::vector<VectorXd> ineqs, eqs;
  for (const auto& b : synced.branches) {
    for (const auto& g : b.generators) ineqs.push_back(g);
    for (const auto& l : b.lineality) eqs.push_back(l);
  }
  ConvexCone h = ConvexCone::from_halfspaces(synced.dim, std::move(ineqs), std::move(eqs));
  return dd_convert(h, Direction::HtoV);
}

ConeUnion minkowski_sum(const ConeUnion& a, const ConeUnion& b) {
  if (a.dim != b.dim) throw std::invalid_argument("minkowski_sum: dimension mismatch");
  ConeUnion sa = ensure_synced(a), sb = ensure_synced(b);
  ConeUnion out;
  out.dim = a.dim;
  for (const auto& ba : sa.branches)
    for (const auto& bb : sb.branches) {
      std::vector<VectorXd> gens = ba.generators;
      gens.insert(gens.end(), bb.generators.begin(), bb.generators.end());
      std::vector<VectorXd> lins = ba.lineality;
      lins.insert(lins.end(), bb.lineality.begin(), bb.lineality.end());
      ConvexCone s = ConvexCone::from_generators(a.dim, std::move(gens), std::move(lins));
      out.branches.push_back(dd_convert(s, Direction::VtoH));
    }
  return canonicalize(out);
}

ConeUnion intersect(const ConeUnion& a, const ConeUnion& b) {
  if (a.dim != b.dim) throw std::invalid_argument("intersect: dimension mismatch");
  ConeUnion sa = ensure_synced(a), sb = ensure_synced(b);
  ConeUnion out;
  out.dim = a.dim;
  for (const auto& ba : sa.branches)
    for (const auto& bb : sb.branches) {
      std::vector<VectorXd> ineqs = ba.ineq_normals;
      ineqs.insert(ineqs.end(), bb.ineq_normals.begin(), bb.ineq_normals.end());
      std::vector<VectorXd> eqs = ba.eq_normals;
      eqs.insert(eqs.end(), bb.eq_normals.begin(), bb.eq_normals.end());
      ConvexCone s = ConvexCone::from_halfspaces(a.dim, std::move(ineqs), std::move(eqs));
      out.branches.push_back(dd_convert(s, Direction::HtoV));
    }
  return canonicalize(out);
}

bool contains(const ConeUnion& c, const VectorXd& v, double tol) {
  for (const auto& b : c.branches) {
    if (b.has_hrep) {
      if (b.contains(v, tol)) return true;
    } else if (ensure_synced(b).contains(v, tol)) {
      return true;
    }
  }
  return false;
}

namespace {

// Relative-interior witness of a finitely generated cone: the sum of its
// generators (the lineality component stays zero).
VectorXd relint_witness(const ConvexCone& c) {
  VectorXd w = VectorXd::Zero(c.dim);
  for (const auto& g : c.generators) w += g;
  return w;
}

struct CoverSearch {
  const std::vector<ConvexCone>& targets;
  std::vector<VectorXd> cut_normals;  // candidate splitting hyperplanes
  int nodes = 0;
  int max_nodes;

  bool covered(const ConvexCone& piece) {
    if (++nodes > max_nodes)
      throw InconclusiveCover("subset_eq: cover search exceeded node cap");
    if (is_zero_cone(piece)) return !targets.empty();
    for (const auto& t : targets)
      if (branch_subset_convex(piece, t)) return true;
    // Find a hyperplane properly cutting the piece.
    for (const auto& h : cut_normals) {
      bool strictly_pos = false, strictly_neg = false;
      auto probe = [&](const VectorXd& v) {
        double s = h.dot(v);
        if (s > kRepEqTol) strictly_pos = true;
        if (s < -kRepEqTol) strictly_neg = true;
      };
      for (const auto& g : piece.generators) probe(g);
      for (const auto& l : piece.lineality) {
        probe(l);
        probe(VectorXd(-l));
      }
      if (strictly_pos && strictly_neg) {
        ConvexCone minus = piece, plus = piece;
        minus.ineq_normals.push_back(h);
        minus.has_vrep = false;
        minus.reps_synced = false;
        plus.ineq_normals.push_back(VectorXd(-h));
        plus.has_vrep = false;
        plus.reps_synced = false;
        return covered(dd_convert(minus, Direction::HtoV)) &&
               covered(dd_convert(plus, Direction::HtoV));
      }
    }
    // No target branch contains the piece and no hyperplane separates it
    // further: its relative interior misses every target branch.
    return false;
  }
};

}  // namespace

bool subset_of(const ConeUnion& a, const ConeUnion& b, const SubsetOptions& opts) {
  if (a.dim != b.dim) throw std::invalid_argument("subset_eq: dimension mismatch");
  ConeUnion sa = ensure_synced(a), sb = ensure_synced(b);
  for (const auto& piece : sa.branches) {
    if (is_zero_cone(piece)) continue;
    bool inside_single = false;
    for (const auto& t : sb.branches)
      if (branch_subset_convex(piece, t)) {
        inside_single = true;
        break;
      }
    if (inside_single) continue;
    // Generators split across target branches (or stick out entirely).
    bool all_members = true;
    for (const auto& g : piece.generators)
      if (!contains(sb, g, kRepEqTol)) {
        all_members = false;
        break;
      }
    if (all_members)
      for (const auto& l : piece.lineality)
        if (!contains(sb, l, kRepEqTol) || !contains(sb, VectorXd(-l), kRepEqTol)) {
          all_members = false;
          break;
        }
    if (!all_members) return false;
    if (!opts.allow_cover_split)
      throw InconclusiveCover(
          "subset_eq: generators split across branches and the cover check is disabled");
    CoverSearch search{sb.branches, {}, 0, opts.max_cover_nodes};
    for (const auto& t : sb.branches) {
      for (const auto& h : t.ineq_normals) search.cut_normals.push_back(h);
      for (const auto& e : t.eq_normals) search.cut_normals.push_back(e);
    }
    if (!search.covered(piece)) return false;
  }
  return true;
}

SetRelation subset_eq(const ConeUnion& a, const ConeUnion& b, const SubsetOptions& opts) {
  bool fwd = subset_of(a, b, opts);
  if (!fwd) return SetRelation::Neither;
  bool bwd = subset_of(b, a, opts);
  return bwd ? SetRelation::Equal : SetRelation::Subset;
}

bool equal(const ConeUnion& a, const ConeUnion& b) {
  return subset_eq(a, b) == SetRelation::Equal;
}

bool equal(const ConvexCone& a, const ConvexCone& b) {
  return equal(ConeUnion(a), ConeUnion(b));
}

ConeUnion project_cone(const ConeUnion& c, const std::vector<int>& coords) {
  ConeUnion synced = ensure_synced(c);
  int m = static_cast<int>(coords.size());
  for (int k : coords)
    if (k < 0 || k >= c.dim) throw std::invalid_argument("project_cone: coordinate out of range");
  ConeUnion out;
  out.dim = m;
  for (const auto& b : synced.branches) {
    std::vector<VectorXd> gens, lins;
    auto take = [&](const VectorXd& v) {
      VectorXd w(m);
      for (int i = 0; i < m; ++i) w[i] = v[coords[i]];
      return w;
    };
    for (const auto& g : b.generators) {
      VectorXd w = take(g);
      if (!near_zero(w, 1e-9)) gens.push_back(w);
    }
    for (const auto& l : b.lineality) {
      VectorXd w = take(l);
      if (!near_zero(w, 1e-9)) lins.push_back(w);
    }
    ConvexCone p = ConvexCone::from_generators(m, std::move(gens), std::move(lins));
    out.branches.push_back(dd_convert(p, Direction::VtoH));
  }
  return canonicalize(out);
}

ConeUnion slice_zero(const ConeUnion& c, const std::vector<int>& coords) {
  ConeUnion synced = ensure_synced(c);
  std::vector<bool> drop(c.dim, false);
  for (int k : coords) {
    if (k < 0 || k >= c.dim) throw std::invalid_argument("slice_zero: coordinate out of range");
    drop[k] = true;
  }
  std::vector<int> keep;
  for (int i = 0; i < c.dim; ++i)
    if (!drop[i]) keep.push_back(i);
  ConeUnion sliced;
  sliced.dim = c.dim;
  for (const auto& b : synced.branches) {
    ConvexCone s = b;
    for (int k : coords) {
      VectorXd e = VectorXd::Zero(c.dim);
      e[k] = 1.0;
      s.eq_normals.push_back(e);
    }
    s.has_vrep = false;
    s.reps_synced = false;
    sliced.branches.push_back(dd_convert(s, Direction::HtoV));
  }
  return project_cone(sliced, keep);
}

double distance_to_union(const VectorXd& v, const ConeUnion& c, int max_generators) {
  ConeUnion synced = ensure_synced(c);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& b : synced.branches) {
    int g = static_cast<int>(b.generators.size());
    if (g > max_generators)
      throw std::invalid_argument("distance_to_union: too many generators for face enumeration");
    int l = static_cast<int>(b.lineality.size());
    for (uint64_t mask = 0; mask < (uint64_t(1) << g); ++mask) {
      int cols = static_cast<int>(__builtin_popcountll(mask)) + l;
      VectorXd p;
      if (cols == 0) {
        p = VectorXd::Zero(b.dim);
      } else {
        MatrixXd span(b.dim, cols);
        int c0 = 0;
        for (int i = 0; i < g; ++i)
          if (mask & (uint64_t(1) << i)) span.col(c0++) = b.generators[i];
        for (int i = 0; i < l; ++i) span.col(c0++) = b.lineality[i];
        VectorXd coef = span.completeOrthogonalDecomposition().solve(v);
        p = span * coef;
      }
      if (!b.contains(p, 1e-8)) continue;
      best = std::min(best, (v - p).norm());
    }
  }
  return best;
}

std::vector<VectorXd> polytope_vertices(const MatrixXd& A, const VectorXd& a,
                                        const MatrixXd& B, const VectorXd& b) {
  int n = static_cast<int>(A.cols() > 0 ? A.cols() : B.cols());
  std::vector<VectorXd> ineqs, eqs;
  for (int i = 0; i < A.rows(); ++i) {
    VectorXd row(n + 1);
    row.head(n) = A.row(i);
    row[n] = -a[i];
    ineqs.push_back(row);
  }
  for (int i = 0; i < B.rows(); ++i) {
    VectorXd row(n + 1);
    row.head(n) = B.row(i);
    row[n] = -b[i];
    eqs.push_back(row);
  }
  VectorXd tpos = VectorXd::Zero(n + 1);
  tpos[n] = -1.0;  // -t <= 0
  ineqs.push_back(tpos);
  ConvexCone homog = ConvexCone::from_halfspaces(n + 1, std::move(ineqs), std::move(eqs));
  ConvexCone v = dd_convert(homog, Direction::HtoV);
  std::vector<VectorXd> verts;
  for (const auto& g : v.generators) {
    if (g[n] <= 1e-9)
      throw NumericallyDegenerate("polytope_vertices: unbounded polyhedron");
    VectorXd x = g.head(n) / g[n];
    bool dup = false;
    for (const auto& o : verts)
      if ((o - x).norm() <= 1e-7 * (1.0 + x.norm())) {
        dup = true;
        break;
      }
    if (!dup) verts.push_back(x);
  }
  for (const auto& l : v.lineality)
    if (std::abs(l[n]) > 1e-9)
      throw NumericallyDegenerate("polytope_vertices: degenerate homogenization");
  return verts;
}

namespace {

void format_rows(std::ostringstream& os, const char* name, const std::vector<VectorXd>& rows) {
  if (rows.empty()) return;
  os << name << '\n';
  char buf[64];
  for (const auto& r : rows) {
    for (int i = 0; i < r.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", r[i]);
      os << (i ? " " : "") << buf;
    }
    os << '\n';
  }
}

}  // namespace

std::string format_cone(const ConeUnion& u) {
  ConeUnion synced = ensure_synced(u);
  std::ostringstream os;
  os << "DIM " << synced.dim << '\n';
  for (const auto& b : synced.branches) {
    os << "BRANCH\n";
    format_rows(os, "GEN", b.generators);
    format_rows(os, "LIN", b.lineality);
    format_rows(os, "INEQ", b.ineq_normals);
    format_rows(os, "EQ", b.eq_normals);
  }
  return os.str();
}

std::string format_cone(const ConvexCone& c) { return format_cone(ConeUnion(c)); }

ConeUnion parse_cone(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  ConeUnion out;
  out.dim = -1;
  ConvexCone* cur = nullptr;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "DIM") {
      if (!(ls >> out.dim) || out.dim <= 0)
        throw ParseError("cone literal line " + std::to_string(lineno) + ": bad DIM");
      continue;
    }
    if (tok == "BRANCH") {
      if (out.dim <= 0) throw ParseError("cone literal: DIM must precede BRANCH");
      out.branches.emplace_back();
      cur = &out.branches.back();
      cur->dim = out.dim;
      section.clear();
      continue;
    }
    if (tok == "GEN" || tok == "LIN" || tok == "INEQ" || tok == "EQ") {
      if (!cur) throw ParseError("cone literal: section before BRANCH");
      section = tok;
      continue;
    }
    if (!cur || section.empty())
      throw ParseError("cone literal line " + std::to_string(lineno) + ": unexpected data");
    VectorXd v(out.dim);
    std::istringstream vs(line);
    for (int i = 0; i < out.dim; ++i)
      if (!(vs >> v[i]))
        throw ParseError("cone literal line " + std::to_string(lineno) + ": expected " +
                         std::to_string(out.dim) + " numbers");
    double extra;
    if (vs >> extra)
      throw ParseError("cone literal line " + std::to_string(lineno) + ": too many numbers");
    if (section == "GEN")
      cur->generators.push_back(v);
    else if (section == "LIN")
      cur->lineality.push_back(v);
    else if (section == "INEQ")
      cur->ineq_normals.push_back(v);
    else
      cur->eq_normals.push_back(v);
  }
  if (out.dim <= 0) throw ParseError("cone literal: missing DIM");
  if (out.branches.empty()) throw ParseError("cone literal: no BRANCH blocks");
  for (auto& b : out.branches) {
    b.has_vrep = !b.generators.empty() || !b.lineality.empty();
    b.has_hrep = !b.ineq_normals.empty() || !b.eq_normals.empty();
    if (!b.has_vrep && !b.has_hrep) {
      b.has_hrep = true;  // empty H-rep encodes the full space
    } else if (b.has_vrep && b.has_hrep) {
      for (const auto& g : b.generators)
        if (!b.contains(g, kMembershipTol))
          throw ParseError("cone literal: generator violates H-constraints");
      for (const auto& l : b.lineality)
        if (!b.contains(l, kMembershipTol) || !b.contains(VectorXd(-l), kMembershipTol))
          throw ParseError("cone literal: lineality vector violates H-constraints");
      b.reps_synced = true;
    }
  }
  return out;
}

}  // namespace disjopt::polycone
