#pragma once

// Exact calculus for finitely generated convex cones and finite unions of
// such cones in low dimension. Cones carry a dual representation:
//   V-rep: cone(generators) + span(lineality)
//   H-rep: { v : a.v <= 0 for a in ineq_normals, b.v = 0 for b in eq_normals }
// Conversions run a classic incremental double-description pass; all other
// operations (polarity, sums, intersections, coordinate projections, slices,
// membership, inclusion) reduce to representation juggling on top of it.

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace disjopt::polycone {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Membership checks against H-constraints (unit normals).
inline constexpr double kMembershipTol = 1e-9;
// Representation equality (subset_eq, canonical hashing).
inline constexpr double kRepEqTol = 1e-7;
// Hard cap for the double-description pass.
inline constexpr int kMaxDim = 12;

struct DimensionTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericallyDegenerate : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InconclusiveCover : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConvexCone {
  int dim = 0;
  std::vector<VectorXd> generators;    // extreme rays (V-rep)
  std::vector<VectorXd> lineality;     // basis of the lineality space
  std::vector<VectorXd> ineq_normals;  // a.v <= 0
  std::vector<VectorXd> eq_normals;    // b.v = 0
  bool has_vrep = false;
  bool has_hrep = false;
  bool reps_synced = false;

  static ConvexCone from_generators(int dim, std::vector<VectorXd> gens,
                                    std::vector<VectorXd> lins = {});
  static ConvexCone from_halfspaces(int dim, std::vector<VectorXd> ineqs,
                                    std::vector<VectorXd> eqs = {});
  static ConvexCone full_space(int dim);
  static ConvexCone zero(int dim);

  bool contains(const VectorXd& v, double tol = kMembershipTol) const;
};

enum class Direction { HtoV, VtoH };

// Populates the missing representation; result has reps_synced set.
ConvexCone dd_convert(const ConvexCone& cone, Direction direction);
// Converts whichever representation is missing (no-op when synced).
ConvexCone ensure_synced(const ConvexCone& cone);

struct ConeUnion {
  int dim = 0;
  std::vector<ConvexCone> branches;

  ConeUnion() = default;
  explicit ConeUnion(ConvexCone c) : dim(c.dim) { branches.push_back(std::move(c)); }
  ConeUnion(int dim, std::vector<ConvexCone> b) : dim(dim), branches(std::move(b)) {}

  static ConeUnion full_space(int dim) { return ConeUnion(ConvexCone::full_space(dim)); }
  static ConeUnion zero(int dim) { return ConeUnion(ConvexCone::zero(dim)); }
};

ConeUnion ensure_synced(const ConeUnion& u);

// Drops duplicate and nested branches (normalized-generator hashing plus a
// pairwise absorption pass).
ConeUnion canonicalize(const ConeUnion& u);

// Polar cone { zeta : zeta.w <= 0 for all w in c }; always convex.
ConvexCone polar(const ConeUnion& c);
ConvexCone polar(const ConvexCone& c);

ConeUnion minkowski_sum(const ConeUnion& a, const ConeUnion& b);
ConeUnion intersect(const ConeUnion& a, const ConeUnion& b);

bool contains(const ConeUnion& c, const VectorXd& v, double tol = kMembershipTol);

enum class SetRelation { Subset, Equal, Neither };

struct SubsetOptions {
  // When false, inclusion queries whose generators split across target
  // branches raise InconclusiveCover instead of running the exact cover
  // search.
  bool allow_cover_split = true;
  // Node cap for the cover search.
  int max_cover_nodes = 200000;
};

// Whether every point of `a` lies in the union `b` (exact for finitely
// generated cones).
bool subset_of(const ConeUnion& a, const ConeUnion& b, const SubsetOptions& opts = {});
SetRelation subset_eq(const ConeUnion& a, const ConeUnion& b, const SubsetOptions& opts = {});
bool equal(const ConeUnion& a, const ConeUnion& b);
bool equal(const ConvexCone& a, const ConvexCone& b);

// Image under the coordinate projection keeping `coords` (0-based, in order).
ConeUnion project_cone(const ConeUnion& c, const std::vector<int>& coords);
// Intersect with { v : v_i = 0, i in coords }, then drop those coordinates.
ConeUnion slice_zero(const ConeUnion& c, const std::vector<int>& coords);

// Euclidean distance from v to the union; exact via face enumeration, meant
// for small generator counts (diagnostics and tests).
double distance_to_union(const VectorXd& v, const ConeUnion& c, int max_generators = 18);

// Vertices of the polytope { x : A x <= a, B x = b } via homogenization.
// Throws NumericallyDegenerate when a recession direction shows up.
std::vector<VectorXd> polytope_vertices(const MatrixXd& A, const VectorXd& a,
                                        const MatrixXd& B, const VectorXd& b);

// Plain-text literal: DIM header, then BRANCH blocks with GEN/LIN/INEQ/EQ
// sections, one vector per line.
std::string format_cone(const ConeUnion& u);
std::string format_cone(const ConvexCone& c);
ConeUnion parse_cone(const std::string& text);

}  // namespace disjopt::polycone
