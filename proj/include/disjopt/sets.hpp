#pragma once

// Structured closed sets with membership, Euclidean projection, and
// tangent / regular-normal / limiting-normal cone oracles. Closed forms for
// the box-cardinality and complementarity sets; a generic union-of-polyhedra
// set with enumeration-based cones.

#include <boost/multiprecision/cpp_int.hpp>
#include <limits>

#include "disjopt/polycone.hpp"

namespace disjopt::sets {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using polycone::ConeUnion;
using polycone::ConvexCone;

using BigInt = boost::multiprecision::cpp_int;

// A coordinate whose entry exceeds this in absolute value counts as nonzero.
inline constexpr double kSparsityTol = 1e-9;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct NotAMember : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EnumerationCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class StructuredSet {
 public:
  virtual ~StructuredSet() = default;
  virtual int dim() const = 0;
  virtual bool member(const VectorXd& point, double tol = kSparsityTol) const = 0;
  virtual bool has_projection() const { return false; }
  virtual VectorXd project(const VectorXd& point) const;
  virtual ConeUnion tangent_cone(const VectorXd& point) const = 0;
  virtual ConeUnion limiting_normal_cone(const VectorXd& point) const = 0;
  ConvexCone regular_normal_cone(const VectorXd& point) const;
};

// { z : ||z||_0 <= kappa, lower <= z <= upper }. Infinite bounds are allowed
// (and are the default lower = 0 / upper = +inf covers the portfolio set;
// lower = -inf, upper = +inf covers the pure sparsity set).
class BoxSparsitySet : public StructuredSet {
 public:
  BoxSparsitySet(int n, int kappa, VectorXd lower, VectorXd upper);
  // Bounds broadcast from scalars.
  BoxSparsitySet(int n, int kappa, double lower = 0.0, double upper = kInf);

  int dim() const override { return n_; }
  int kappa() const { return kappa_; }
  const VectorXd& lower() const { return lower_; }
  const VectorXd& upper() const { return upper_; }

  bool member(const VectorXd& z, double tol = kSparsityTol) const override;
  bool has_projection() const override { return true; }
  VectorXd project(const VectorXd& z) const override;
  ConeUnion tangent_cone(const VectorXd& z) const override;
  ConeUnion limiting_normal_cone(const VectorXd& z) const override;
  BigInt branch_count() const;

 private:
  int n_, kappa_;
  VectorXd lower_, upper_;
};

// { (z, lambda) : 0 <= z <= u, 0 <= lambda <= lambda_upper, z .* lambda = 0 }
// over stacked coordinates (z_1..z_n, lambda_1..lambda_n).
class ComplementaritySet : public StructuredSet {
 public:
  ComplementaritySet(int n, VectorXd z_upper, VectorXd lambda_upper);
  ComplementaritySet(int n, double z_upper = kInf, double lambda_upper = 1.0);

  int dim() const override { return 2 * n_; }
  int pairs() const { return n_; }
  const VectorXd& z_upper() const { return z_upper_; }
  const VectorXd& lambda_upper() const { return lambda_upper_; }

  bool member(const VectorXd& point, double tol = kSparsityTol) const override;
  bool has_projection() const override { return true; }
  VectorXd project(const VectorXd& point) const override;
  std::pair<VectorXd, VectorXd> project_pair(const VectorXd& z, const VectorXd& lam) const;
  ConeUnion tangent_cone(const VectorXd& point) const override;
  ConeUnion limiting_normal_cone(const VectorXd& point) const override;
  BigInt branch_count() const;

 private:
  int n_;
  VectorXd z_upper_, lambda_upper_;
};

// One convex polyhedron { z : A z <= a, B z = b }.
struct PolyBranch {
  MatrixXd A;
  VectorXd a;
  MatrixXd B;
  VectorXd b;
};

class PolyUnionSet : public StructuredSet {
 public:
  PolyUnionSet(int dim, std::vector<PolyBranch> branches);

  int dim() const override { return dim_; }
  const std::vector<PolyBranch>& branches() const { return branches_; }

  bool member(const VectorXd& z, double tol = kSparsityTol) const override;
  ConeUnion tangent_cone(const VectorXd& z) const override;
  // Activity-pattern enumeration; capped at dim <= 6 and <= 10 branches.
  ConeUnion limiting_normal_cone(const VectorXd& z) const override;

 private:
  int dim_;
  std::vector<PolyBranch> branches_;
};

// Image polyhedron K_cc(z) = { lambda : e^T lambda >= n - kappa,
// 0 <= lambda <= e, lambda_i = 0 for i in supp(z) }. Empty iff ||z||_0 > kappa.
struct KccImage {
  int n;
  PolyBranch polyhedron;  // in lambda-space
  bool empty;
};
KccImage kcc_image(const VectorXd& z, int kappa, double tol = kSparsityTol);
std::vector<VectorXd> kcc_image_vertices(const KccImage& image);

// Graph of K_cc as a union of 2^n polyhedra over (z, lambda).
PolyUnionSet kcc_graph_set(int n, int kappa);

// Entrywise max(Gz, 0); a selection of K_vc at feasible points.
VectorXd kvc_selection(const VectorXd& Gz);

// Plain-text fixture format: DIM header, BRANCH blocks of
// "INEQ c1 .. cn <= a0" / "EQ c1 .. cn = b0" rows.
std::string format_poly_union(const PolyUnionSet& set);
PolyUnionSet parse_poly_union(const std::string& text);

}  // namespace disjopt::sets
