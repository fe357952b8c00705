#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dbar/boundary_fn.hpp"
#include "dbar/cauchy.hpp"
#include "dbar/errors.hpp"
#include "dbar/geometry.hpp"

namespace dbar {

enum class ProblemKind { dirichlet, regularity, neumann, robin };

const char* to_string(ProblemKind kind);
/// Accepts dirichlet|regularity|neumann|robin and the membership aliases
/// dirichlet_hp|regularity_h1p|neumann_np|robin_rpb.
ProblemKind parse_problem_kind(const std::string& name);

struct SolveConfig {
  double p = 2.0;
  /// Unset: PvSubtraction on smooth curves, offset extrapolation on polygons.
  std::optional<TraceMethod> trace;
  double tau = 1e-6;
  double delta_c = 1e-8;
  /// Cone for F* sampling. Unset: depths {0.2, 0.1, 0.05} * diameter, scaled
  /// down to 0.9 * reach when deeper.
  std::optional<ConeConfig> cone;
  /// Corner-adjacent polygon nodes are left out of residual norms.
  NodeSet residual_nodes = NodeSet::skip_corners;

  void validate() const;
  TraceMethod trace_for(const BoundaryCurve& curve) const;
  ConeConfig cone_for(const BoundaryCurve& curve) const;
};

/// Robin coefficient b with its arc primitive B_j = integral of b over the
/// positive arc from node 0 to node j.
class RobinCoefficient {
public:
  explicit RobinCoefficient(BoundaryFunction b);

  const BoundaryFunction& b() const noexcept { return b_; }
  const BoundaryCurve& curve() const noexcept { return b_.curve(); }
  std::span<const cplx> prefix() const noexcept { return prefix_; }
  /// B_tot = integral of b over the whole boundary.
  cplx total() const noexcept { return total_; }
  /// |exp(i B_tot) - 1|, recomputed on every call.
  double margin() const;
  /// exp(||b||_1) / |exp(i B_tot) - 1|.
  double bound_constant() const;

private:
  BoundaryFunction b_;
  std::vector<cplx> prefix_;
  cplx total_;
};

struct CompatibilityInfo {
  std::string condition;  ///< "neumann_mean" or "robin_phase"
  cplx integral;          ///< integral of g or of b
  double value = 0.0;     ///< |integral g| or |exp(i B_tot) - 1|
  double threshold = 0.0;
  bool satisfied = true;
};

struct SolveReport {
  ProblemKind problem = ProblemKind::dirichlet;
  bool accepted = true;
  /// Relative residual that decides the verdict (accepted iff residual <= tau).
  double residual = 0.0;
  double tau = 0.0;
  double p = 2.0;
  std::string domain;
  std::size_t grid_size = 0;
  std::string trace_method;
  /// Named residuals and diagnostics, in insertion order.
  std::vector<std::pair<std::string, double>> checks;
  std::vector<std::pair<std::string, double>> norms;
  std::optional<CompatibilityInfo> compatibility;
  /// Set when the verdict was re-examined on a refined grid.
  std::optional<std::size_t> refined_grid_size;
  double runtime_seconds = 0.0;

  void add_check(std::string name, double value) { checks.emplace_back(std::move(name), value); }
  void add_norm(std::string name, double value) { norms.emplace_back(std::move(name), value); }
  /// Value of a named check or norm; throws InvalidArgument when absent.
  double check(const std::string& name) const;
  double norm(const std::string& name) const;
};

/// Thrown by solve_robin when the transformed data fails membership.
class MembershipRejected : public Error {
public:
  explicit MembershipRejected(SolveReport report);
  const SolveReport& report() const noexcept { return report_; }

private:
  SolveReport report_;
};

struct Solution {
  HolomorphicEvaluator evaluator;
  SolveReport report;
};

/// ||trace(C f) - f||_p / ||f||_p (0 for f = 0).
double dirichlet_residual(const BoundaryFunction& f, const SolveConfig& cfg);

Solution solve_dirichlet(const BoundaryFunction& f, const SolveConfig& cfg = {});
/// Evaluator carries the derivative density conj(T) df/ds.
Solution solve_regularity(const BoundaryFunction& f, const SolveConfig& cfg = {});
/// G_alpha = C h0 - (C h0)(alpha), h0 the primitive of i g from node 0.
/// Throws CompatibilityError when |integral g| > delta_c ||g||_1 L, GeometryError
/// when alpha is not interior.
Solution solve_neumann(const BoundaryFunction& g, cplx alpha, const SolveConfig& cfg = {});

/// Solution h of -i dh/ds + b h = r on the closed curve. Throws CompatibilityError
/// when the margin is below delta_c.
BoundaryFunction robin_transform(const RobinCoefficient& coef, const BoundaryFunction& r,
                                 double delta_c = 1e-8);

/// G = C(robin_transform(coef, r)). Throws CompatibilityError, or
/// MembershipRejected when the transformed data fails the regularity test.
Solution solve_robin(const RobinCoefficient& coef, const BoundaryFunction& r,
                     const SolveConfig& cfg = {});

/// L^{1-1/p}(D) * C(D, b) * ||r||_p, the a priori sup bound on robin_transform.
double robin_sup_bound(const RobinCoefficient& coef, const BoundaryFunction& r, double p);

/// Residual pipeline of the matching solver without building the evaluator.
/// `coef` is required for ProblemKind::robin. Compatibility failures propagate.
SolveReport membership(ProblemKind kind, const BoundaryFunction& data, const SolveConfig& cfg = {},
                       const RobinCoefficient* coef = nullptr);

/// Produces boundary data on a given curve.
using DataSampler = std::function<BoundaryFunction(const CurvePtr&)>;

/// Membership with one refinement: a rejection on the N-node grid is
/// re-examined on 2N nodes and stands only if the residual still exceeds tau.
SolveReport membership_refined(ProblemKind kind, const DomainSpec& domain, const DataSampler& data,
                               const SolveConfig& cfg = {}, const DataSampler& b = {});

}  // namespace dbar
