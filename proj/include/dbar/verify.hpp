#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dbar/boundary_fn.hpp"
#include "dbar/solvers.hpp"

namespace dbar::verify {

/// Closed-form test function with data for all four problems.
///
/// Holomorphic cases generate f = H, g = -i T H', r = -i T H' + b H on the
/// nodes. conj_reject has no holomorphic extension; its data is conj(zeta)
/// for every problem and every membership test is expected to reject it.
struct ManufacturedCase {
  std::string name;
  CurvePtr curve;
  std::function<cplx(cplx)> H;   ///< empty for non-holomorphic cases
  std::function<cplx(cplx)> dH;  ///< empty for non-holomorphic cases
  cplx robin_b = 0.5;            ///< constant Robin coefficient used for robin data
  bool expected_accepted = true;
  /// Documented bound on the interior reconstruction error at N = 512.
  double error_bound = 0.0;

  bool holomorphic() const { return static_cast<bool>(H); }
  BoundaryFunction data(ProblemKind kind) const;
  RobinCoefficient coefficient() const;
  /// Exact interior solution of the problem (Neumann normalized at alpha).
  cplx exact(ProblemKind kind, cplx z, cplx alpha = 0.0) const;
};

/// poly3, exp, rational_pole_out, conj_reject, constant, robin_linear.
const std::vector<std::string>& catalog_names();

/// Builds the case and cross-checks H' against fourth-order differences of H
/// at 10 seeded interior points (relative 1e-8). Throws InvalidArgument for an
/// unknown name and Error when an oracle or a compatibility assertion fails.
ManufacturedCase manufactured_case(const std::string& name, CurvePtr curve);

/// Interior probe points depending only on the domain shape and seed: seeded
/// uniform samples in the bounding box kept when inside and at least
/// 0.05 * diameter from the boundary.
std::vector<cplx> probe_points(const DomainSpec& domain, std::size_t count,
                               std::uint64_t seed = 20240917);

struct ConvergenceTable {
  std::string case_name;
  std::string problem;
  std::string domain;
  std::vector<std::size_t> sizes;
  std::vector<double> interior_error;  ///< max error over the fixed probes
  std::vector<double> trace_residual;  ///< membership residual at each size
  /// orders[i] = log(e_i / e_{i+1}) / log(N_{i+1} / N_i); log2 ratio for doubling.
  std::vector<double> orders;
  /// Errors at or below this level count as converged to round-off.
  double roundoff_floor = 0.0;

  /// Every step decreases the error unless it is already at the round-off floor.
  bool monotone() const;
  std::string to_csv() const;
  /// Two-column "size error" lines for plotting.
  std::string to_dat() const;
};

/// Solves the case's problem on every size and measures the interior error
/// at 20 fixed probes. Sizes must be strictly increasing, at least two.
ConvergenceTable run_convergence(const std::string& case_name, const DomainSpec& domain,
                                 ProblemKind kind, const std::vector<std::size_t>& sizes,
                                 const SolveConfig& cfg = {});

/// ||-i dh/ds + b h - r||_2 / max(||r||_2, eps).
double ode_residual(const RobinCoefficient& coef, const BoundaryFunction& h,
                    const BoundaryFunction& r);

struct NonuniquenessResult {
  double margin = 0.0;
  bool solve_refused = false;
  std::string refusal;
  std::vector<std::pair<cplx, double>> residuals;  ///< (C, ||Robin residual of C z||_2)
};

/// b = -1 on the unit disk: the compatibility margin vanishes, solve_robin
/// refuses, and G = C z with r = 0 satisfies the Robin condition for several C.
NonuniquenessResult nonuniqueness_demo(std::size_t n = 256);

struct EmbeddingProbe {
  std::string case_name;
  std::size_t grid_size = 0;
  double holder_ratio = 0.0;  ///< holder_seminorm(trace, 1 - 1/p) / ||d trace/ds||_p
  double ntm_ratio = 0.0;     ///< ||F*||_p / ||trace||_p
};

EmbeddingProbe embedding_probe(const std::string& case_name, const CurvePtr& curve,
                               const SolveConfig& cfg = {});

}  // namespace dbar::verify
