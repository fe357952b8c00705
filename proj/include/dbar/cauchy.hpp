#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dbar/boundary_fn.hpp"
#include "dbar/geometry.hpp"

namespace dbar {

/// How interior sums are formed.
///
/// plain:       (1/2 pi i) sum_j f_j T_j w_j / (zeta_j - z).
/// subtracted:  sum_j f_j k_j / sum_j k_j with k_j = T_j w_j / (zeta_j - z), i.e.
///              (1/2 pi i) sum_j (f_j - F(z)) k_j = 0. Uses C(1) = 1 and stays
///              accurate up to the curve for holomorphic data. On polygons it
///              also cancels most of the corner quadrature error far from the
///              curve, so it is the default everywhere.
enum class EvaluationRule { plain, subtracted };

/// Holomorphic function on the domain given as the Cauchy integral of a
/// boundary density, optionally with a density for its derivative.
class HolomorphicEvaluator {
public:
  explicit HolomorphicEvaluator(BoundaryFunction density,
                                std::optional<BoundaryFunction> derivative_density = std::nullopt,
                                EvaluationRule rule = EvaluationRule::subtracted);

  const BoundaryCurve& curve() const noexcept { return density_.curve(); }
  const BoundaryFunction& density() const noexcept { return density_; }
  EvaluationRule rule() const noexcept { return rule_; }

  /// Throws GeometryError for points on the curve or outside the domain.
  cplx operator()(cplx z) const;
  std::vector<cplx> evaluate(std::span<const cplx> points) const;

  /// F'(z): Cauchy integral of the derivative density when one is attached,
  /// otherwise the differentiated kernel (subtracted form near the curve).
  cplx derivative(cplx z) const;
  std::vector<cplx> derivative(std::span<const cplx> points) const;

  bool has_derivative_density() const noexcept { return derivative_density_.has_value(); }
  /// Evaluator for F'. Throws InvalidArgument when no derivative density is attached.
  HolomorphicEvaluator derivative_evaluator() const;

  /// |dF/dzbar| / max(|dF/dz|, |F|) from centred differences with step 1e-5 * diam.
  double dbar_residual(cplx z) const;

private:
  BoundaryFunction density_;
  std::optional<BoundaryFunction> derivative_density_;
  EvaluationRule rule_;
  std::vector<cplx> tw_;
};

/// Point value of the Cauchy integral of f.
cplx cauchy_interior(const BoundaryFunction& f, cplx z);

/// Evaluate at interior offsets and extrapolate to the boundary with a
/// polynomial in the depth of degree `order` through the `order + 1`
/// shallowest depths.
struct OffsetExtrapolation {
  ConeConfig cone;
  int order = 1;
};

/// Interior Plemelj limit f_k + (1/2 pi i) integral (f - f_k) / (zeta - zeta_k) dzeta,
/// with the diagonal term replaced by its limit (df/ds)_k w_k. Smooth curves only.
struct PvSubtraction {};

using TraceMethod = std::variant<OffsetExtrapolation, PvSubtraction>;

/// "pv_subtraction" or "offset_extrapolation(order=K;depths=e1,e2,...)".
std::string trace_method_label(const TraceMethod& method);

/// Depth multiples (of max_j w_j) used by the default polygon trace.
inline const std::vector<double> kTraceDepthMultiples{1.0, 0.5, 0.25};

/// PvSubtraction on smooth curves, second-order offset extrapolation on polygons.
TraceMethod default_trace_method(const BoundaryCurve& curve);

/// Non-tangential boundary values of the Cauchy integral of f.
BoundaryFunction cauchy_trace(const BoundaryFunction& f, const TraceMethod& method);

/// Non-tangential boundary values of an evaluator (offset extrapolation only,
/// or pv on its density when the method is PvSubtraction).
BoundaryFunction evaluator_trace(const HolomorphicEvaluator& F, const TraceMethod& method);

struct NontangentialMaximal {
  BoundaryFunction values;  ///< sampled max |F| per node
  std::size_t samples = 0;  ///< total number of interior samples used
};

/// Sampled F*: per node, max |F| over the cone axis points and the two
/// aperture rays at every depth (exterior samples skipped). When `trace` is
/// given its node value joins the sample set, so |trace| <= F* pointwise.
NontangentialMaximal ntm_estimate(const HolomorphicEvaluator& F, const ConeConfig& cfg,
                                  const BoundaryFunction* trace = nullptr);

/// Neville extrapolation of samples (x_k, y_k) to x = 0.
cplx extrapolate_to_zero(std::span<const double> x, std::span<const cplx> y);

}  // namespace dbar
