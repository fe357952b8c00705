#include "dbar/cauchy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dbar/errors.hpp"
#include "dbar/kernels.hpp"

namespace dbar {

namespace {

constexpr cplx kTwoPiI{0.0, 2.0 * kPi};

// Rejects points on the curve or outside the domain. Far points use the
// discrete winding number carried by the kernel sum; near points use the
// polyline test.
void check_interior(const BoundaryCurve& curve, cplx z, const kernels::CauchySums& s) {
  if (!(s.min_distance > 0.0)) throw GeometryError("Cauchy integral evaluated on the curve");
  if (s.min_distance >= 2.0 * curve.max_weight()) {
    const long wn = std::lround((s.kernel / kTwoPiI).real());
    if (wn != 1) throw GeometryError("point outside the domain (winding number " + std::to_string(wn) + ")");
  } else if (!contains(curve, z)) {
    throw GeometryError("point outside the domain");
  }
}

}  // namespace

HolomorphicEvaluator::HolomorphicEvaluator(BoundaryFunction density,
                                           std::optional<BoundaryFunction> derivative_density,
                                           EvaluationRule rule)
    : density_(std::move(density)), derivative_density_(std::move(derivative_density)), rule_(rule) {
  if (derivative_density_ && derivative_density_->curve_ptr() != density_.curve_ptr()) {
    throw InvalidArgument("derivative density lives on a different curve");
  }
  const auto& c = density_.curve();
  tw_.resize(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) tw_[j] = c.tangents()[j] * c.weights()[j];
}

std::vector<cplx> HolomorphicEvaluator::evaluate(std::span<const cplx> points) const {
  const auto& c = curve();
  const auto sums = kernels::cauchy_sums(c.nodes(), tw_, density_.values(), points);
  std::vector<cplx> out(points.size());
  for (std::size_t t = 0; t < points.size(); ++t) {
    check_interior(c, points[t], sums[t]);
    out[t] = rule_ == EvaluationRule::subtracted ? sums[t].weighted / sums[t].kernel
                                                           : sums[t].weighted / kTwoPiI;
  }
  return out;
}

cplx HolomorphicEvaluator::operator()(cplx z) const {
  const cplx p[1] = {z};
  return evaluate(p)[0];
}

std::vector<cplx> HolomorphicEvaluator::derivative(std::span<const cplx> points) const {
  if (derivative_density_) return derivative_evaluator().evaluate(points);
  const auto& c = curve();
  const auto sums = kernels::cauchy_sums(c.nodes(), tw_, density_.values(), points);
  std::vector<cplx> shift(points.size(), 0.0);
  std::vector<char> near(points.size(), 0);  // subtracted rule per point
  for (std::size_t t = 0; t < points.size(); ++t) {
    check_interior(c, points[t], sums[t]);
    near[t] = rule_ == EvaluationRule::subtracted;
    if (near[t]) shift[t] = sums[t].weighted / sums[t].kernel;
  }
  const auto d = kernels::cauchy_derivative_sums(c.nodes(), tw_, density_.values(), points, shift);
  std::vector<cplx> out(points.size());
  for (std::size_t t = 0; t < points.size(); ++t) {
    out[t] = near[t] ? d[t] / sums[t].kernel : d[t] / kTwoPiI;
  }
  return out;
}

cplx HolomorphicEvaluator::derivative(cplx z) const {
  const cplx p[1] = {z};
  return derivative(std::span<const cplx>(p))[0];
}

HolomorphicEvaluator HolomorphicEvaluator::derivative_evaluator() const {
  if (!derivative_density_) throw InvalidArgument("evaluator has no derivative density");
  return HolomorphicEvaluator(*derivative_density_, std::nullopt, rule_);
}

double HolomorphicEvaluator::dbar_residual(cplx z) const {
  const double h = 1e-5 * curve().diameter();
  const cplx pts[5] = {z, z + h, z - h, z + I * h, z - I * h};
  const auto v = evaluate(pts);
  const cplx fx = (v[1] - v[2]) / (2.0 * h);
  const cplx fy = (v[3] - v[4]) / (2.0 * h);
  const double dbar = std::abs(0.5 * (fx + I * fy));
  const double d = std::abs(0.5 * (fx - I * fy));
  const double scale = std::max(d, std::abs(v[0]));
  if (dbar == 0.0) return 0.0;
  return scale > 0.0 ? dbar / scale : dbar;
}

cplx cauchy_interior(const BoundaryFunction& f, cplx z) { return HolomorphicEvaluator(f)(z); }

TraceMethod default_trace_method(const BoundaryCurve& curve) {
  if (curve.is_smooth()) return PvSubtraction{};
  return OffsetExtrapolation{ConeConfig::grid_scaled(curve, kTraceDepthMultiples), 2};
}

std::string trace_method_label(const TraceMethod& method) {
  if (std::holds_alternative<PvSubtraction>(method)) return "pv_subtraction";
  const auto& m = std::get<OffsetExtrapolation>(method);
  std::ostringstream os;
  os.precision(6);
  os << "offset_extrapolation(order=" << m.order << ";depths=";
  for (std::size_t k = 0; k < m.cone.depths.size(); ++k) os << (k ? "," : "") << m.cone.depths[k];
  os << ")";
  return os.str();
}

cplx extrapolate_to_zero(std::span<const double> x, std::span<const cplx> y) {
  std::vector<cplx> p(y.begin(), y.end());
  const std::size_t n = p.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      // Neville: P_{i..i+level}(0)
      p[i] = (x[i + level] * p[i] - x[i] * p[i + 1]) / (x[i + level] - x[i]);
    }
  }
  return p[0];
}

namespace {

BoundaryFunction pv_trace(const BoundaryFunction& f) {
  const auto& c = f.curve();
  if (!c.is_smooth()) {
    throw InvalidArgument("pv_subtraction trace requires a smooth curve; use offset extrapolation on polygons");
  }
  std::vector<cplx> tw(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) tw[j] = c.tangents()[j] * c.weights()[j];
  const auto sums = kernels::plemelj_sums(c.nodes(), tw, f.values());
  const auto df = tangential_derivative(f);
  std::vector<cplx> out(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    out[k] = f[k] + (sums[k] + df[k] * c.weights()[k]) / kTwoPiI;
  }
  return BoundaryFunction(f.curve_ptr(), std::move(out));
}

BoundaryFunction offset_trace(const HolomorphicEvaluator& F, const OffsetExtrapolation& m) {
  const auto& c = F.curve();
  if (m.order < 1 || m.order > 2) throw InvalidArgument("Richardson order must be 1 or 2");
  m.cone.validate();
  const std::size_t used = static_cast<std::size_t>(m.order) + 1;
  const std::size_t first = m.cone.depths.size() - used;
  std::vector<double> depths(m.cone.depths.begin() + static_cast<long>(first), m.cone.depths.end());
  std::vector<cplx> points;
  points.reserve(c.size() * used);
  for (std::size_t k = 0; k < c.size(); ++k) {
    const auto offs = interior_offsets(c, k, m.cone);
    points.insert(points.end(), offs.begin() + static_cast<long>(first), offs.end());
  }
  const auto vals = F.evaluate(points);
  std::vector<cplx> out(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    out[k] = extrapolate_to_zero(depths, std::span(vals).subspan(k * used, used));
  }
  return BoundaryFunction(F.density().curve_ptr(), std::move(out));
}

}  // namespace

BoundaryFunction cauchy_trace(const BoundaryFunction& f, const TraceMethod& method) {
  if (std::holds_alternative<PvSubtraction>(method)) return pv_trace(f);
  return offset_trace(HolomorphicEvaluator(f), std::get<OffsetExtrapolation>(method));
}

BoundaryFunction evaluator_trace(const HolomorphicEvaluator& F, const TraceMethod& method) {
  if (std::holds_alternative<PvSubtraction>(method)) return pv_trace(F.density());
  return offset_trace(F, std::get<OffsetExtrapolation>(method));
}

NontangentialMaximal ntm_estimate(const HolomorphicEvaluator& F, const ConeConfig& cfg,
                                  const BoundaryFunction* trace) {
  const auto& c = F.curve();
  cfg.validate();
  const cplx rot_plus = std::polar(1.0, cfg.aperture);
  const cplx rot_minus = std::polar(1.0, -cfg.aperture);
  std::vector<cplx> points;
  std::vector<std::size_t> owner;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const auto axis = interior_offsets(c, k, cfg);
    for (std::size_t d = 0; d < axis.size(); ++d) {
      points.push_back(axis[d]);
      owner.push_back(k);
      const cplx dir = c.inward()[k] * cfg.depths[d];
      for (const cplx side : {c.nodes()[k] + dir * rot_plus, c.nodes()[k] + dir * rot_minus}) {
        if (contains(c, side)) {
          points.push_back(side);
          owner.push_back(k);
        }
      }
    }
  }
  const auto vals = F.evaluate(points);
  std::vector<cplx> maxima(c.size(), 0.0);
  for (std::size_t t = 0; t < points.size(); ++t) {
    maxima[owner[t]] = std::max(maxima[owner[t]].real(), std::abs(vals[t]));
  }
  if (trace) {
    if (trace->curve_ptr() != F.density().curve_ptr()) throw InvalidArgument("trace on a different curve");
    for (std::size_t k = 0; k < c.size(); ++k) {
      maxima[k] = std::max(maxima[k].real(), std::abs((*trace)[k]));
    }
  }
  return {BoundaryFunction(F.density().curve_ptr(), std::move(maxima)), points.size()};
}

}  // namespace dbar
