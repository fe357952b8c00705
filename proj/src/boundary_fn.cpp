#include "dbar/boundary_fn.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "dbar/errors.hpp"
#include "dbar/kernels.hpp"
#include "dbar/numerics.hpp"

namespace dbar {

BoundaryFunction::BoundaryFunction(CurvePtr curve, std::vector<cplx> values)
    : curve_(std::move(curve)), values_(std::move(values)) {
  if (!curve_) throw InvalidArgument("boundary function needs a curve");
  if (values_.size() != curve_->size()) {
    throw InvalidArgument("boundary function has " + std::to_string(values_.size()) +
                          " values for " + std::to_string(curve_->size()) + " nodes");
  }
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw InvalidArgument("boundary function values must be finite");
    }
  }
}

BoundaryFunction::BoundaryFunction(CurvePtr curve)
    : BoundaryFunction(curve, std::vector<cplx>(curve ? curve->size() : 0, 0.0)) {}

BoundaryFunction BoundaryFunction::sample(CurvePtr curve,
                                          const std::function<cplx(cplx, cplx)>& fn) {
  std::vector<cplx> v(curve->size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = fn(curve->nodes()[j], curve->tangents()[j]);
  return BoundaryFunction(std::move(curve), std::move(v));
}

BoundaryFunction BoundaryFunction::constant(CurvePtr curve, cplx c) {
  std::vector<cplx> v(curve->size(), c);
  return BoundaryFunction(std::move(curve), std::move(v));
}

void BoundaryFunction::require_same_curve(const BoundaryFunction& other) const {
  if (curve_ != other.curve_) throw InvalidArgument("boundary functions live on different curves");
}

BoundaryFunction& BoundaryFunction::operator+=(const BoundaryFunction& other) {
  require_same_curve(other);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
  return *this;
}

BoundaryFunction& BoundaryFunction::operator-=(const BoundaryFunction& other) {
  require_same_curve(other);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= other.values_[j];
  return *this;
}

BoundaryFunction& BoundaryFunction::operator*=(const BoundaryFunction& other) {
  require_same_curve(other);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] *= other.values_[j];
  return *this;
}

BoundaryFunction& BoundaryFunction::operator*=(cplx scale) {
  for (auto& v : values_) v *= scale;
  return *this;
}

BoundaryFunction& BoundaryFunction::operator+=(cplx shift) {
  for (auto& v : values_) v += shift;
  return *this;
}

BoundaryFunction BoundaryFunction::conj() const {
  BoundaryFunction out = *this;
  for (auto& v : out.values_) v = std::conj(v);
  return out;
}

BoundaryFunction BoundaryFunction::times_tangent(int k) const {
  BoundaryFunction out = *this;
  const auto t = curve_->tangents();
  for (std::size_t j = 0; j < values_.size(); ++j) {
    out.values_[j] *= (k >= 0 ? t[j] : std::conj(t[j]));
  }
  return out;
}

BoundaryFunction operator+(BoundaryFunction a, const BoundaryFunction& b) { return a += b; }
BoundaryFunction operator-(BoundaryFunction a, const BoundaryFunction& b) { return a -= b; }
BoundaryFunction operator*(BoundaryFunction a, const BoundaryFunction& b) { return a *= b; }
BoundaryFunction operator*(cplx s, BoundaryFunction a) { return a *= s; }
BoundaryFunction operator*(BoundaryFunction a, cplx s) { return a *= s; }

double lp_norm(const BoundaryFunction& f, double p, NodeSet nodes) {
  if (!(p >= 1.0)) throw InvalidArgument("lp_norm: exponent must be >= 1");
  const auto& c = f.curve();
  const auto v = f.values();
  auto included = [&](std::size_t j) { return nodes == NodeSet::all || !c.corner(j); };
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (included(j)) m = std::max(m, std::abs(v[j]));
    }
    return m;
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (!included(j)) continue;
    const double a = std::abs(v[j]);
    sum += (p == 2.0 ? a * a : std::pow(a, p)) * c.weights()[j];
  }
  return p == 2.0 ? std::sqrt(sum) : std::pow(sum, 1.0 / p);
}

cplx boundary_integral(const BoundaryFunction& f, Measure kind) {
  const auto& c = f.curve();
  cplx sum = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const cplx dm = kind == Measure::dzeta ? c.tangents()[j] * c.weights()[j] : cplx(c.weights()[j]);
    sum += f[j] * dm;
  }
  return sum;
}

BoundaryFunction tangential_derivative(const BoundaryFunction& f) {
  const auto& c = f.curve();
  std::vector<cplx> out(f.size());
  if (c.is_smooth()) {
    auto dt = numerics::periodic_derivative(f.values());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = dt[j] / c.speed()[j];
    return BoundaryFunction(f.curve_ptr(), std::move(out));
  }
  const auto v = f.values();
  for (const Side& side : c.sides()) {
    if (side.count < 8) {
      throw InvalidArgument("tangential_derivative: polygon side with " +
                            std::to_string(side.count) + " nodes (need at least 8)");
    }
    const auto& st = numerics::derivative_stencils(side.count);
    for (std::size_t m = 0; m < side.count; ++m) {
      cplx d = 0.0;
      const auto& w = st.weights[m];
      for (std::size_t k = 0; k < w.size(); ++k) d += w[k] * v[side.first + st.start[m] + k];
      out[side.first + m] = d / side.spacing;
    }
  }
  return BoundaryFunction(f.curve_ptr(), std::move(out));
}

ArcPrimitive arc_primitive(const BoundaryCurve& curve, std::span<const cplx> density,
                           cplx beta) {
  if (density.size() != curve.size()) throw InvalidArgument("arc_primitive: size mismatch");
  const std::size_t n = curve.size();
  if (curve.is_smooth()) {
    std::vector<cplx> vt(n);
    for (std::size_t j = 0; j < n; ++j) vt[j] = density[j] * curve.speed()[j];
    auto prim = numerics::quasi_periodic_primitive(vt, beta);
    return ArcPrimitive{std::move(prim.at_nodes), prim.total};
  }

  ArcPrimitive out;
  out.at_nodes.assign(n, 0.0);
  const auto sides = curve.sides();
  auto apply = [&](const std::vector<double>& w, std::size_t first) {
    cplx s = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) s += w[k] * density[first + k];
    return s;
  };
  cplx running = 0.0;
  for (std::size_t si = 0; si < sides.size(); ++si) {
    const Side& side = sides[si];
    const auto& rule = numerics::midpoint_rule(side.count);
    if (si > 0) {
      const Side& prev = sides[si - 1];
      const auto& prule = numerics::midpoint_rule(prev.count);
      running += prev.spacing * apply(prule.tail, prev.first + prev.count - prule.stencil);
      running += side.spacing * apply(rule.head, side.first);
    }
    out.at_nodes[side.first] = running;
    for (std::size_t m = 0; m + 1 < side.count; ++m) {
      running += side.spacing * apply(rule.cell[m], side.first + rule.cell_start[m]);
      out.at_nodes[side.first + m + 1] = running;
    }
  }
  const Side& last = sides.back();
  const auto& lrule = numerics::midpoint_rule(last.count);
  running += last.spacing * apply(lrule.tail, last.first + last.count - lrule.stencil);
  const Side& first = sides.front();
  const cplx twist = std::exp(I * beta * (2.0 * kPi));
  running += twist * first.spacing * apply(numerics::midpoint_rule(first.count).head, first.first);
  out.total = running;
  return out;
}

BoundaryFunction cumulative_primitive(const BoundaryFunction& g, std::size_t base) {
  const auto& c = g.curve();
  if (base >= c.size()) throw InvalidArgument("cumulative_primitive: base index out of range");
  std::vector<cplx> density(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) density[j] = I * g[j];
  const auto prim = arc_primitive(c, density, 0.0);
  std::vector<cplx> h(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    h[j] = prim.at_nodes[j] - prim.at_nodes[base];
    if (j < base) h[j] += prim.total;
  }
  h[base] = 0.0;
  return BoundaryFunction(g.curve_ptr(), std::move(h));
}

double holder_seminorm(const BoundaryFunction& f, double a, std::uint64_t seed) {
  if (!(a > 0.0 && a <= 1.0)) throw InvalidArgument("holder_seminorm: exponent must lie in (0, 1]");
  const auto nodes = f.curve().nodes();
  if (nodes.size() <= kHolderAllPairsLimit) return kernels::holder_max(nodes, f.values(), a);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, nodes.size() - 1);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(kHolderSamplePairs);
  while (pairs.size() < kHolderSamplePairs) {
    const std::size_t i = pick(rng);
    const std::size_t j = pick(rng);
    if (i != j) pairs.emplace_back(i, j);
  }
  return kernels::holder_max_pairs(nodes, f.values(), a, pairs);
}

double w1p_norm(const BoundaryFunction& f, double p) {
  return lp_norm(f, p) + lp_norm(tangential_derivative(f), p);
}

}  // namespace dbar
