#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "dbar/geometry.hpp"

namespace dbar {

/// Sentinel exponent for the sup norm.
inline constexpr double kSupNorm = std::numeric_limits<double>::infinity();

/// Which nodes enter a norm or residual.
enum class NodeSet { all, skip_corners };

/// Complex samples on the nodes of one curve. The curve is shared by identity:
/// binary operations require both operands to live on the same curve object.
class BoundaryFunction {
public:
  BoundaryFunction(CurvePtr curve, std::vector<cplx> values);
  /// Zero function on the curve.
  explicit BoundaryFunction(CurvePtr curve);

  /// Samples fn(zeta_j, T_j).
  static BoundaryFunction sample(CurvePtr curve, const std::function<cplx(cplx, cplx)>& fn);
  static BoundaryFunction constant(CurvePtr curve, cplx c);

  const CurvePtr& curve_ptr() const noexcept { return curve_; }
  const BoundaryCurve& curve() const noexcept { return *curve_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const cplx> values() const noexcept { return values_; }
  cplx operator[](std::size_t j) const { return values_[j]; }

  BoundaryFunction& operator+=(const BoundaryFunction& other);
  BoundaryFunction& operator-=(const BoundaryFunction& other);
  /// Pointwise product.
  BoundaryFunction& operator*=(const BoundaryFunction& other);
  BoundaryFunction& operator*=(cplx scale);
  BoundaryFunction& operator+=(cplx shift);

  BoundaryFunction conj() const;
  /// Multiplies by T_j (k = 1) or conj(T_j) (k = -1).
  BoundaryFunction times_tangent(int k) const;

private:
  void require_same_curve(const BoundaryFunction& other) const;

  CurvePtr curve_;
  std::vector<cplx> values_;
};

BoundaryFunction operator+(BoundaryFunction a, const BoundaryFunction& b);
BoundaryFunction operator-(BoundaryFunction a, const BoundaryFunction& b);
BoundaryFunction operator*(BoundaryFunction a, const BoundaryFunction& b);
BoundaryFunction operator*(cplx s, BoundaryFunction a);
BoundaryFunction operator*(BoundaryFunction a, cplx s);

/// (sum_j |f_j|^p w_j)^(1/p); p = kSupNorm gives max_j |f_j|. Throws for p < 1.
double lp_norm(const BoundaryFunction& f, double p, NodeSet nodes = NodeSet::all);

enum class Measure { arclength, dzeta };

/// sum_j f_j w_j (arclength) or sum_j f_j T_j w_j (dzeta).
cplx boundary_integral(const BoundaryFunction& f, Measure kind);

/// df/ds. Spectral on smooth curves; fourth-order differences per polygon side
/// that never reach across a vertex. Throws InvalidArgument when a polygon side
/// carries fewer than 8 nodes.
BoundaryFunction tangential_derivative(const BoundaryFunction& f);

/// Result of integrating a density along the curve starting at node 0.
struct ArcPrimitive {
  std::vector<cplx> at_nodes;  ///< integral over the positive arc from node 0 to node j
  cplx total;                  ///< integral over the full loop starting at node 0
};

/// Arc primitive of a density that is smooth on the loop cut open at node 0
/// and satisfies v(s + L) = exp(2 pi i beta) v(s) across the cut. beta = 0 is
/// the ordinary periodic case. Spectral on smooth curves (integrand written as
/// exp(i beta t) times a periodic function); local sixth-order rules per side
/// on polygons, consistent with the curve weights when beta = 0.
ArcPrimitive arc_primitive(const BoundaryCurve& curve, std::span<const cplx> density,
                           cplx beta = 0.0);

/// h(zeta_j) = integral of i g over the positive arc from node `base` to node j.
BoundaryFunction cumulative_primitive(const BoundaryFunction& g, std::size_t base);

/// Sampled Holder seminorm max_{i != j} |f_i - f_j| / |zeta_i - zeta_j|^a.
/// All pairs up to kHolderAllPairsLimit nodes, a seeded random subsample of
/// kHolderSamplePairs pairs above.
inline constexpr std::size_t kHolderAllPairsLimit = 2048;
inline constexpr std::size_t kHolderSamplePairs = 4'000'000;
inline constexpr std::uint64_t kHolderDefaultSeed = 20240917;
double holder_seminorm(const BoundaryFunction& f, double a,
                       std::uint64_t seed = kHolderDefaultSeed);

/// lp_norm(f, p) + lp_norm(df/ds, p).
double w1p_norm(const BoundaryFunction& f, double p);

}  // namespace dbar
