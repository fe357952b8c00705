#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace dbar {

using cplx = std::complex<double>;
inline constexpr cplx I{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

struct Disk {
  cplx center{0.0, 0.0};
  double radius = 1.0;
};

/// Positively oriented simple polygon.
struct Polygon {
  std::vector<cplx> vertices;
};

/// Smooth closed curve zeta(t) = sum_k c_k exp(i k t), t in [0, 2pi).
struct Parametric {
  std::vector<std::pair<int, cplx>> coefficients;
};

struct DomainSpec {
  std::variant<Disk, Polygon, Parametric> shape;
  int n_nodes = 256;

  static DomainSpec disk(cplx center, double radius, int n);
  static DomainSpec unit_disk(int n) { return disk({0.0, 0.0}, 1.0, n); }
  static DomainSpec polygon(std::vector<cplx> vertices, int n);
  /// Vertices 0, 1, 1+i, i.
  static DomainSpec unit_square(int n);
  /// a cos t + i b sin t.
  static DomainSpec ellipse(double a, double b, int n);
  static DomainSpec parametric(std::vector<std::pair<int, cplx>> coefficients, int n);

  DomainSpec with_nodes(int n) const {
    DomainSpec copy = *this;
    copy.n_nodes = n;
    return copy;
  }
  bool is_smooth() const { return !std::holds_alternative<Polygon>(shape); }
  /// Short human-readable label used in reports.
  std::string label() const;
};

/// A straight polygon side and the contiguous node range it carries.
struct Side {
  std::size_t first = 0;
  std::size_t count = 0;
  cplx start;
  cplx end;
  double spacing = 0.0;
};

/// Discretized positively oriented closed boundary.
///
/// Smooth curves carry nodes uniform in the periodic parameter with trapezoidal
/// weights |zeta'(t)| 2pi/N. Polygons carry midpoint-placed nodes uniform in
/// arclength per side; the weights are the integrals of the local six-point
/// Lagrange interpolants, so they are positive and exact for quintics on each
/// side. Nodes never sit on a vertex; the first and last node of every side are
/// flagged corner-adjacent.
class BoundaryCurve {
public:
  std::size_t size() const noexcept { return nodes_.size(); }
  std::span<const cplx> nodes() const noexcept { return nodes_; }
  std::span<const cplx> tangents() const noexcept { return tangents_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> arclength() const noexcept { return arclength_; }
  /// Unit inward offset direction: inward normal, or the inward angle bisector
  /// of the adjacent vertex at corner-adjacent nodes.
  std::span<const cplx> inward() const noexcept { return inward_; }
  bool corner(std::size_t j) const { return corner_.at(j); }
  std::span<const char> corner_flags() const noexcept { return corner_; }
  /// |zeta'(t_j)| for smooth curves; empty for polygons.
  std::span<const double> speed() const noexcept { return speed_; }
  std::span<const Side> sides() const noexcept { return sides_; }

  cplx node(std::size_t j) const { return nodes_.at(j); }
  double length() const noexcept { return length_; }
  double max_weight() const noexcept { return max_weight_; }
  double diameter() const noexcept { return diameter_; }
  /// Centroid of the node set (weighted by arc weights).
  cplx centroid() const noexcept { return centroid_; }
  bool is_smooth() const noexcept { return spec_.is_smooth(); }
  const DomainSpec& spec() const noexcept { return spec_; }

  /// Largest depth eps such that every node offset zeta_j + eps*inward_j is an
  /// interior point. Computed once by bisection on the polyline winding test.
  double reach() const;

private:
  friend std::shared_ptr<const BoundaryCurve> make_curve(const DomainSpec& spec);
  friend struct CurveBuilder;
  BoundaryCurve() = default;

  DomainSpec spec_;
  std::vector<cplx> nodes_;
  std::vector<cplx> tangents_;
  std::vector<cplx> inward_;
  std::vector<double> weights_;
  std::vector<double> arclength_;
  std::vector<char> corner_;
  std::vector<double> speed_;
  std::vector<Side> sides_;
  double length_ = 0.0;
  double max_weight_ = 0.0;
  double diameter_ = 0.0;
  cplx centroid_{};

  mutable std::once_flag reach_once_;
  mutable double reach_ = 0.0;
};

using CurvePtr = std::shared_ptr<const BoundaryCurve>;

/// Validates the DomainSpec and builds the discrete curve. Throws GeometryError.
CurvePtr make_curve(const DomainSpec& spec);

/// Nodes of the positive-direction arc from node i up to (not including) node j.
struct ArcSegment {
  std::size_t start = 0;
  std::size_t end = 0;
  std::vector<std::size_t> indices;
  double measure = 0.0;

  bool empty() const noexcept { return indices.empty(); }
};

ArcSegment arc_between(const BoundaryCurve& curve, std::size_t i, std::size_t j);

/// Truncated cone used for non-tangential sampling and trace extrapolation.
struct ConeConfig {
  double aperture = kPi / 6.0;  ///< half-angle, radians, in (0, pi/2)
  std::vector<double> depths;   ///< strictly decreasing, at least three

  /// Throws InvalidArgument if the invariants fail.
  void validate() const;

  /// Depths given as multiples of the curve's largest arc weight.
  static ConeConfig grid_scaled(const BoundaryCurve& curve, std::vector<double> multiples,
                                double aperture = kPi / 6.0);
  /// Depths given as fractions of the curve diameter (refinement independent).
  static ConeConfig diameter_scaled(const BoundaryCurve& curve, std::vector<double> fractions,
                                    double aperture = kPi / 6.0);
};

/// Axis samples zeta_j + eps_k * inward_j, one per depth, in depth order.
/// Throws GeometryError naming the first depth that exceeds the reach or
/// produces an exterior point.
std::vector<cplx> interior_offsets(const BoundaryCurve& curve, std::size_t node,
                                   const ConeConfig& cfg);

/// Discrete winding number round((1/2pi i) sum_j T_j w_j / (zeta_j - z)).
/// Throws GeometryError when z is within 2 max_j w_j of a node.
int winding_number(const BoundaryCurve& curve, cplx z);

/// Exact winding test of the closed polyline through the nodes (polygon
/// vertices included). Robust arbitrarily close to the curve.
bool contains(const BoundaryCurve& curve, cplx z);

/// Distance from z to the nearest node.
double distance_to_nodes(const BoundaryCurve& curve, cplx z);

/// max over node pairs of (shorter arc measure) / |zeta_i - zeta_j|.
double chord_arc_constant(const BoundaryCurve& curve);

}  // namespace dbar
