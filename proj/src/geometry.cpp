#include "dbar/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "dbar/errors.hpp"
#include "dbar/numerics.hpp"

namespace dbar {

DomainSpec DomainSpec::disk(cplx center, double radius, int n) {
  return DomainSpec{Disk{center, radius}, n};
}

DomainSpec DomainSpec::polygon(std::vector<cplx> vertices, int n) {
  return DomainSpec{Polygon{std::move(vertices)}, n};
}

DomainSpec DomainSpec::unit_square(int n) {
  return polygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}, n);
}

DomainSpec DomainSpec::ellipse(double a, double b, int n) {
  return parametric({{1, cplx(0.5 * (a + b), 0.0)}, {-1, cplx(0.5 * (a - b), 0.0)}}, n);
}

DomainSpec DomainSpec::parametric(std::vector<std::pair<int, cplx>> coefficients, int n) {
  return DomainSpec{Parametric{std::move(coefficients)}, n};
}

std::string DomainSpec::label() const {
  std::ostringstream os;
  os.precision(17);
  if (const auto* d = std::get_if<Disk>(&shape)) {
    os << "disk(center=" << d->center.real() << "," << d->center.imag()
       << ";radius=" << d->radius << ")";
  } else if (const auto* p = std::get_if<Polygon>(&shape)) {
    os << "polygon(";
    for (std::size_t k = 0; k < p->vertices.size(); ++k) {
      os << (k ? ";" : "") << p->vertices[k].real() << "," << p->vertices[k].imag();
    }
    os << ")";
  } else {
    const auto& q = std::get<Parametric>(shape);
    os << "parametric(";
    for (std::size_t k = 0; k < q.coefficients.size(); ++k) {
      os << (k ? ";" : "") << q.coefficients[k].first << ":" << q.coefficients[k].second.real()
         << "," << q.coefficients[k].second.imag();
    }
    os << ")";
  }
  return os.str();
}

namespace {

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool segments_intersect(cplx p1, cplx p2, cplx q1, cplx q2) {
  const double d1 = cross(q2 - q1, p1 - q1);
  const double d2 = cross(q2 - q1, p2 - q1);
  const double d3 = cross(p2 - p1, q1 - p1);
  const double d4 = cross(p2 - p1, q2 - p1);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  auto on_segment = [](cplx a, cplx b, cplx c) {
    return std::min(a.real(), b.real()) <= c.real() && c.real() <= std::max(a.real(), b.real()) &&
           std::min(a.imag(), b.imag()) <= c.imag() && c.imag() <= std::max(a.imag(), b.imag());
  };
  return (d1 == 0 && on_segment(q1, q2, p1)) || (d2 == 0 && on_segment(q1, q2, p2)) ||
         (d3 == 0 && on_segment(p1, p2, q1)) || (d4 == 0 && on_segment(p1, p2, q2));
}

// True if the closed polyline has two non-adjacent edges that meet.
bool polyline_self_intersects(std::span<const cplx> pts) {
  const std::size_t n = pts.size();
  for (std::size_t a = 0; a < n; ++a) {
    const cplx p1 = pts[a];
    const cplx p2 = pts[(a + 1) % n];
    for (std::size_t b = a + 2; b < n; ++b) {
      if (a == 0 && b == n - 1) continue;
      if (segments_intersect(p1, p2, pts[b], pts[(b + 1) % n])) return true;
    }
  }
  return false;
}

double signed_area(std::span<const cplx> pts) {
  double a = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) a += cross(pts[k], pts[(k + 1) % pts.size()]);
  return 0.5 * a;
}

// Even-odd crossing test; equals winding-number interiority for simple curves.
bool inside_polyline(std::span<const cplx> pts, cplx z) {
  bool in = false;
  const std::size_t n = pts.size();
  for (std::size_t a = 0, b = n - 1; a < n; b = a++) {
    const cplx p = pts[a];
    const cplx q = pts[b];
    if ((p.imag() > z.imag()) != (q.imag() > z.imag())) {
      const double x = p.real() + (z.imag() - p.imag()) * (q.real() - p.real()) / (q.imag() - p.imag());
      if (z.real() < x) in = !in;
    }
  }
  return in;
}

}  // namespace

struct CurveBuilder {
  static void finish(BoundaryCurve& c) {
    const std::size_t n = c.nodes_.size();
    c.length_ = std::accumulate(c.weights_.begin(), c.weights_.end(), 0.0);
    c.max_weight_ = *std::max_element(c.weights_.begin(), c.weights_.end());
    cplx centroid = 0.0;
    for (std::size_t j = 0; j < n; ++j) centroid += c.weights_[j] * c.nodes_[j];
    c.centroid_ = centroid / c.length_;
    double diam = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) diam = std::max(diam, std::abs(c.nodes_[i] - c.nodes_[j]));
    }
    c.diameter_ = diam;
  }
};

CurvePtr make_curve(const DomainSpec& spec) {
  if (spec.n_nodes < 16) {
    throw GeometryError("n_nodes must be at least 16, got " + std::to_string(spec.n_nodes));
  }
  const auto n = static_cast<std::size_t>(spec.n_nodes);
  std::shared_ptr<BoundaryCurve> curve(new BoundaryCurve());
  auto& c = *curve;
  c.spec_ = spec;
  c.nodes_.resize(n);
  c.tangents_.resize(n);
  c.inward_.resize(n);
  c.weights_.resize(n);
  c.arclength_.resize(n);
  c.corner_.assign(n, 0);
  const double dt = 2.0 * kPi / static_cast<double>(n);

  if (const auto* disk = std::get_if<Disk>(&spec.shape)) {
    if (!(disk->radius > 0.0) || !std::isfinite(disk->radius)) {
      throw GeometryError("disk radius must be positive");
    }
    c.speed_.assign(n, disk->radius);
    for (std::size_t j = 0; j < n; ++j) {
      const double t = dt * static_cast<double>(j);
      const cplx e = std::polar(1.0, t);
      c.nodes_[j] = disk->center + disk->radius * e;
      c.tangents_[j] = I * e;
      c.inward_[j] = -e;
      c.weights_[j] = disk->radius * dt;
      c.arclength_[j] = disk->radius * t;
    }
  } else if (const auto* par = std::get_if<Parametric>(&spec.shape)) {
    if (par->coefficients.empty()) throw GeometryError("parametric curve has no coefficients");
    std::vector<cplx> deriv(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double t = dt * static_cast<double>(j);
      cplx z = 0.0;
      cplx dz = 0.0;
      for (const auto& [k, ck] : par->coefficients) {
        const cplx e = std::polar(1.0, k * t);
        z += ck * e;
        dz += I * static_cast<double>(k) * ck * e;
      }
      c.nodes_[j] = z;
      deriv[j] = dz;
    }
    c.speed_.resize(n);
    double max_speed = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      c.speed_[j] = std::abs(deriv[j]);
      max_speed = std::max(max_speed, c.speed_[j]);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!(c.speed_[j] > 1e-8 * max_speed) || max_speed == 0.0) {
        throw GeometryError("parametric speed vanishes near t = " +
                            std::to_string(dt * static_cast<double>(j)));
      }
      c.tangents_[j] = deriv[j] / c.speed_[j];
      c.inward_[j] = I * c.tangents_[j];
      c.weights_[j] = c.speed_[j] * dt;
    }
    std::vector<cplx> sp(c.speed_.begin(), c.speed_.end());
    const auto prim = numerics::quasi_periodic_primitive(sp, 0.0);
    for (std::size_t j = 0; j < n; ++j) c.arclength_[j] = j == 0 ? 0.0 : prim.at_nodes[j].real();
    if (signed_area(c.nodes_) <= 0.0) throw GeometryError("parametric curve is not positively oriented");
    if (polyline_self_intersects(c.nodes_)) throw GeometryError("parametric curve self-intersects");
  } else {
    const auto& poly = std::get<Polygon>(spec.shape);
    const auto& v = poly.vertices;
    const std::size_t nv = v.size();
    if (nv < 3) throw GeometryError("polygon needs at least 3 vertices");
    for (std::size_t k = 0; k < nv; ++k) {
      if (std::abs(v[k] - v[(k + 1) % nv]) == 0.0) throw GeometryError("polygon has repeated vertices");
    }
    if (polyline_self_intersects(v)) throw GeometryError("polygon is self-intersecting");
    for (std::size_t k = 0; k < nv; ++k) {
      const cplx din = v[k] - v[(k + nv - 1) % nv];
      const cplx dout = v[(k + 1) % nv] - v[k];
      if (cross(din, dout) == 0.0 && (din.real() * dout.real() + din.imag() * dout.imag()) < 0.0) {
        throw GeometryError("polygon folds back on itself at vertex " + std::to_string(k));
      }
    }
    if (signed_area(v) <= 0.0) throw GeometryError("polygon is not positively oriented");

    std::vector<double> len(nv);
    for (std::size_t k = 0; k < nv; ++k) len[k] = std::abs(v[(k + 1) % nv] - v[k]);
    const double perimeter = std::accumulate(len.begin(), len.end(), 0.0);
    std::vector<long> count(nv);
    long assigned = 0;
    for (std::size_t k = 0; k < nv; ++k) {
      count[k] = std::max<long>(1, std::lround(static_cast<double>(n) * len[k] / perimeter));
      assigned += count[k];
    }
    // Adjust to exactly n, touching the sides with the coarsest/finest spacing first.
    while (assigned != static_cast<long>(n)) {
      std::size_t pick = 0;
      if (assigned < static_cast<long>(n)) {
        for (std::size_t k = 1; k < nv; ++k) {
          if (len[k] / count[k] > len[pick] / count[pick]) pick = k;
        }
        ++count[pick];
        ++assigned;
      } else {
        bool found = false;
        for (std::size_t k = 0; k < nv; ++k) {
          if (count[k] > 1 && (!found || len[k] / count[k] < len[pick] / count[pick])) {
            pick = k;
            found = true;
          }
        }
        if (!found) throw GeometryError("too few nodes for polygon with " + std::to_string(nv) + " sides");
        --count[pick];
        --assigned;
      }
    }

    auto bisector = [&](std::size_t vertex) {
      const cplx din = v[vertex] - v[(vertex + nv - 1) % nv];
      const cplx dout = v[(vertex + 1) % nv] - v[vertex];
      const cplx b = I * din / std::abs(din) + I * dout / std::abs(dout);
      return b / std::abs(b);
    };

    std::size_t j = 0;
    double position = 0.0;
    for (std::size_t k = 0; k < nv; ++k) {
      const auto m_count = static_cast<std::size_t>(count[k]);
      const double h = len[k] / static_cast<double>(m_count);
      const cplx dir = (v[(k + 1) % nv] - v[k]) / len[k];
      const auto& rule = numerics::midpoint_rule(m_count);
      c.sides_.push_back(Side{j, m_count, v[k], v[(k + 1) % nv], h});
      for (std::size_t m = 0; m < m_count; ++m, ++j) {
        const double x = (static_cast<double>(m) + 0.5) * h;
        c.nodes_[j] = v[k] + x * dir;
        c.tangents_[j] = dir;
        c.weights_[j] = rule.weights[m] * h;
        c.arclength_[j] = position + x;
        c.inward_[j] = I * dir;
        if (m == 0 || m + 1 == m_count) {
          c.corner_[j] = 1;
          const bool near_start = (m == 0) && (m + 1 != m_count || x <= 0.5 * len[k]);
          c.inward_[j] = bisector(near_start ? k : (k + 1) % nv);
        }
      }
      position += len[k];
    }
    const double s0 = c.arclength_[0];
    for (auto& s : c.arclength_) s -= s0;
    for (double w : c.weights_) {
      if (!(w > 0.0)) throw GeometryError("non-positive quadrature weight on polygon");
    }
  }
  CurveBuilder::finish(c);
  return curve;
}

double BoundaryCurve::reach() const {
  std::call_once(reach_once_, [this] {
    auto ok = [this](double eps) {
      for (std::size_t j = 0; j < nodes_.size(); ++j) {
        if (!contains(*this, nodes_[j] + eps * inward_[j])) return false;
      }
      return true;
    };
    double hi = diameter_;
    if (ok(hi)) {
      reach_ = hi;
      return;
    }
    double lo = hi;
    for (int k = 0; k < 60 && !ok(lo); ++k) {
      hi = lo;
      lo *= 0.5;
    }
    for (int it = 0; it < 40; ++it) {
      const double mid = 0.5 * (lo + hi);
      (ok(mid) ? lo : hi) = mid;
    }
    reach_ = lo;
  });
  return reach_;
}

ArcSegment arc_between(const BoundaryCurve& curve, std::size_t i, std::size_t j) {
  const std::size_t n = curve.size();
  if (i >= n || j >= n) throw InvalidArgument("arc_between: node index out of range");
  ArcSegment arc;
  arc.start = i;
  arc.end = j;
  for (std::size_t k = i; k != j; k = (k + 1) % n) {
    arc.indices.push_back(k);
    arc.measure += curve.weights()[k];
  }
  return arc;
}

void ConeConfig::validate() const {
  if (!(aperture > 0.0 && aperture < 0.5 * kPi)) {
    throw InvalidArgument("cone aperture must lie in (0, pi/2)");
  }
  if (depths.size() < 3) throw InvalidArgument("cone needs at least three depths");
  for (std::size_t k = 0; k < depths.size(); ++k) {
    if (!(depths[k] > 0.0)) throw InvalidArgument("cone depths must be positive");
    if (k > 0 && !(depths[k] < depths[k - 1])) {
      throw InvalidArgument("cone depths must be strictly decreasing");
    }
  }
}

ConeConfig ConeConfig::grid_scaled(const BoundaryCurve& curve, std::vector<double> multiples,
                                   double aperture) {
  ConeConfig cfg{aperture, std::move(multiples)};
  for (auto& d : cfg.depths) d *= curve.max_weight();
  cfg.validate();
  return cfg;
}

ConeConfig ConeConfig::diameter_scaled(const BoundaryCurve& curve, std::vector<double> fractions,
                                       double aperture) {
  ConeConfig cfg{aperture, std::move(fractions)};
  for (auto& d : cfg.depths) d *= curve.diameter();
  cfg.validate();
  return cfg;
}

std::vector<cplx> interior_offsets(const BoundaryCurve& curve, std::size_t node,
                                   const ConeConfig& cfg) {
  cfg.validate();
  if (node >= curve.size()) throw InvalidArgument("interior_offsets: node index out of range");
  const double reach = curve.reach();
  std::vector<cplx> out;
  out.reserve(cfg.depths.size());
  for (std::size_t k = 0; k < cfg.depths.size(); ++k) {
    const double eps = cfg.depths[k];
    const cplx z = curve.nodes()[node] + eps * curve.inward()[node];
    if (eps >= reach || !contains(curve, z)) {
      std::ostringstream os;
      os << "cone depth eps_" << k + 1 << " = " << eps << " exceeds curve reach " << reach;
      throw GeometryError(os.str());
    }
    out.push_back(z);
  }
  return out;
}

double distance_to_nodes(const BoundaryCurve& curve, cplx z) {
  double d = std::numeric_limits<double>::infinity();
  for (const cplx& p : curve.nodes()) d = std::min(d, std::abs(p - z));
  return d;
}

int winding_number(const BoundaryCurve& curve, cplx z) {
  if (distance_to_nodes(curve, z) < 2.0 * curve.max_weight()) {
    throw GeometryError("winding_number: point too close to the curve");
  }
  cplx sum = 0.0;
  const auto nodes = curve.nodes();
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    sum += curve.tangents()[j] * curve.weights()[j] / (nodes[j] - z);
  }
  return static_cast<int>(std::lround((sum / (2.0 * kPi * I)).real()));
}

bool contains(const BoundaryCurve& curve, cplx z) {
  if (const auto* poly = std::get_if<Polygon>(&curve.spec().shape)) {
    return inside_polyline(poly->vertices, z);
  }
  return inside_polyline(curve.nodes(), z);
}

double chord_arc_constant(const BoundaryCurve& curve) {
  const auto nodes = curve.nodes();
  const auto s = curve.arclength();
  const double len = curve.length();
  double k = 1.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      const double arc = std::abs(s[j] - s[i]);
      k = std::max(k, std::min(arc, len - arc) / std::abs(nodes[i] - nodes[j]));
    }
  }
  return k;
}

}  // namespace dbar
