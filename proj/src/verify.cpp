#include "dbar/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "dbar/cauchy.hpp"
#include "dbar/errors.hpp"

namespace dbar::verify {

namespace {

constexpr std::uint64_t kOracleSeed = 7;

struct Bounds {
  double smooth;
  double polygon;
};

cplx fourth_order_difference(const std::function<cplx(cplx)>& H, cplx z, double h) {
  return (-H(z + 2.0 * h) + 8.0 * H(z + h) - 8.0 * H(z - h) + H(z - 2.0 * h)) / (12.0 * h);
}

void cross_check(const ManufacturedCase& c) {
  const auto pts = probe_points(c.curve->spec(), 10, kOracleSeed);
  const double h = 1e-3 * c.curve->diameter();
  for (const cplx z : pts) {
    const cplx fd = fourth_order_difference(c.H, z, h);
    const cplx exact = c.dH(z);
    if (std::abs(fd - exact) > 1e-8 * std::max(1.0, std::abs(exact))) {
      std::ostringstream os;
      os << "oracle '" << c.name << "': derivative mismatch at " << z << " (" << exact << " vs "
         << fd << ")";
      throw Error(os.str());
    }
  }
}

// Catches oracle mistakes, which give an O(1) mean. Quadrature error on coarse
// grids stays below kOracleMeanTol; the solvers apply the strict delta_c test.
constexpr double kOracleMeanTol = 1e-6;

void assert_compatible(const ManufacturedCase& c) {
  const SolveConfig cfg;
  const auto g = c.data(ProblemKind::neumann);
  const double integral = std::abs(boundary_integral(g, Measure::arclength));
  if (integral > kOracleMeanTol * lp_norm(g, 1.0) * c.curve->length()) {
    throw Error("oracle '" + c.name + "': Neumann data has nonzero mean");
  }
  if (c.coefficient().margin() < cfg.delta_c) {
    throw Error("oracle '" + c.name + "': Robin coefficient violates the phase condition");
  }
}

}  // namespace

BoundaryFunction ManufacturedCase::data(ProblemKind kind) const {
  if (!holomorphic()) {
    return BoundaryFunction::sample(curve, [](cplx z, cplx) { return std::conj(z); });
  }
  switch (kind) {
    case ProblemKind::dirichlet:
    case ProblemKind::regularity:
      return BoundaryFunction::sample(curve, [&](cplx z, cplx) { return H(z); });
    case ProblemKind::neumann:
      return BoundaryFunction::sample(curve, [&](cplx z, cplx t) { return -I * t * dH(z); });
    case ProblemKind::robin:
      return BoundaryFunction::sample(curve,
                                      [&](cplx z, cplx t) { return -I * t * dH(z) + robin_b * H(z); });
  }
  throw InvalidArgument("unknown problem kind");
}

RobinCoefficient ManufacturedCase::coefficient() const {
  return RobinCoefficient(BoundaryFunction::constant(curve, robin_b));
}

cplx ManufacturedCase::exact(ProblemKind kind, cplx z, cplx alpha) const {
  if (!holomorphic()) throw InvalidArgument("case '" + name + "' has no holomorphic solution");
  if (kind == ProblemKind::neumann) return H(z) - H(alpha);
  return H(z);
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{"poly3",       "exp",      "rational_pole_out",
                                              "conj_reject", "constant", "robin_linear"};
  return names;
}

ManufacturedCase manufactured_case(const std::string& name, CurvePtr curve) {
  if (!curve) throw InvalidArgument("manufactured_case needs a curve");
  ManufacturedCase c;
  c.name = name;
  Bounds bounds{1e-9, 1e-6};
  if (name == "poly3") {
    c.H = [](cplx z) { return z * z * z + 2.0 * z; };
    c.dH = [](cplx z) { return 3.0 * z * z + 2.0; };
  } else if (name == "exp") {
    c.H = [](cplx z) { return std::exp(z); };
    c.dH = [](cplx z) { return std::exp(z); };
  } else if (name == "rational_pole_out") {
    double radius = 0.0;
    for (const cplx z : curve->nodes()) radius = std::max(radius, std::abs(z - curve->centroid()));
    const cplx a = curve->centroid() + 1.5 * radius;
    c.H = [a](cplx z) { return 1.0 / (z - a); };
    c.dH = [a](cplx z) { return -1.0 / ((z - a) * (z - a)); };
    bounds = {1e-8, 1e-6};
  } else if (name == "conj_reject") {
    c.expected_accepted = false;
  } else if (name == "constant") {
    const cplx value{2.0, -1.0};
    c.H = [value](cplx) { return value; };
    c.dH = [](cplx) { return cplx(0.0); };
    bounds = {1e-12, 1e-12};
  } else if (name == "robin_linear") {
    c.H = [](cplx z) { return z; };
    c.dH = [](cplx) { return cplx(1.0); };
  } else {
    throw InvalidArgument("unknown manufactured case '" + name + "'");
  }
  c.curve = std::move(curve);
  c.error_bound = c.curve->is_smooth() ? bounds.smooth : bounds.polygon;
  if (c.holomorphic()) {
    cross_check(c);
    assert_compatible(c);
  }
  return c;
}

std::vector<cplx> probe_points(const DomainSpec& domain, std::size_t count, std::uint64_t seed) {
  const auto curve = make_curve(domain.with_nodes(256));
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const cplx z : curve->nodes()) {
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  }
  const double margin = 0.05 * curve->diameter();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(xmin, xmax), uy(ymin, ymax);
  std::vector<cplx> out;
  for (std::size_t tries = 0; out.size() < count; ++tries) {
    if (tries > 1000 * count) throw GeometryError("probe_points: domain too thin for the margin");
    const cplx z{ux(rng), uy(rng)};
    if (contains(*curve, z) && distance_to_nodes(*curve, z) >= margin) out.push_back(z);
  }
  return out;
}

bool ConvergenceTable::monotone() const {
  for (std::size_t i = 0; i + 1 < interior_error.size(); ++i) {
    if (interior_error[i + 1] <= roundoff_floor) continue;
    if (!(interior_error[i + 1] < interior_error[i])) return false;
  }
  return true;
}

std::string ConvergenceTable::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "size,interior_error,trace_residual,order\n";
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    os << sizes[i] << "," << interior_error[i] << "," << trace_residual[i] << ",";
    if (i > 0) os << orders[i - 1];
    os << "\n";
  }
  return os.str();
}

std::string ConvergenceTable::to_dat() const {
  std::ostringstream os;
  os.precision(17);
  os << "# " << case_name << " " << problem << " " << domain << "\n";
  for (std::size_t i = 0; i < sizes.size(); ++i) os << sizes[i] << " " << interior_error[i] << "\n";
  return os.str();
}

namespace {

double interior_error(const ManufacturedCase& c, ProblemKind kind, const SolveConfig& cfg,
                      std::span<const cplx> probes, double& residual) {
  const auto data = c.data(kind);
  auto max_error = [&](const HolomorphicEvaluator& F, cplx alpha) {
    const auto vals = F.evaluate(probes);
    double e = 0.0;
    for (std::size_t k = 0; k < probes.size(); ++k) {
      e = std::max(e, std::abs(vals[k] - c.exact(kind, probes[k], alpha)));
    }
    return e;
  };
  switch (kind) {
    case ProblemKind::dirichlet: {
      const auto s = solve_dirichlet(data, cfg);
      residual = s.report.residual;
      return max_error(s.evaluator, 0.0);
    }
    case ProblemKind::regularity: {
      const auto s = solve_regularity(data, cfg);
      residual = s.report.residual;
      const auto d = s.evaluator.derivative(probes);
      double e = max_error(s.evaluator, 0.0);
      for (std::size_t k = 0; k < probes.size(); ++k) e = std::max(e, std::abs(d[k] - c.dH(probes[k])));
      return e;
    }
    case ProblemKind::neumann: {
      const cplx alpha = probes[0];
      const auto s = solve_neumann(data, alpha, cfg);
      residual = s.report.residual;
      return max_error(s.evaluator, alpha);
    }
    case ProblemKind::robin: {
      const auto s = solve_robin(c.coefficient(), data, cfg);
      residual = s.report.residual;
      return max_error(s.evaluator, 0.0);
    }
  }
  throw InvalidArgument("unknown problem kind");
}

[[noreturn]] void rethrow_with_size(std::size_t n) {
  const std::string prefix = "N=" + std::to_string(n) + ": ";
  try {
    throw;
  } catch (const CompatibilityError& e) {
    throw CompatibilityError(prefix + e.what(), e.integral(), e.margin());
  } catch (const GeometryError& e) {
    throw GeometryError(prefix + e.what());
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(prefix + e.what());
  } catch (const Error& e) {
    throw Error(prefix + e.what());
  }
}

}  // namespace

ConvergenceTable run_convergence(const std::string& case_name, const DomainSpec& domain,
                                 ProblemKind kind, const std::vector<std::size_t>& sizes,
                                 const SolveConfig& cfg) {
  if (sizes.size() < 2) throw InvalidArgument("run_convergence needs at least two sizes");
  for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
    if (sizes[i + 1] <= sizes[i]) throw InvalidArgument("run_convergence sizes must increase");
  }
  ConvergenceTable t;
  t.case_name = case_name;
  t.problem = to_string(kind);
  t.domain = domain.label();
  t.sizes = sizes;
  const auto probes = probe_points(domain, 20);
  double scale = 1.0;
  for (const std::size_t n : sizes) {
    try {
      const auto c = manufactured_case(case_name, make_curve(domain.with_nodes(static_cast<int>(n))));
      if (!c.holomorphic()) throw InvalidArgument("case '" + case_name + "' has no exact solution");
      for (const cplx z : probes) scale = std::max(scale, std::abs(c.H(z)));
      double residual = 0.0;
      t.interior_error.push_back(interior_error(c, kind, cfg, probes, residual));
      t.trace_residual.push_back(residual);
    } catch (const Error&) {
      rethrow_with_size(n);
    }
  }
  t.roundoff_floor = 1e-13 * scale;
  for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
    const double ratio = static_cast<double>(sizes[i + 1]) / static_cast<double>(sizes[i]);
    t.orders.push_back(std::log(t.interior_error[i] / t.interior_error[i + 1]) / std::log(ratio));
  }
  return t;
}

double ode_residual(const RobinCoefficient& coef, const BoundaryFunction& h, const BoundaryFunction& r) {
  const auto res = (-I * tangential_derivative(h)) + coef.b() * h - r;
  return lp_norm(res, 2.0) / std::max(lp_norm(r, 2.0), std::numeric_limits<double>::epsilon());
}

NonuniquenessResult nonuniqueness_demo(std::size_t n) {
  const auto curve = make_curve(DomainSpec::unit_disk(static_cast<int>(n)));
  const RobinCoefficient coef(BoundaryFunction::constant(curve, -1.0));
  const BoundaryFunction zero(curve);
  NonuniquenessResult out;
  out.margin = coef.margin();
  try {
    solve_robin(coef, zero);
  } catch (const CompatibilityError& e) {
    out.solve_refused = true;
    out.refusal = e.what();
  }
  const auto zeta = BoundaryFunction::sample(curve, [](cplx z, cplx) { return z; });
  for (const cplx C : {cplx(0.0), cplx(1.0), cplx(2.0, 1.0), cplx(-3.0)}) {
    const auto G = C * zeta;
    const auto res = (-I * tangential_derivative(G)) + coef.b() * G - zero;
    out.residuals.emplace_back(C, lp_norm(res, 2.0));
  }
  return out;
}

EmbeddingProbe embedding_probe(const std::string& case_name, const CurvePtr& curve,
                               const SolveConfig& cfg) {
  const auto c = manufactured_case(case_name, curve);
  const auto f = c.data(ProblemKind::dirichlet);
  const auto method = cfg.trace_for(*curve);
  const auto trace = cauchy_trace(f, method);
  const HolomorphicEvaluator F(f);
  const auto star = ntm_estimate(F, cfg.cone_for(*curve), &trace);
  EmbeddingProbe out;
  out.case_name = case_name;
  out.grid_size = curve->size();
  out.holder_ratio =
      holder_seminorm(trace, 1.0 - 1.0 / cfg.p) / lp_norm(tangential_derivative(trace), cfg.p);
  out.ntm_ratio = lp_norm(star.values, cfg.p) / lp_norm(trace, cfg.p);
  return out;
}

}  // namespace dbar::verify
