#include "dbar/solvers.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace dbar {

const char* to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::dirichlet: return "dirichlet";
    case ProblemKind::regularity: return "regularity";
    case ProblemKind::neumann: return "neumann";
    case ProblemKind::robin: return "robin";
  }
  return "unknown";
}

ProblemKind parse_problem_kind(const std::string& name) {
  if (name == "dirichlet" || name == "dirichlet_hp") return ProblemKind::dirichlet;
  if (name == "regularity" || name == "regularity_h1p") return ProblemKind::regularity;
  if (name == "neumann" || name == "neumann_np") return ProblemKind::neumann;
  if (name == "robin" || name == "robin_rpb") return ProblemKind::robin;
  throw InvalidArgument("unknown problem kind '" + name + "'");
}

void SolveConfig::validate() const {
  if (!(p > 1.0) || std::isinf(p)) throw InvalidArgument("p must lie in (1, inf)");
  if (!(tau > 0.0)) throw InvalidArgument("tau must be positive");
  if (!(delta_c > 0.0)) throw InvalidArgument("delta_c must be positive");
  if (cone) cone->validate();
  if (trace) {
    if (const auto* m = std::get_if<OffsetExtrapolation>(&*trace)) {
      m->cone.validate();
      if (m->order < 1 || m->order > 2) throw InvalidArgument("Richardson order must be 1 or 2");
    }
  }
}

TraceMethod SolveConfig::trace_for(const BoundaryCurve& curve) const {
  return trace ? *trace : default_trace_method(curve);
}

ConeConfig SolveConfig::cone_for(const BoundaryCurve& curve) const {
  if (cone) return *cone;
  auto c = ConeConfig::diameter_scaled(curve, {0.2, 0.1, 0.05});
  // Acute polygon corners pull the reach down to a few node spacings; shrink
  // the cone to fit rather than fail.
  const double limit = 0.9 * curve.reach();
  if (c.depths[0] > limit) {
    const double scale = limit / c.depths[0];
    for (double& d : c.depths) d *= scale;
  }
  return c;
}

RobinCoefficient::RobinCoefficient(BoundaryFunction b) : b_(std::move(b)) {
  auto prim = arc_primitive(b_.curve(), b_.values(), 0.0);
  prefix_ = std::move(prim.at_nodes);
  prefix_[0] = 0.0;
  total_ = prim.total;
}

double RobinCoefficient::margin() const { return std::abs(std::exp(I * total_) - 1.0); }

double RobinCoefficient::bound_constant() const {
  return std::exp(lp_norm(b_, 1.0)) / margin();
}

double SolveReport::check(const std::string& name) const {
  for (const auto& [k, v] : checks) {
    if (k == name) return v;
  }
  throw InvalidArgument("report has no check '" + name + "'");
}

double SolveReport::norm(const std::string& name) const {
  for (const auto& [k, v] : norms) {
    if (k == name) return v;
  }
  throw InvalidArgument("report has no norm '" + name + "'");
}

MembershipRejected::MembershipRejected(SolveReport report)
    : Error([&] {
        std::ostringstream os;
        os << "membership: " << to_string(report.problem) << " residual " << report.residual
           << " exceeds tau " << report.tau;
        return os.str();
      }()),
      report_(std::move(report)) {}

namespace {

using Clock = std::chrono::steady_clock;

SolveReport start_report(ProblemKind kind, const BoundaryCurve& curve, const SolveConfig& cfg) {
  cfg.validate();
  SolveReport r;
  r.problem = kind;
  r.tau = cfg.tau;
  r.p = cfg.p;
  r.domain = curve.spec().label();
  r.grid_size = curve.size();
  r.trace_method = trace_method_label(cfg.trace_for(curve));
  return r;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ||a|| / ||b||, or ||a|| when b vanishes.
double relative(const BoundaryFunction& a, const BoundaryFunction& b, double p, NodeSet nodes) {
  const double nb = lp_norm(b, p, nodes);
  const double na = lp_norm(a, p, nodes);
  return nb > 0.0 ? na / nb : na;
}

bool is_zero(const BoundaryFunction& f) { return lp_norm(f, kSupNorm) == 0.0; }

void require_same_curve(const BoundaryFunction& a, const BoundaryFunction& b, const char* what) {
  if (a.curve_ptr() != b.curve_ptr()) throw InvalidArgument(std::string(what) + " live on different curves");
}

void add_star_norms(SolveReport& rep, const HolomorphicEvaluator& F, const SolveConfig& cfg,
                    const BoundaryFunction& trace, const char* name, double p_fn,
                    const std::optional<BoundaryFunction>& derivative_trace, const char* dname) {
  const auto cone = cfg.cone_for(F.curve());
  const auto star = ntm_estimate(F, cone, &trace);
  rep.add_norm(name, lp_norm(star.values, p_fn));
  if (derivative_trace) {
    const auto dstar = ntm_estimate(F.derivative_evaluator(), cone, &*derivative_trace);
    rep.add_norm(dname, lp_norm(dstar.values, cfg.p));
  }
}

struct Outcome {
  SolveReport report;
  std::optional<HolomorphicEvaluator> evaluator;
};

Outcome dirichlet_impl(const BoundaryFunction& f, const SolveConfig& cfg, bool build) {
  const auto t0 = Clock::now();
  const auto& c = f.curve();
  Outcome out{start_report(ProblemKind::dirichlet, c, cfg), std::nullopt};
  auto& rep = out.report;
  if (is_zero(f)) {
    rep.add_check("dirichlet_residual", 0.0);
    if (build) {
      out.evaluator.emplace(f);
      rep.add_norm("F_star_p", 0.0);
      rep.add_norm("trace_p", 0.0);
    }
    rep.runtime_seconds = seconds_since(t0);
    return out;
  }
  const auto trace = cauchy_trace(f, cfg.trace_for(c));
  rep.residual = relative(trace - f, f, cfg.p, cfg.residual_nodes);
  rep.accepted = rep.residual <= cfg.tau;
  rep.add_check("dirichlet_residual", rep.residual);
  if (build) {
    out.evaluator.emplace(f);
    if (rep.accepted) {
      add_star_norms(rep, *out.evaluator, cfg, trace, "F_star_p", cfg.p, std::nullopt, "");
      rep.add_norm("trace_p", lp_norm(trace, cfg.p));
    }
  }
  rep.runtime_seconds = seconds_since(t0);
  return out;
}

// Shared by regularity and Robin: both residuals of f and of conj(T) df/ds.
void regularity_residuals(SolveReport& rep, const BoundaryFunction& f, const BoundaryFunction& d,
                          const SolveConfig& cfg) {
  const double rf = dirichlet_residual(f, cfg);
  // Scale the derivative residual by at least tau ||f|| / L so that a
  // derivative at roundoff level (constant f) is not judged on its noise.
  double rd = 0.0;
  if (!is_zero(d)) {
    const auto trace = cauchy_trace(d, cfg.trace_for(d.curve()));
    const double floor = cfg.tau * lp_norm(f, cfg.p, cfg.residual_nodes) / f.curve().length();
    rd = lp_norm(trace - d, cfg.p, cfg.residual_nodes) /
         std::max(lp_norm(d, cfg.p, cfg.residual_nodes), floor);
  }
  rep.add_check("dirichlet_residual", rf);
  rep.add_check("derivative_residual", rd);
  rep.residual = std::max(rf, rd);
  rep.accepted = rep.residual <= cfg.tau;
}

Outcome regularity_impl(const BoundaryFunction& f, const SolveConfig& cfg, bool build) {
  const auto t0 = Clock::now();
  const auto& c = f.curve();
  Outcome out{start_report(ProblemKind::regularity, c, cfg), std::nullopt};
  auto& rep = out.report;
  const auto df = tangential_derivative(f);
  const auto d = df.times_tangent(-1);
  regularity_residuals(rep, f, d, cfg);
  if (build) {
    out.evaluator.emplace(f, d);
    if (rep.accepted) {
      const auto method = cfg.trace_for(c);
      const auto trace = cauchy_trace(f, method);
      const auto dtrace = cauchy_trace(d, method);
      rep.add_check("tangential_identity",
                    relative(dtrace.times_tangent(1) - df, df, 2.0, cfg.residual_nodes));
      add_star_norms(rep, *out.evaluator, cfg, trace, "F_star_sup", kSupNorm, dtrace,
                     "Fprime_star_p");
      rep.add_norm("trace_p", lp_norm(trace, cfg.p));
    }
  }
  rep.runtime_seconds = seconds_since(t0);
  return out;
}

void check_neumann_compatibility(SolveReport& rep, const BoundaryFunction& g, const SolveConfig& cfg) {
  const cplx integral = boundary_integral(g, Measure::arclength);
  const double threshold = cfg.delta_c * lp_norm(g, 1.0) * g.curve().length();
  const bool ok = !(std::abs(integral) > threshold);
  rep.compatibility = CompatibilityInfo{"neumann_mean", integral, std::abs(integral), threshold, ok};
  if (!ok) {
    std::ostringstream os;
    os << "compatibility: |integral g dsigma| = " << std::abs(integral) << " > " << threshold;
    throw CompatibilityError(os.str(), integral, std::abs(integral));
  }
}

Outcome neumann_impl(const BoundaryFunction& g, std::optional<cplx> alpha, const SolveConfig& cfg,
                     bool build) {
  const auto t0 = Clock::now();
  const auto& c = g.curve();
  Outcome out{start_report(ProblemKind::neumann, c, cfg), std::nullopt};
  auto& rep = out.report;
  if (alpha && !contains(c, *alpha)) throw GeometryError("base point alpha is not inside the domain");
  check_neumann_compatibility(rep, g, cfg);

  const auto h0 = cumulative_primitive(g, 0);
  rep.residual = dirichlet_residual(h0, cfg);
  rep.accepted = rep.residual <= cfg.tau;
  rep.add_check("dirichlet_residual_h0", rep.residual);

  const auto method = cfg.trace_for(c);
  const auto dens = (I * g).times_tangent(-1);
  const auto gtrace = cauchy_trace(dens, method);
  rep.add_check("neumann_residual",
                relative((-I * gtrace.times_tangent(1)) - g, g, cfg.p, cfg.residual_nodes));

  if (build) {
    const cplx shift = is_zero(h0) ? cplx(0.0) : HolomorphicEvaluator(h0)(*alpha);
    auto density = h0;
    density += -shift;
    out.evaluator.emplace(density, dens);
    const cplx at_alpha = (*out.evaluator)(*alpha);
    rep.add_check("G_alpha_at_alpha", std::abs(at_alpha));
    if (rep.accepted) {
      const auto trace = cauchy_trace(density, method);
      add_star_norms(rep, *out.evaluator, cfg, trace, "G_star_sup", kSupNorm, gtrace,
                     "Gprime_star_p");
    }
  }
  rep.runtime_seconds = seconds_since(t0);
  return out;
}

CompatibilityInfo robin_compatibility(const RobinCoefficient& coef, double delta_c) {
  const double m = coef.margin();
  return CompatibilityInfo{"robin_phase", coef.total(), m, delta_c, m >= delta_c};
}

Outcome robin_impl(const RobinCoefficient& coef, const BoundaryFunction& r, const SolveConfig& cfg,
                   bool build) {
  const auto t0 = Clock::now();
  const auto& c = r.curve();
  require_same_curve(coef.b(), r, "Robin coefficient and data");
  Outcome out{start_report(ProblemKind::robin, c, cfg), std::nullopt};
  auto& rep = out.report;
  rep.compatibility = robin_compatibility(coef, cfg.delta_c);

  const auto h = robin_transform(coef, r, cfg.delta_c);
  const auto dh = tangential_derivative(h);
  const auto d = dh.times_tangent(-1);
  regularity_residuals(rep, h, d, cfg);

  const auto ode = (-I * dh) + coef.b() * h - r;
  const double rnorm = lp_norm(r, 2.0);
  rep.add_check("ode_residual",
                lp_norm(ode, 2.0) / std::max(rnorm, std::numeric_limits<double>::epsilon()));
  const double bound = robin_sup_bound(coef, r, cfg.p);
  const double hsup = lp_norm(h, kSupNorm);
  rep.add_check("sup_bound_ratio", bound > 0.0 ? hsup / bound : (hsup > 0.0 ? kSupNorm : 0.0));
  rep.add_norm("h_sup", hsup);
  rep.add_norm("sup_bound", bound);

  if (!rep.accepted) {
    rep.runtime_seconds = seconds_since(t0);
    return out;
  }
  const auto method = cfg.trace_for(c);
  const auto trace = cauchy_trace(h, method);
  const auto robin = (-I * tangential_derivative(trace)) + coef.b() * trace - r;
  rep.add_check("robin_residual", relative(robin, r, cfg.p, cfg.residual_nodes));
  if (build) {
    out.evaluator.emplace(h, d);
    add_star_norms(rep, *out.evaluator, cfg, trace, "G_star_sup", kSupNorm, cauchy_trace(d, method),
                   "Gprime_star_p");
  }
  rep.runtime_seconds = seconds_since(t0);
  return out;
}

}  // namespace

double dirichlet_residual(const BoundaryFunction& f, const SolveConfig& cfg) {
  if (is_zero(f)) return 0.0;
  const auto trace = cauchy_trace(f, cfg.trace_for(f.curve()));
  return relative(trace - f, f, cfg.p, cfg.residual_nodes);
}

Solution solve_dirichlet(const BoundaryFunction& f, const SolveConfig& cfg) {
  auto o = dirichlet_impl(f, cfg, true);
  return {std::move(*o.evaluator), std::move(o.report)};
}

Solution solve_regularity(const BoundaryFunction& f, const SolveConfig& cfg) {
  auto o = regularity_impl(f, cfg, true);
  return {std::move(*o.evaluator), std::move(o.report)};
}

Solution solve_neumann(const BoundaryFunction& g, cplx alpha, const SolveConfig& cfg) {
  auto o = neumann_impl(g, alpha, cfg, true);
  return {std::move(*o.evaluator), std::move(o.report)};
}

BoundaryFunction robin_transform(const RobinCoefficient& coef, const BoundaryFunction& r,
                                 double delta_c) {
  require_same_curve(coef.b(), r, "Robin coefficient and data");
  const double margin = coef.margin();
  if (!(margin >= delta_c)) {
    std::ostringstream os;
    os << "compatibility: |exp(i*integral b)-1| = " << margin << " < " << delta_c;
    throw CompatibilityError(os.str(), coef.total(), margin);
  }
  const auto& c = r.curve();
  const std::size_t n = c.size();
  const auto B = coef.prefix();
  const cplx lambda = std::exp(I * coef.total());

  // P(s) = integral_0^s r e^{iB}; h = i e^{-iB} (P_tot - P + lambda P) / (lambda - 1).
  std::vector<cplx> e(n);
  for (std::size_t j = 0; j < n; ++j) e[j] = r[j] * std::exp(I * B[j]);
  const auto P = arc_primitive(c, e, coef.total() / (2.0 * kPi));
  std::vector<cplx> h(n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx pk = P.at_nodes[k];
    h[k] = I * std::exp(-I * B[k]) * (P.total - pk + lambda * pk) / (lambda - 1.0);
  }
  return BoundaryFunction(r.curve_ptr(), std::move(h));
}

double robin_sup_bound(const RobinCoefficient& coef, const BoundaryFunction& r, double p) {
  const double L = r.curve().length();
  const double lfac = std::isinf(p) ? L : std::pow(L, 1.0 - 1.0 / p);
  return lfac * coef.bound_constant() * lp_norm(r, p);
}

Solution solve_robin(const RobinCoefficient& coef, const BoundaryFunction& r, const SolveConfig& cfg) {
  auto o = robin_impl(coef, r, cfg, true);
  if (!o.report.accepted) throw MembershipRejected(std::move(o.report));
  return {std::move(*o.evaluator), std::move(o.report)};
}

SolveReport membership(ProblemKind kind, const BoundaryFunction& data, const SolveConfig& cfg,
                       const RobinCoefficient* coef) {
  switch (kind) {
    case ProblemKind::dirichlet: return dirichlet_impl(data, cfg, false).report;
    case ProblemKind::regularity: return regularity_impl(data, cfg, false).report;
    case ProblemKind::neumann: return neumann_impl(data, std::nullopt, cfg, false).report;
    case ProblemKind::robin:
      if (!coef) throw InvalidArgument("robin membership needs a Robin coefficient");
      return robin_impl(*coef, data, cfg, false).report;
  }
  throw InvalidArgument("unknown problem kind");
}

SolveReport membership_refined(ProblemKind kind, const DomainSpec& domain, const DataSampler& data,
                               const SolveConfig& cfg, const DataSampler& b) {
  if (kind == ProblemKind::robin && !b) throw InvalidArgument("robin membership needs a coefficient sampler");
  auto run = [&](const DomainSpec& spec) {
    const auto curve = make_curve(spec);
    const auto f = data(curve);
    if (kind == ProblemKind::robin) {
      const RobinCoefficient coef(b(curve));
      return membership(kind, f, cfg, &coef);
    }
    return membership(kind, f, cfg);
  };
  auto coarse = run(domain);
  if (coarse.accepted) return coarse;
  auto fine = run(domain.with_nodes(2 * domain.n_nodes));
  fine.add_check("coarse_residual", coarse.residual);
  fine.add_check("coarse_grid_size", static_cast<double>(coarse.grid_size));
  fine.refined_grid_size = fine.grid_size;
  fine.runtime_seconds += coarse.runtime_seconds;
  return fine;
}

}  // namespace dbar
