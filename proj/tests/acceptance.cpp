// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dbar/boundary_fn.hpp"
#include "dbar/cauchy.hpp"
#include "dbar/errors.hpp"
#include "dbar/geometry.hpp"
#include "dbar/solvers.hpp"
#include "dbar/verify.hpp"

using namespace dbar;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void note(Outcome& o, bool ok, const char* fmt, double value, double tol) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, value, tol);
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += buf;
  if (!ok) {
    o.detail += " FAILED";
    o.pass = false;
  }
}

void fail(Outcome& o, const std::string& what) {
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += what + " FAILED";
  o.pass = false;
}

std::vector<cplx> disk_points(std::size_t count, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cplx> pts;
  for (std::size_t k = 0; k < count; ++k) {
    pts.push_back(std::polar(radius * std::sqrt(u(rng)), 2.0 * kPi * u(rng)));
  }
  pts.push_back(radius);
  pts.push_back(std::polar(radius, 2.0));
  return pts;
}

const std::vector<std::string> kHolomorphic{"poly3", "exp", "rational_pole_out", "constant",
                                            "robin_linear"};

Outcome criterion1() {
  Outcome o;
  const auto curve = make_curve(DomainSpec::unit_disk(256));
  const HolomorphicEvaluator F(BoundaryFunction::constant(curve, 1.0));
  const auto pts = disk_points(98, 0.9, 1);
  const auto v = F.evaluate(pts);
  double err = 0.0;
  for (const cplx x : v) err = std::max(err, std::abs(x - 1.0));
  note(o, err <= 1e-12, "max |C(1)-1| = %.2e (tol %.0e), 100 points |z|<=0.9, N=256", err, 1e-12);
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto curve = make_curve(DomainSpec::unit_disk(256));
  double worst = 0.0;
  for (const auto& name : kHolomorphic) {
    const auto c = verify::manufactured_case(name, curve);
    const auto rep = membership(ProblemKind::dirichlet, c.data(ProblemKind::dirichlet));
    worst = std::max(worst, rep.residual);
    if (!rep.accepted) fail(o, name + " rejected");
  }
  note(o, worst <= 1e-8, "worst Hardy-trace residual %.2e (tol %.0e)", worst, 1e-8);
  const auto conj = verify::manufactured_case("conj_reject", curve);
  const auto rep = membership(ProblemKind::dirichlet, conj.data(ProblemKind::dirichlet));
  note(o, !rep.accepted && std::abs(rep.residual - 1.0) <= 0.01, "conj residual %.6f (1 +- %.2f)",
       rep.residual, 0.01);
  return o;
}

Outcome criterion3() {
  Outcome o;
  for (const auto& spec : {DomainSpec::unit_disk(512), DomainSpec::unit_square(512)}) {
    const auto curve = make_curve(spec);
    const auto c = verify::manufactured_case("poly3", curve);
    const auto s = solve_regularity(c.data(ProblemKind::regularity));
    const double id = s.report.accepted ? s.report.check("tangential_identity") : 1.0;
    note(o, s.report.accepted && id <= 1e-6,
         (std::string(spec.is_smooth() ? "disk" : "square") + " |trace(F')T - df/ds|/|df/ds| = %.2e (tol %.0e)").c_str(),
         id, 1e-6);
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto curve = make_curve(DomainSpec::unit_disk(256));
  const auto g = BoundaryFunction::sample(curve, [](cplx z, cplx) { return 2.0 * z * z; });
  const auto probes = verify::probe_points(curve->spec(), 20);
  const auto s0 = solve_neumann(g, 0.0);
  double err = 0.0;
  for (const cplx z : probes) err = std::max(err, std::abs(s0.evaluator(z) - z * z));
  note(o, err <= 1e-8, "max |G_0 - z^2| = %.2e (tol %.0e)", err, 1e-8);

  bool raised = false;
  try {
    solve_neumann(BoundaryFunction::constant(curve, 1.0), 0.0);
  } catch (const CompatibilityError&) {
    raised = true;
  }
  if (!raised) fail(o, "g = 1 accepted");

  const cplx a2{0.3, -0.2};
  const auto s2 = solve_neumann(g, a2);
  const cplx d0 = s0.evaluator(probes[0]) - s2.evaluator(probes[0]);
  double spread = 0.0;
  for (const cplx z : probes) spread = std::max(spread, std::abs(s0.evaluator(z) - s2.evaluator(z) - d0));
  note(o, spread <= 1e-8, "base-point difference non-constant by %.2e (tol %.0e)", spread, 1e-8);
  return o;
}

// Random trigonometric polynomial sum_{|k|<=deg} c_k e^{ik t} on the unit circle.
BoundaryFunction trig_poly(const CurvePtr& curve, int deg, double scale, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<cplx> c;
  for (int k = -deg; k <= deg; ++k) c.emplace_back(scale * nd(rng), scale * nd(rng));
  return BoundaryFunction::sample(curve, [&](cplx z, cplx) {
    cplx s = 0.0;
    for (int k = -deg; k <= deg; ++k) s += c[static_cast<std::size_t>(k + deg)] * std::pow(z, k);
    return s;
  });
}

Outcome criterion5() {
  Outcome o;
  {
    const auto curve = make_curve(DomainSpec::unit_disk(256));
    const RobinCoefficient coef(BoundaryFunction::constant(curve, 0.5));
    const auto h = robin_transform(coef, BoundaryFunction::constant(curve, 1.0));
    double err = 0.0;
    for (const cplx v : h.values()) err = std::max(err, std::abs(v - 2.0));
    note(o, err <= 1e-10, "max |T(1) - 2| = %.2e (tol %.0e)", err, 1e-10);
  }
  const auto curve = make_curve(DomainSpec::unit_disk(512));
  std::mt19937_64 rng(20240917);
  double worst_ode = 0.0, worst_ratio = 0.0;
  int pairs = 0;
  while (pairs < 10) {
    const auto b = trig_poly(curve, 3, 0.3, rng);
    const RobinCoefficient coef(b);
    if (coef.margin() < 0.1) continue;
    const auto r = trig_poly(curve, 5, 1.0, rng);
    const auto h = robin_transform(coef, r);
    worst_ode = std::max(worst_ode, verify::ode_residual(coef, h, r));
    worst_ratio = std::max(worst_ratio, lp_norm(h, kSupNorm) / robin_sup_bound(coef, r, 2.0));
    ++pairs;
  }
  note(o, worst_ode <= 1e-6, "worst ODE residual %.2e (tol %.0e) over 10 pairs", worst_ode, 1e-6);
  note(o, worst_ratio <= 1.0, "worst ||h||_inf / bound = %.3f (<= %.0f)", worst_ratio, 1.0);
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto curve = make_curve(DomainSpec::unit_disk(256));
  const RobinCoefficient coef(BoundaryFunction::constant(curve, 0.5));
  const auto r = BoundaryFunction::sample(curve, [](cplx z, cplx) { return 1.5 * z; });
  const auto s = solve_robin(coef, r);
  double err = 0.0;
  for (const cplx z : verify::probe_points(curve->spec(), 20)) err = std::max(err, std::abs(s.evaluator(z) - z));
  note(o, err <= 1e-8, "max |G - z| = %.2e (tol %.0e)", err, 1e-8);
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto d = verify::nonuniqueness_demo();
  note(o, d.margin <= 1e-12, "margin %.2e (tol %.0e)", d.margin, 1e-12);
  double worst = 0.0;
  int nonzero = 0;
  for (const auto& [c, res] : d.residuals) {
    worst = std::max(worst, res);
    if (c != 0.0) ++nonzero;
  }
  note(o, worst <= 1e-10 && nonzero >= 3, "worst residual of C z %.2e (tol %.0e)", worst, 1e-10);
  if (!d.solve_refused) fail(o, "solve_robin accepted b = -1");
  return o;
}

Outcome criterion8() {
  Outcome o;
  double worst = 0.0;
  for (const auto& spec : {DomainSpec::unit_disk(256), DomainSpec::unit_square(256)}) {
    const auto curve = make_curve(spec);
    for (const auto& name : kHolomorphic) {
      const auto c = verify::manufactured_case(name, curve);
      worst = std::max(worst, std::abs(boundary_integral(c.data(ProblemKind::dirichlet), Measure::dzeta)));
    }
  }
  note(o, worst <= 1e-10, "worst |closed integral of f dz| = %.2e (tol %.0e)", worst, 1e-10);
  const auto curve = make_curve(DomainSpec::unit_disk(256));
  const auto conj = verify::manufactured_case("conj_reject", curve).data(ProblemKind::dirichlet);
  const double v = std::abs(boundary_integral(conj, Measure::dzeta));
  note(o, std::abs(v - 2.0 * kPi) <= 1e-8, "conj: |integral| - 2pi = %.2e (tol %.0e)", v - 2.0 * kPi, 1e-8);
  return o;
}

Outcome criterion9() {
  Outcome o;
  double worst_change = 0.0, min_ntm = 1e300;
  for (const auto& spec : {DomainSpec::unit_disk(256), DomainSpec::unit_square(256)}) {
    for (const auto& name : {"poly3", "exp", "rational_pole_out", "robin_linear"}) {
      const auto a = verify::embedding_probe(name, make_curve(spec));
      const auto b = verify::embedding_probe(name, make_curve(spec.with_nodes(512)));
      for (const double x : {a.holder_ratio, a.ntm_ratio, b.holder_ratio, b.ntm_ratio}) {
        if (!std::isfinite(x)) fail(o, std::string(name) + " ratio not finite");
      }
      min_ntm = std::min({min_ntm, a.ntm_ratio, b.ntm_ratio});
      worst_change = std::max({worst_change, std::abs(b.holder_ratio / a.holder_ratio - 1.0),
                               std::abs(b.ntm_ratio / a.ntm_ratio - 1.0)});
    }
  }
  note(o, min_ntm >= 1.0, "min ||F*||/||trace|| = %.4f (>= %.0f)", min_ntm, 1.0);
  note(o, worst_change < 0.2, "worst relative change 256->512 = %.3f (< %.1f)", worst_change, 0.2);
  return o;
}

Outcome criterion10() {
  Outcome o;
  const auto disk = verify::run_convergence("poly3", DomainSpec::unit_disk(64), ProblemKind::dirichlet,
                                            {64, 128, 256});
  note(o, disk.monotone() && disk.interior_error.back() <= 1e-9, "disk final error %.2e (tol %.0e)",
       disk.interior_error.back(), 1e-9);
  const auto sq = verify::run_convergence("poly3", DomainSpec::unit_square(128), ProblemKind::dirichlet,
                                          {128, 256, 512});
  char buf[160];
  std::snprintf(buf, sizeof buf, "square errors %.2e, %.2e, %.2e", sq.interior_error[0],
                sq.interior_error[1], sq.interior_error[2]);
  o.detail += std::string("; ") + buf;
  if (!sq.monotone()) fail(o, "square monotone decay");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"1 Cauchy integral of 1", criterion1},
      {"2 Dirichlet characterization", criterion2},
      {"3 regularity tangential identity", criterion3},
      {"4 Neumann reconstruction", criterion4},
      {"5 Robin operator", criterion5},
      {"6 Robin solve", criterion6},
      {"7 Robin non-uniqueness", criterion7},
      {"8 Cauchy theorem", criterion8},
      {"9 embedding probes", criterion9},
      {"10 convergence", criterion10},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  %-34s %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
    if (!o.pass) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
