#include "dbar/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "dbar/errors.hpp"
#include "dbar/expr.hpp"
#include "dbar/io.hpp"
#include "dbar/report.hpp"
#include "dbar/solvers.hpp"
#include "dbar/verify.hpp"

namespace dbar::cli {

namespace {

struct Options {
  std::string domain = "disk";
  std::string center = "0";
  double radius = 1.0;
  std::string vertices;
  std::string axes = "2,1";
  std::string coeffs;
  int n = 256;
  std::string problem = "dirichlet";
  std::string case_name;
  std::string data;
  std::string csv;
  std::string b = "1/2";
  bool b_given = false;
  std::string alpha;
  double p = 2.0;
  double tau = 1e-6;
  double delta_c = 1e-8;
  std::string trace = "auto";
  int order = 2;
  std::string depths = "1,0.5,0.25";
  std::string sizes = "64,128,256";
  std::string out = "dbar_out";
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw DataError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw DataError("not a number: '" + s + "'");
  return v;
}

cplx constant(const std::string& text) { return parse_expression(text)(0.0, 1.0); }

cplx pair_value(const std::string& text) {
  const auto xy = split(text, ',');
  if (xy.size() != 2) throw DataError("expected 'x,y', got '" + text + "'");
  return {to_double(xy[0]), to_double(xy[1])};
}

DomainSpec make_domain(const Options& o) {
  if (o.domain == "disk") return DomainSpec::disk(constant(o.center), o.radius, o.n);
  if (o.domain == "square") return DomainSpec::unit_square(o.n);
  if (o.domain == "polygon") {
    if (o.vertices.empty()) throw InvalidArgument("--domain polygon needs --vertices");
    std::vector<cplx> v;
    for (const auto& item : split(o.vertices, ';')) v.push_back(pair_value(item));
    return DomainSpec::polygon(std::move(v), o.n);
  }
  if (o.domain == "ellipse") {
    const cplx ab = pair_value(o.axes);
    return DomainSpec::ellipse(ab.real(), ab.imag(), o.n);
  }
  if (o.domain == "parametric") {
    if (o.coeffs.empty()) throw InvalidArgument("--domain parametric needs --coeffs");
    std::vector<std::pair<int, cplx>> c;
    for (const auto& item : split(o.coeffs, ';')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw DataError("expected 'k:re,im', got '" + item + "'");
      c.emplace_back(static_cast<int>(to_double(item.substr(0, colon))), pair_value(item.substr(colon + 1)));
    }
    return DomainSpec::parametric(std::move(c), o.n);
  }
  throw InvalidArgument("unknown domain '" + o.domain + "'");
}

SolveConfig make_config(const Options& o, const BoundaryCurve& curve) {
  SolveConfig cfg;
  cfg.p = o.p;
  cfg.tau = o.tau;
  cfg.delta_c = o.delta_c;
  if (o.trace == "pv") {
    cfg.trace = PvSubtraction{};
  } else if (o.trace == "offset") {
    std::vector<double> m;
    for (const auto& d : split(o.depths, ',')) m.push_back(to_double(d));
    cfg.trace = OffsetExtrapolation{ConeConfig::grid_scaled(curve, m), o.order};
  } else if (o.trace != "auto") {
    throw InvalidArgument("unknown trace method '" + o.trace + "' (auto|pv|offset)");
  }
  cfg.validate();
  return cfg;
}

// Boundary data and Robin coefficient sources, resampleable on any curve
// except CSV input.
struct Source {
  const Options& o;
  ProblemKind kind;

  bool resampleable() const { return o.csv.empty(); }

  BoundaryFunction data(const CurvePtr& curve) const {
    if (!o.case_name.empty()) return verify::manufactured_case(o.case_name, curve).data(kind);
    if (!o.data.empty()) return BoundaryFunction::sample(curve, parse_expression(o.data));
    return io::read_boundary_csv(std::filesystem::path(o.csv), curve);
  }

  BoundaryFunction coefficient(const CurvePtr& curve) const {
    if (!o.case_name.empty() && !o.b_given) {
      return verify::manufactured_case(o.case_name, curve).coefficient().b();
    }
    return BoundaryFunction::sample(curve, parse_expression(o.b));
  }
};

void require_one_source(const Options& o) {
  const int count = !o.case_name.empty() + !o.data.empty() + !o.csv.empty();
  if (count != 1) throw InvalidArgument("give exactly one of --case, --data (or --r), --csv");
}

std::filesystem::path out_dir(const Options& o) { return std::filesystem::path(o.out); }

void write_report(const Options& o, const SolveReport& rep, std::ostream& out) {
  const auto path = out_dir(o) / "report.json";
  io::write_text(path, to_json(rep, utc_timestamp()).dump(2) + "\n");
  out << "verdict=" << (rep.accepted ? "accepted" : "rejected") << " residual=" << rep.residual
      << " report=" << path.string() << "\n";
}

int finish(const SolveReport& rep, std::ostream& err) {
  if (rep.accepted) return kSuccess;
  err << "rejected: " << to_string(rep.problem) << " residual " << rep.residual << " > tau "
      << rep.tau << "\n";
  return kRejected;
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
  require_one_source(o);
  const auto kind = parse_problem_kind(o.problem);
  const auto curve = make_curve(make_domain(o));
  const auto cfg = make_config(o, *curve);
  const Source src{o, kind};
  const auto f = src.data(curve);
  io::write_boundary_csv(out_dir(o) / "data.csv", f);

  auto emit = [&](const Solution& s) {
    const auto& density = s.evaluator.density();
    io::write_boundary_csv(out_dir(o) / "density.csv", density);
    io::write_boundary_csv(out_dir(o) / "trace.csv", cauchy_trace(density, cfg.trace_for(*curve)));
    write_report(o, s.report, out);
    return finish(s.report, err);
  };
  switch (kind) {
    case ProblemKind::dirichlet: return emit(solve_dirichlet(f, cfg));
    case ProblemKind::regularity: return emit(solve_regularity(f, cfg));
    case ProblemKind::neumann: {
      const cplx alpha = o.alpha.empty() ? curve->centroid() : constant(o.alpha);
      return emit(solve_neumann(f, alpha, cfg));
    }
    case ProblemKind::robin: {
      const RobinCoefficient coef(src.coefficient(curve));
      try {
        return emit(solve_robin(coef, f, cfg));
      } catch (const MembershipRejected& e) {
        write_report(o, e.report(), out);
        return finish(e.report(), err);
      }
    }
  }
  return kUsage;
}

int cmd_membership(const Options& o, std::ostream& out, std::ostream& err) {
  require_one_source(o);
  const auto kind = parse_problem_kind(o.problem);
  const auto domain = make_domain(o);
  const auto curve = make_curve(domain);
  const auto cfg = make_config(o, *curve);
  const Source src{o, kind};
  SolveReport rep;
  if (src.resampleable()) {
    DataSampler b;
    if (kind == ProblemKind::robin) b = [&](const CurvePtr& c) { return src.coefficient(c); };
    rep = membership_refined(kind, domain, [&](const CurvePtr& c) { return src.data(c); }, cfg, b);
  } else {
    const auto f = src.data(curve);
    if (kind == ProblemKind::robin) {
      const RobinCoefficient coef(src.coefficient(curve));
      rep = membership(kind, f, cfg, &coef);
    } else {
      rep = membership(kind, f, cfg);
    }
  }
  write_report(o, rep, out);
  return finish(rep, err);
}

int cmd_converge(const Options& o, std::ostream& out, std::ostream&) {
  if (o.case_name.empty()) throw InvalidArgument("converge needs --case");
  std::vector<std::size_t> sizes;
  for (const auto& s : split(o.sizes, ',')) sizes.push_back(static_cast<std::size_t>(to_double(s)));
  const auto kind = parse_problem_kind(o.problem);
  const auto domain = make_domain(o);
  SolveConfig cfg;
  cfg.p = o.p;
  cfg.tau = o.tau;
  cfg.delta_c = o.delta_c;
  if (o.trace == "pv") cfg.trace = PvSubtraction{};
  const auto t = verify::run_convergence(o.case_name, domain, kind, sizes, cfg);
  io::write_text(out_dir(o) / "convergence.csv", t.to_csv());
  io::write_text(out_dir(o) / "convergence.dat", t.to_dat());
  nlohmann::ordered_json j;
  j["schema"] = "dbar.convergence/1";
  j["case"] = t.case_name;
  j["problem"] = t.problem;
  j["domain"] = t.domain;
  j["sizes"] = t.sizes;
  j["interior_error"] = t.interior_error;
  j["trace_residual"] = t.trace_residual;
  j["orders"] = t.orders;
  j["roundoff_floor"] = t.roundoff_floor;
  j["monotone"] = t.monotone();
  io::write_text(out_dir(o) / "convergence.json", j.dump(2) + "\n");
  out << t.to_csv();
  return kSuccess;
}

int cmd_demo(const Options& o, std::ostream& out, std::ostream& err) {
  const auto d = verify::nonuniqueness_demo(static_cast<std::size_t>(o.n));
  nlohmann::ordered_json j;
  j["schema"] = "dbar.nonuniqueness/1";
  j["margin"] = d.margin;
  j["solve_refused"] = d.solve_refused;
  j["refusal"] = d.refusal;
  bool ok = d.margin <= 1e-12 && d.solve_refused;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& [c, res] : d.residuals) {
    rows.push_back({{"C", {{"re", c.real()}, {"im", c.imag()}}}, {"residual", res}});
    ok = ok && res <= 1e-10;
  }
  j["solutions"] = rows;
  j["verified"] = ok;
  io::write_text(out_dir(o) / "nonuniqueness.json", j.dump(2) + "\n");
  out << "margin=" << d.margin << " refused=" << (d.solve_refused ? "yes" : "no") << "\n";
  for (const auto& [c, res] : d.residuals) out << "C=" << c << " residual=" << res << "\n";
  if (!ok) {
    err << "demo: non-uniqueness checks failed\n";
    return kRejected;
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Boundary value problems for the Cauchy-Riemann operator on planar domains", "dbar"};
  app.set_config("--config", "", "Key=value file with long option names as keys");
  app.require_subcommand(1);
  app.add_option("--domain", o.domain, "disk|square|polygon|ellipse|parametric")->capture_default_str();
  app.add_option("--center", o.center, "Disk centre (expression)")->capture_default_str();
  app.add_option("--radius", o.radius, "Disk radius")->capture_default_str();
  app.add_option("--vertices", o.vertices, "Polygon vertices 'x,y;x,y;...' counterclockwise");
  app.add_option("--axes", o.axes, "Ellipse semi-axes 'a,b'")->capture_default_str();
  app.add_option("--coeffs", o.coeffs, "Fourier coefficients 'k:re,im;...'");
  app.add_option("--n", o.n, "Number of boundary nodes")->capture_default_str();
  app.add_option("--problem", o.problem, "dirichlet|regularity|neumann|robin")->capture_default_str();
  app.add_option("--case", o.case_name, "Catalog case");
  app.add_option("--data,--r", o.data, "Boundary data expression in z, T");
  app.add_option("--csv", o.csv, "Boundary data CSV (s,re,im)");
  auto* bopt = app.add_option("--b", o.b, "Robin coefficient expression")->capture_default_str();
  app.add_option("--alpha", o.alpha, "Neumann base point (expression; default: centroid)");
  app.add_option("--p", o.p, "Lebesgue exponent in (1, inf)")->capture_default_str();
  app.add_option("--tau", o.tau, "Membership tolerance")->capture_default_str();
  app.add_option("--delta-c", o.delta_c, "Compatibility margin")->capture_default_str();
  app.add_option("--trace", o.trace, "auto|pv|offset")->capture_default_str();
  app.add_option("--order", o.order, "Offset extrapolation order (1|2)")->capture_default_str();
  app.add_option("--depths", o.depths, "Offset depths in units of the largest node weight")
      ->capture_default_str();
  app.add_option("--sizes", o.sizes, "Grid sizes for converge")->capture_default_str();
  app.add_option("--out", o.out, "Output directory")->envname("DBAR_OUT")->capture_default_str();

  auto* solve = app.add_subcommand("solve", "Solve and write report, data, density and trace");
  auto* member = app.add_subcommand("membership", "Data-space membership test");
  auto* converge = app.add_subcommand("converge", "Convergence study of a catalog case");
  auto* demo = app.add_subcommand("demo-nonuniqueness", "Robin coefficient b = -1 on the unit disk");
  for (auto* sub : {solve, member, converge, demo}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage: " << e.what() << "\n";
    return kUsage;
  }
  o.b_given = bopt->count() > 0;

  try {
    if (solve->parsed()) return cmd_solve(o, out, err);
    if (member->parsed()) return cmd_membership(o, out, err);
    if (converge->parsed()) return cmd_converge(o, out, err);
    return cmd_demo(o, out, err);
  } catch (const CompatibilityError& e) {
    err << e.what() << "\n";
    return kCompatibility;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace dbar::cli
