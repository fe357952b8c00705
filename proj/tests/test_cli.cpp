#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "dbar/cli.hpp"

namespace fs = std::filesystem;
using dbar::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "dbar_cli_test" / name;
  fs::remove_all(dir);
  return dir;
}

nlohmann::ordered_json read_json(const fs::path& path) {
  std::ifstream is(path);
  REQUIRE(is.good());
  return nlohmann::ordered_json::parse(is);
}

}  // namespace

TEST_CASE("solve a catalog case") {
  const auto dir = fresh_dir("solve");
  const auto r = call({"solve", "--domain", "disk", "--problem", "dirichlet", "--case", "poly3", "--p", "2",
                       "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  const auto j = read_json(dir / "report.json");
  CHECK(j["schema"] == "dbar.solve_report/1");
  CHECK(j["verdict"] == "accepted");
  CHECK(j["residual"].get<double>() <= 1e-8);
  CHECK(j["problem"] == "dirichlet");
  CHECK(j["grid_size"] == 256);
  for (const char* f : {"data.csv", "density.csv", "trace.csv"}) CHECK(fs::exists(dir / f));
}

TEST_CASE("Robin coefficient -1 fails the compatibility test") {
  const auto dir = fresh_dir("robin");
  const auto r = call({"solve", "--domain", "disk", "--problem", "robin", "--b", "-1", "--r", "0",
                       "--out", dir.string()});
  CHECK(r.code == 3);
  const std::string prefix = "compatibility: |exp(i*integral b)-1| = ";
  REQUIRE(r.err.rfind(prefix, 0) == 0);
  CHECK(std::stod(r.err.substr(prefix.size())) <= 1e-12);
  CHECK(r.err.find('\n') == r.err.size() - 1);
}

TEST_CASE("Neumann data with nonzero mean fails the compatibility test") {
  const auto r = call({"solve", "--problem", "neumann", "--data", "1", "--out", fresh_dir("neumann").string()});
  CHECK(r.code == 3);
  CHECK(r.err.rfind("compatibility: ", 0) == 0);
}

TEST_CASE("membership rejection writes the report") {
  const auto dir = fresh_dir("conj");
  const auto r = call({"membership", "--problem", "dirichlet", "--data", "conj", "--out", dir.string()});
  CHECK(r.code == 2);
  CHECK(r.err.rfind("rejected: ", 0) == 0);
  const auto j = read_json(dir / "report.json");
  CHECK(j["verdict"] == "rejected");
  CHECK(j["residual"].get<double>() > j["tau"].get<double>());
  // The data can be resampled, so the verdict was confirmed on a finer grid.
  CHECK(j["refined_grid_size"] == 512);
}

TEST_CASE("every problem kind through solve") {
  for (const std::string problem : {"dirichlet", "regularity", "neumann", "robin"}) {
    for (const std::string domain : {"disk", "square"}) {
      CAPTURE(problem);
      CAPTURE(domain);
      const auto dir = fresh_dir(problem + "_" + domain);
      const auto r = call({"solve", "--domain", domain, "--n", "512", "--problem", problem, "--case", "exp",
                           "--out", dir.string()});
      CHECK(r.code == 0);
      const auto j = read_json(dir / "report.json");
      CHECK(j["verdict"] == "accepted");
      CHECK(j["problem"] == problem);
    }
  }
}

TEST_CASE("other domains and data sources") {
  CHECK(call({"solve", "--domain", "ellipse", "--axes", "1.5,1", "--n", "128", "--data", "exp(z)*z",
              "--out", fresh_dir("ellipse").string()}).code == 0);
  CHECK(call({"solve", "--domain", "polygon", "--vertices", "0,0;2,0;1,1.5", "--n", "600", "--data", "z^2",
              "--out", fresh_dir("triangle").string()}).code == 0);
  CHECK(call({"solve", "--domain", "parametric", "--coeffs", "1:1,0;-1:0.2,0", "--n", "128", "--data", "z",
              "--out", fresh_dir("param").string()}).code == 0);
  CHECK(call({"solve", "--domain", "disk", "--center", "1+i", "--radius", "0.5", "--n", "128", "--data",
              "1/z", "--out", fresh_dir("shifted").string()}).code == 0);
  CHECK(call({"solve", "--problem", "robin", "--b", "0.3+0.1*z", "--r", "z^2", "--out",
              fresh_dir("robin_expr").string()}).code == 0);
}

TEST_CASE("trace method options") {
  const auto dir = fresh_dir("trace");
  CHECK(call({"solve", "--case", "poly3", "--trace", "offset", "--order", "2", "--depths", "0.5,0.25,0.125",
              "--out", dir.string()}).code == 0);
  // Depths are reported in absolute units: 0.5 * max weight = 0.5 * 2 pi / 256.
  CHECK(read_json(dir / "report.json")["trace_method"].get<std::string>().rfind(
            "offset_extrapolation(order=2;depths=0.0122718,", 0) == 0);
  // First-order extrapolation leaves an O(eps^2) trace error: rejected at the
  // default tau, but the report still names the method.
  const auto r = call({"solve", "--case", "poly3", "--trace", "offset", "--order", "1", "--out", dir.string()});
  CHECK((r.code == 0 || r.code == 2));
  const auto j = read_json(dir / "report.json");
  CHECK(j["trace_method"].get<std::string>().rfind("offset_extrapolation(order=1;", 0) == 0);
  CHECK(call({"solve", "--domain", "square", "--case", "poly3", "--trace", "pv", "--out", dir.string()}).code == 1);
  CHECK(call({"solve", "--case", "poly3", "--trace", "fancy", "--out", dir.string()}).code == 1);
  CHECK(call({"solve", "--case", "poly3", "--trace", "offset", "--order", "3", "--out", dir.string()}).code == 1);
}

TEST_CASE("usage errors exit with 1") {
  const auto dir = fresh_dir("usage").string();
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"frobnicate"},
           {"solve", "--bogus", "--out", dir},
           {"solve", "--case", "poly3", "--data", "z", "--out", dir},
           {"solve", "--out", dir},
           {"solve", "--data", "z +", "--out", dir},
           {"solve", "--case", "poly9", "--out", dir},
           {"solve", "--domain", "torus", "--data", "z", "--out", dir},
           {"solve", "--data", "z", "--n", "8", "--out", dir},
           {"solve", "--data", "z", "--p", "1", "--out", dir},
           {"solve", "--data", "z", "--n", "many", "--out", dir},
           {"solve", "--csv", "/nonexistent/file.csv", "--out", dir},
           {"solve", "--domain", "polygon", "--data", "z", "--out", dir},
           {"converge", "--data", "z", "--out", dir}}) {
    CAPTURE(args.size());
    const auto r = call(args);
    CHECK(r.code == 1);
    CHECK((r.err.rfind("usage: ", 0) == 0 || r.err.rfind("error: ", 0) == 0));
  }
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("config file with flag overrides") {
  const auto dir = fresh_dir("config");
  fs::create_directories(dir);
  const auto cfg = dir / "run.conf";
  std::ofstream(cfg) << "# square Neumann run\ndomain = square\nn = 256\nproblem = neumann\ncase = exp\n";
  CHECK(call({"solve", "--config", cfg.string(), "--out", dir.string()}).code == 0);
  auto j = read_json(dir / "report.json");
  CHECK(j["problem"] == "neumann");
  CHECK(j["grid_size"] == 256);
  CHECK(j["domain"].get<std::string>().find("polygon") != std::string::npos);

  CHECK(call({"solve", "--config", cfg.string(), "--n", "512", "--out", dir.string()}).code == 0);
  j = read_json(dir / "report.json");
  CHECK(j["grid_size"] == 512);

  CHECK(call({"solve", "--config", (dir / "missing.conf").string(), "--out", dir.string()}).code == 1);
}

TEST_CASE("reports are identical apart from timing fields") {
  auto strip = [](nlohmann::ordered_json j) {
    j.erase("timestamp");
    j.erase("runtime_seconds");
    return j.dump(2);
  };
  const auto a = fresh_dir("repro_a"), b = fresh_dir("repro_b");
  const std::vector<std::string> base{"solve", "--domain", "square", "--problem", "robin", "--case", "exp"};
  auto args_a = base, args_b = base;
  args_a.insert(args_a.end(), {"--out", a.string()});
  args_b.insert(args_b.end(), {"--out", b.string()});
  REQUIRE(call(args_a).code == 0);
  REQUIRE(call(args_b).code == 0);
  const auto ja = read_json(a / "report.json"), jb = read_json(b / "report.json");
  CHECK(ja.contains("timestamp"));
  CHECK(strip(ja) == strip(jb));
  for (const char* f : {"data.csv", "density.csv", "trace.csv"}) {
    std::ifstream fa(a / f), fb(b / f);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    CHECK(sa.str() == sb.str());
  }
}

TEST_CASE("exported data re-imported from CSV keeps verdict and residual") {
  const auto dir = fresh_dir("roundtrip");
  REQUIRE(call({"solve", "--domain", "square", "--n", "512", "--case", "poly3", "--out", dir.string()}).code == 0);
  const double direct = read_json(dir / "report.json")["residual"].get<double>();
  const auto again = dir / "again";
  CHECK(call({"membership", "--domain", "square", "--n", "512", "--csv", (dir / "data.csv").string(), "--out",
              again.string()}).code == 0);
  CHECK(std::abs(read_json(again / "report.json")["residual"].get<double>() - direct) <= 1e-12);

  // The trace of an accepted solve is itself accepted data.
  const auto tr = dir / "trace_in";
  CHECK(call({"membership", "--domain", "square", "--n", "512", "--csv", (dir / "trace.csv").string(), "--out",
              tr.string()}).code == 0);
  // A CSV from another grid size does not fit the curve.
  CHECK(call({"membership", "--domain", "square", "--n", "128", "--csv", (dir / "data.csv").string(), "--out",
              tr.string()}).code == 1);
}

TEST_CASE("converge writes tables") {
  const auto dir = fresh_dir("converge");
  const auto r = call({"converge", "--domain", "square", "--case", "poly3", "--sizes", "128,256,512", "--out",
                       dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("size,interior_error,trace_residual,order", 0) == 0);
  for (const char* f : {"convergence.csv", "convergence.dat", "convergence.json"}) CHECK(fs::exists(dir / f));
  const auto j = read_json(dir / "convergence.json");
  CHECK(j["monotone"] == true);
  CHECK(j["sizes"].size() == 3);
}

TEST_CASE("non-uniqueness demo") {
  const auto dir = fresh_dir("demo");
  const auto r = call({"demo-nonuniqueness", "--out", dir.string()});
  CHECK(r.code == 0);
  const auto j = read_json(dir / "nonuniqueness.json");
  CHECK(j["verified"] == true);
  CHECK(j["solve_refused"] == true);
  CHECK(j["solutions"].size() == 4);
}

TEST_CASE("output directory from the environment") {
  const char* env = std::getenv("DBAR_OUT");
  if (env == nullptr) return;
  fs::remove_all(env);
  CHECK(call({"solve", "--case", "constant"}).code == 0);
  CHECK(fs::exists(fs::path(env) / "report.json"));
}
