#include <doctest.h>

#include <sstream>

#include "dbar/errors.hpp"
#include "dbar/expr.hpp"
#include "dbar/io.hpp"
#include "dbar/solvers.hpp"

using namespace dbar;

namespace {

cplx eval(const std::string& text, cplx z, cplx t = 1.0) { return parse_expression(text)(z, t); }

}  // namespace

TEST_CASE("expression arithmetic") {
  const cplx z{0.3, -0.4};
  CHECK(std::abs(eval("z^3 + 2*z", z) - (z * z * z + 2.0 * z)) <= 1e-15);
  CHECK(std::abs(eval("1/2", z) - 0.5) <= 1e-16);
  CHECK(std::abs(eval("-1", z) + 1.0) <= 1e-16);
  CHECK(std::abs(eval("2 - 3 - 4", z) + 5.0) <= 1e-15);
  CHECK(std::abs(eval("12 / 3 / 2", z) - 2.0) <= 1e-15);
  CHECK(std::abs(eval("2^3^2", z) - 512.0) <= 1e-12);
  CHECK(std::abs(eval("-z^2", z) + z * z) <= 1e-15);
  CHECK(std::abs(eval("(1 + 2i) * i", z) - cplx(-2.0, 1.0)) <= 1e-15);
  CHECK(std::abs(eval("1.5e1", z) - 15.0) <= 1e-15);
  CHECK(std::abs(eval("z^-1", z) - 1.0 / z) <= 1e-15);
  CHECK(std::abs(eval("2*pi", z) - 2.0 * kPi) <= 1e-15);
}

TEST_CASE("expression functions and variables") {
  const cplx z{0.6, 0.8}, t{-0.8, 0.6};
  CHECK(eval("conj", z) == std::conj(z));
  CHECK(eval("conj(zeta)", z) == std::conj(z));
  CHECK(std::abs(eval("exp(i*z)", z) - std::exp(cplx(0.0, 1.0) * z)) <= 1e-15);
  CHECK(std::abs(eval("exp", z) - std::exp(z)) <= 1e-15);
  CHECK(eval("T", z, t) == t);
  CHECK(std::abs(eval("-i*T*2*z", z, t) - cplx(0.0, -1.0) * t * 2.0 * z) <= 1e-15);
  CHECK(std::abs(eval("z^0.5", cplx(4.0, 0.0)) - 2.0) <= 1e-15);
}

TEST_CASE("expression errors carry the position") {
  for (const std::string bad : {"", "1 +", "(z", "z)", "foo", "2 ** 3", "sin(z)", "conj(", "1..2"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_expression(bad), DataError);
  }
  CHECK_THROWS_WITH_AS(parse_expression("z + $"), doctest::Contains("5"), DataError);
}

TEST_CASE("boundary CSV round trip is exact") {
  const auto curve = make_curve(DomainSpec::unit_square(64));
  const auto f = BoundaryFunction::sample(curve, [](cplx z, cplx) { return std::exp(z) / 3.0; });
  std::stringstream ss;
  io::write_boundary_csv(ss, f);
  const std::string text = ss.str();
  CHECK(text.rfind("s,re,im\n", 0) == 0);
  const auto g = io::read_boundary_csv(ss, curve);
  for (std::size_t j = 0; j < f.size(); ++j) CHECK(g[j] == f[j]);
}

TEST_CASE("malformed CSV is rejected") {
  const auto curve = make_curve(DomainSpec::unit_disk(16));
  const auto f = BoundaryFunction::constant(curve, 1.0);
  std::stringstream good;
  io::write_boundary_csv(good, f);
  const std::string text = good.str();

  auto reject = [&](const std::string& bad) {
    std::istringstream is(bad);
    CHECK_THROWS_AS(io::read_boundary_csv(is, curve), DataError);
  };
  reject("");
  reject("x,y,z\n");
  reject(text.substr(0, text.rfind('\n', text.size() - 2) + 1));  // one row short
  reject(text + "7,1,0\n");                                        // one row long
  reject("s,re,im\n0,1\n");
  reject("s,re,im\n0,abc,0\n");
  // s column from another curve
  std::stringstream other;
  io::write_boundary_csv(other, BoundaryFunction::constant(make_curve(DomainSpec::disk(0.0, 2.0, 16)), 1.0));
  reject(other.str());
}

TEST_CASE("exported trace re-imported as data gives the same verdict") {
  const auto curve = make_curve(DomainSpec::unit_square(256));
  const auto f = BoundaryFunction::sample(curve, [](cplx z, cplx) { return z * z * z + 2.0 * z; });
  const auto trace = cauchy_trace(f, default_trace_method(*curve));
  const auto direct = membership(ProblemKind::dirichlet, trace);

  const auto path = std::filesystem::temp_directory_path() / "dbar_test_trace.csv";
  io::write_boundary_csv(path, trace);
  const auto back = io::read_boundary_csv(path, curve);
  const auto again = membership(ProblemKind::dirichlet, back);
  CHECK(again.accepted == direct.accepted);
  CHECK(std::abs(again.residual - direct.residual) <= 1e-12);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(io::read_boundary_csv(path, curve), DataError);
}

TEST_CASE("write_text creates directories") {
  const auto dir = std::filesystem::temp_directory_path() / "dbar_test_dir" / "nested";
  std::filesystem::remove_all(dir.parent_path());
  io::write_text(dir / "x.txt", "hello\n");
  CHECK(std::filesystem::file_size(dir / "x.txt") == 6);
  std::filesystem::remove_all(dir.parent_path());
}
