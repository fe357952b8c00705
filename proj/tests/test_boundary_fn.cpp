#include <doctest.h>

#include <cmath>

#include "dbar/boundary_fn.hpp"
#include "dbar/errors.hpp"

using namespace dbar;

namespace {

CurvePtr disk(std::size_t n = 256) { return make_curve(DomainSpec::unit_disk(n)); }

BoundaryFunction of_z(const CurvePtr& c, cplx (*fn)(cplx)) {
  return BoundaryFunction::sample(c, [fn](cplx z, cplx) { return fn(z); });
}

double max_diff(const BoundaryFunction& a, const BoundaryFunction& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

// Relative L2 distance.
double rel_l2(const BoundaryFunction& a, const BoundaryFunction& b) {
  return lp_norm(a - b, 2.0) / lp_norm(b, 2.0);
}

}  // namespace

TEST_CASE("values must match the curve and be finite") {
  const auto c = disk(16);
  CHECK_THROWS_AS(BoundaryFunction(c, std::vector<cplx>(15)), InvalidArgument);
  std::vector<cplx> bad(16, 0.0);
  bad[3] = std::nan("");
  CHECK_THROWS_AS(BoundaryFunction(c, bad), InvalidArgument);
  CHECK_THROWS_AS(BoundaryFunction(c) + BoundaryFunction(disk(16)), InvalidArgument);
}

TEST_CASE("lp norms") {
  const auto c = disk();
  CHECK(std::abs(lp_norm(BoundaryFunction::constant(c, 1.0), 2.0) - std::sqrt(2.0 * kPi)) <= 1e-10);
  for (const double p : {1.0, 2.0, 3.5, kSupNorm}) CHECK(lp_norm(BoundaryFunction(c), p) == 0.0);
  CHECK(std::abs(lp_norm(of_z(c, [](cplx z) { return z; }), 2.0) - std::sqrt(2.0 * kPi)) <= 1e-10);
  CHECK(lp_norm(BoundaryFunction::constant(c, cplx(3.0, 4.0)), kSupNorm) == doctest::Approx(5.0));
  CHECK_THROWS_AS(lp_norm(BoundaryFunction(c), 0.5), InvalidArgument);
}

TEST_CASE("boundary integrals") {
  const auto c = disk();
  CHECK(std::abs(boundary_integral(of_z(c, [](cplx z) { return z * z; }), Measure::dzeta)) <= 1e-12);
  CHECK(std::abs(boundary_integral(of_z(c, [](cplx z) { return std::conj(z); }), Measure::dzeta) -
                 cplx(0.0, 2.0 * kPi)) <= 1e-10);
  CHECK(std::abs(boundary_integral(BoundaryFunction::constant(c, 1.0), Measure::arclength) - 2.0 * kPi) <= 1e-12);
  const auto sq = make_curve(DomainSpec::unit_square(256));
  CHECK(std::abs(boundary_integral(of_z(sq, [](cplx z) { return z * z * z; }), Measure::dzeta)) <= 1e-12);
}

TEST_CASE("tangential derivative on the disk") {
  const auto c = disk();
  const auto z = of_z(c, [](cplx w) { return w; });
  CHECK(max_diff(tangential_derivative(z), of_z(c, [](cplx w) { return I * w; })) <= 1e-10);
  CHECK(lp_norm(tangential_derivative(BoundaryFunction::constant(c, cplx(2.0, -1.0))), kSupNorm) <= 1e-12);
  CHECK(max_diff(tangential_derivative(of_z(c, [](cplx w) { return w * w; })),
                 of_z(c, [](cplx w) { return 2.0 * I * w * w; })) <= 1e-8);
}

TEST_CASE("tangential derivative on polygons") {
  const auto sq = make_curve(DomainSpec::unit_square(256));
  const auto f = of_z(sq, [](cplx z) { return z * z * z; });
  const auto expected = BoundaryFunction::sample(sq, [](cplx z, cplx T) { return 3.0 * z * z * T; });
  // Fourth-order differences are exact for cubics on each side.
  CHECK(max_diff(tangential_derivative(f), expected) <= 1e-10);
  CHECK_THROWS_AS(tangential_derivative(BoundaryFunction(make_curve(DomainSpec::polygon({{0, 0}, {2, 0}, {1, 1}}, 20)))),
                  InvalidArgument);
}

TEST_CASE("cumulative primitive") {
  const auto c = disk();
  REQUIRE(std::abs(c->nodes()[0] - 1.0) <= 1e-15);
  const auto g = of_z(c, [](cplx z) { return 2.0 * z * z; });
  const auto h = cumulative_primitive(g, 0);
  CHECK(h[0] == cplx(0.0));
  CHECK(max_diff(h, of_z(c, [](cplx z) { return z * z - 1.0; })) <= 1e-8);
  CHECK(lp_norm(cumulative_primitive(BoundaryFunction(c), 5), kSupNorm) == 0.0);
  CHECK(cumulative_primitive(g, 7)[7] == cplx(0.0));
  CHECK_THROWS_AS(cumulative_primitive(g, c->size()), InvalidArgument);
}

TEST_CASE("primitive then derivative returns i g") {
  auto trig = [](cplx z, cplx) { return 1.0 / z + 0.5 * z * z - cplx(0.0, 0.3) * std::pow(std::conj(z), 3); };
  const auto c = disk(128);
  // Zero mean so the primitive closes up.
  const auto g = BoundaryFunction::sample(c, trig);
  CHECK(rel_l2(tangential_derivative(cumulative_primitive(g, 0)), I * g) <= 1e-6);

  double prev = 1.0;
  for (std::size_t n : {64u, 128u, 256u}) {
    const auto sq = make_curve(DomainSpec::unit_square(n));
    const auto gs = BoundaryFunction::sample(sq, [](cplx z, cplx T) { return 2.0 * z * T; });
    const double err = rel_l2(tangential_derivative(cumulative_primitive(gs, 0)), I * gs);
    CHECK(err <= std::max(prev, 1e-12));
    prev = err;
  }
  CHECK(prev <= 1e-6);
}

TEST_CASE("arc primitive with a twist") {
  const auto c = disk(64);
  // Density exp(i beta s) jumps by exp(2 pi i beta) across node 0.
  const cplx beta{0.25, 0.1};
  std::vector<cplx> v(64);
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::exp(I * beta * c->arclength()[j]);
  const auto p = arc_primitive(*c, v, beta);
  const cplx expected = (std::exp(I * beta * (2.0 * kPi)) - 1.0) / (I * beta);
  CHECK(std::abs(p.total - expected) <= 1e-12);
  CHECK(std::abs(p.at_nodes[0]) <= 1e-14);
  CHECK(std::abs(p.at_nodes[16] - (std::exp(I * beta * (kPi / 2.0)) - 1.0) / (I * beta)) <= 1e-12);
}

TEST_CASE("Hoelder seminorm") {
  const auto c = disk(256);
  CHECK(holder_seminorm(BoundaryFunction::constant(c, 4.0), 0.5) == 0.0);
  const auto z = of_z(c, [](cplx w) { return w; });
  CHECK(holder_seminorm(z, 0.5) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  auto shifted = z;
  shifted += cplx(3.0, -2.0);
  CHECK(holder_seminorm(shifted, 0.5) == doctest::Approx(holder_seminorm(z, 0.5)).epsilon(1e-12));
  CHECK(holder_seminorm(z, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(holder_seminorm(z, 0.0), InvalidArgument);
  CHECK_THROWS_AS(holder_seminorm(z, 1.5), InvalidArgument);

  // Sampled pairs above the all-pairs limit are reproducible for a fixed seed.
  const auto big = of_z(disk(4096), [](cplx w) { return w * w; });
  CHECK(holder_seminorm(big, 0.5, 3) == holder_seminorm(big, 0.5, 3));
  CHECK(holder_seminorm(big, 0.5) <= 2.0 * std::sqrt(2.0) + 1e-9);
}

TEST_CASE("w1p is a norm on samples") {
  const auto c = make_curve(DomainSpec::ellipse(1.0, 0.6, 128));
  const auto f = of_z(c, [](cplx z) { return z * z + 1.0; });
  const auto g = of_z(c, [](cplx z) { return std::exp(z); });
  for (const double p : {1.5, 2.0, 4.0}) {
    CHECK(w1p_norm(f + g, p) <= w1p_norm(f, p) + w1p_norm(g, p) + 1e-12);
    CHECK(w1p_norm(cplx(0.0, -3.0) * f, p) == doctest::Approx(3.0 * w1p_norm(f, p)).epsilon(1e-13));
  }
}

TEST_CASE("tangent powers and conjugation") {
  const auto c = disk(32);
  const auto one = BoundaryFunction::constant(c, 1.0);
  const auto t = one.times_tangent(1);
  const auto tb = one.times_tangent(-1);
  for (std::size_t j = 0; j < c->size(); ++j) {
    CHECK(std::abs(t[j] * tb[j] - 1.0) <= 1e-14);
    CHECK(std::abs(t.conj()[j] - tb[j]) <= 1e-14);
  }
}
