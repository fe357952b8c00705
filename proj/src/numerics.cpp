#include "dbar/numerics.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "dbar/errors.hpp"

namespace dbar::numerics {

namespace {

constexpr cplx I{0.0, 1.0};

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// FFTW planning is not thread-safe; execution is.
std::vector<cplx> transform(std::span<const cplx> in, int sign) {
  const int n = static_cast<int>(in.size());
  std::vector<cplx> src(in.begin(), in.end());
  std::vector<cplx> out(in.size());
  if (n == 0) return out;
  auto* src_ptr = reinterpret_cast<fftw_complex*>(src.data());
  auto* out_ptr = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, src_ptr, out_ptr, sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace

std::vector<cplx> fourier_coefficients(std::span<const cplx> values) {
  auto c = transform(values, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(values.size());
  for (auto& x : c) x *= scale;
  return c;
}

std::vector<cplx> fourier_synthesis(std::span<const cplx> coefficients) {
  return transform(coefficients, FFTW_BACKWARD);
}

int wavenumber(std::size_t m, std::size_t n) {
  const auto k = static_cast<long>(m);
  const auto nn = static_cast<long>(n);
  return static_cast<int>(k < (nn + 1) / 2 ? k : k - nn);
}

std::vector<cplx> periodic_derivative(std::span<const cplx> values) {
  const std::size_t n = values.size();
  auto c = fourier_coefficients(values);
  for (std::size_t m = 0; m < n; ++m) {
    const int k = wavenumber(m, n);
    if (n % 2 == 0 && m == n / 2) {
      c[m] = 0.0;
    } else {
      c[m] *= cplx(0.0, static_cast<double>(k));
    }
  }
  return fourier_synthesis(c);
}

Primitive quasi_periodic_primitive(std::span<const cplx> values, cplx beta) {
  const std::size_t n = values.size();
  const double dt = 2.0 * std::numbers::pi / static_cast<double>(n);
  std::vector<cplx> q(n);
  for (std::size_t j = 0; j < n; ++j) {
    q[j] = values[j] * std::exp(-I * beta * (dt * static_cast<double>(j)));
  }
  auto c = fourier_coefficients(q);

  constexpr double resonance = 1e-12;
  cplx resonant = 0.0;
  std::vector<cplx> d(n, 0.0);
  auto add_mode = [&](std::size_t slot, double k, cplx a) {
    const cplx freq = beta + k;
    if (std::abs(freq) < resonance) {
      resonant += a;
    } else {
      d[slot] += a / (I * freq);
    }
  };
  for (std::size_t m = 0; m < n; ++m) {
    if (n % 2 == 0 && m == n / 2) {
      const double half = static_cast<double>(n / 2);
      add_mode(m, -half, 0.5 * c[m]);
      add_mode(m, half, 0.5 * c[m]);
    } else {
      add_mode(m, static_cast<double>(wavenumber(m, n)), c[m]);
    }
  }
  cplx offset = 0.0;
  for (const auto& x : d) offset += x;
  auto s = fourier_synthesis(d);

  Primitive out;
  out.at_nodes.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = dt * static_cast<double>(j);
    out.at_nodes[j] = std::exp(I * beta * t) * s[j] - offset + resonant * t;
  }
  out.total = (std::exp(I * beta * (2.0 * std::numbers::pi)) - 1.0) * offset +
              resonant * (2.0 * std::numbers::pi);
  return out;
}

std::vector<double> fd_weights(double x0, std::span<const double> xs, int order) {
  // Fornberg (1988), Math. Comp. 51, generation of finite difference formulas.
  const int n = static_cast<int>(xs.size()) - 1;
  const int m = order;
  std::vector<std::vector<double>> c(xs.size(), std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = xs[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = xs[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) {
        c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      }
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) w[i] = c[i][m];
  return w;
}

namespace {

// Integral over [a, b] of each Lagrange basis polynomial through xs.
std::vector<double> lagrange_integrals(std::span<const double> xs, double a, double b) {
  static constexpr double gx[4] = {-0.8611363115940526, -0.3399810435848563,
                                   0.3399810435848563, 0.8611363115940526};
  static constexpr double gw[4] = {0.3478548451374538, 0.6521451548625461,
                                   0.6521451548625461, 0.3478548451374538};
  std::vector<double> out(xs.size(), 0.0);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int q = 0; q < 4; ++q) {
    const double t = mid + half * gx[q];
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double l = 1.0;
      for (std::size_t k = 0; k < xs.size(); ++k) {
        if (k != i) l *= (t - xs[k]) / (xs[i] - xs[k]);
      }
      out[i] += half * gw[q] * l;
    }
  }
  return out;
}

MidpointRule build_midpoint_rule(std::size_t n) {
  MidpointRule rule;
  rule.n = n;
  // Six-point rules give a negative weight below eight nodes; fall back to
  // linear interpolation there.
  rule.stencil = n >= 8 ? 6 : std::min<std::size_t>(2, n);
  const std::size_t s = rule.stencil;
  std::vector<double> x(n);
  for (std::size_t m = 0; m < n; ++m) x[m] = static_cast<double>(m) + 0.5;
  rule.weights.assign(n, 0.0);

  auto accumulate = [&](std::size_t start, const std::vector<double>& w) {
    for (std::size_t k = 0; k < w.size(); ++k) rule.weights[start + k] += w[k];
  };
  rule.head = lagrange_integrals(std::span(x).subspan(0, s), 0.0, x[0]);
  accumulate(0, rule.head);
  for (std::size_t m = 0; m + 1 < n; ++m) {
    const long ideal = static_cast<long>(m) - static_cast<long>(s / 2) + 1;
    const auto start = static_cast<std::size_t>(
        std::clamp<long>(ideal, 0, static_cast<long>(n - s)));
    rule.cell_start.push_back(start);
    rule.cell.push_back(lagrange_integrals(std::span(x).subspan(start, s), x[m], x[m + 1]));
    accumulate(start, rule.cell.back());
  }
  rule.tail = lagrange_integrals(std::span(x).subspan(n - s, s), x[n - 1],
                                 static_cast<double>(n));
  accumulate(n - s, rule.tail);
  return rule;
}

DerivativeStencils build_derivative_stencils(std::size_t n) {
  DerivativeStencils st;
  std::vector<double> x(n);
  for (std::size_t m = 0; m < n; ++m) x[m] = static_cast<double>(m) + 0.5;
  for (std::size_t m = 0; m < n; ++m) {
    const auto start = static_cast<std::size_t>(
        std::clamp<long>(static_cast<long>(m) - 2, 0, static_cast<long>(n) - 5));
    st.start.push_back(start);
    st.weights.push_back(fd_weights(x[m], std::span(x).subspan(start, 5), 1));
  }
  return st;
}

template <class T, class Build>
const T& cached(std::size_t n, Build build) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<T>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<T>(build(n));
  return *slot;
}

}  // namespace

const MidpointRule& midpoint_rule(std::size_t n) {
  if (n == 0) throw InvalidArgument("midpoint rule needs at least one node");
  return cached<MidpointRule>(n, build_midpoint_rule);
}

const DerivativeStencils& derivative_stencils(std::size_t n) {
  if (n < 5) throw InvalidArgument("derivative stencils need at least five nodes");
  return cached<DerivativeStencils>(n, build_derivative_stencils);
}

}  // namespace dbar::numerics
