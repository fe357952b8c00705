#include "dbar/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

namespace dbar::kernels {

namespace {

std::atomic<Backend> g_backend{Backend::openmp};

inline CauchySums cauchy_one(std::span<const cplx> nodes, std::span<const cplx> tw,
                             std::span<const cplx> values, cplx z) {
  CauchySums s{0.0, 0.0, std::numeric_limits<double>::infinity()};
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const cplx d = nodes[j] - z;
    const cplx k = tw[j] / d;
    s.weighted += values[j] * k;
    s.kernel += k;
    s.min_distance = std::min(s.min_distance, std::abs(d));
  }
  return s;
}

inline cplx derivative_one(std::span<const cplx> nodes, std::span<const cplx> tw,
                           std::span<const cplx> values, cplx z, cplx shift) {
  cplx sum = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const cplx d = nodes[j] - z;
    sum += (values[j] - shift) * tw[j] / (d * d);
  }
  return sum;
}

inline cplx plemelj_one(std::span<const cplx> nodes, std::span<const cplx> tw,
                        std::span<const cplx> values, std::size_t k) {
  cplx sum = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (j == k) continue;
    sum += (values[j] - values[k]) * tw[j] / (nodes[j] - nodes[k]);
  }
  return sum;
}

inline double holder_row(std::span<const cplx> nodes, std::span<const cplx> values, double a,
                         std::size_t i) {
  double m = 0.0;
  for (std::size_t j = i + 1; j < nodes.size(); ++j) {
    const double chord = std::abs(nodes[i] - nodes[j]);
    if (chord == 0.0) continue;
    m = std::max(m, std::abs(values[i] - values[j]) / std::pow(chord, a));
  }
  return m;
}

inline double holder_pair(std::span<const cplx> nodes, std::span<const cplx> values, double a,
                          std::pair<std::size_t, std::size_t> p) {
  const double chord = std::abs(nodes[p.first] - nodes[p.second]);
  if (chord == 0.0) return 0.0;
  return std::abs(values[p.first] - values[p.second]) / std::pow(chord, a);
}

}  // namespace

Backend default_backend() { return g_backend.load(); }
void set_default_backend(Backend backend) { g_backend.store(backend); }

std::vector<CauchySums> cauchy_sums(std::span<const cplx> nodes, std::span<const cplx> tw,
                                    std::span<const cplx> values, std::span<const cplx> targets,
                                    Backend backend) {
  std::vector<CauchySums> out(targets.size());
  const auto nt = static_cast<long>(targets.size());
  if (backend == Backend::serial) {
    for (long t = 0; t < nt; ++t) out[t] = cauchy_one(nodes, tw, values, targets[t]);
  } else {
#pragma omp parallel for schedule(static)
    for (long t = 0; t < nt; ++t) out[t] = cauchy_one(nodes, tw, values, targets[t]);
  }
  return out;
}

std::vector<cplx> cauchy_derivative_sums(std::span<const cplx> nodes, std::span<const cplx> tw,
                                         std::span<const cplx> values,
                                         std::span<const cplx> targets,
                                         std::span<const cplx> shift, Backend backend) {
  std::vector<cplx> out(targets.size());
  const auto nt = static_cast<long>(targets.size());
  if (backend == Backend::serial) {
    for (long t = 0; t < nt; ++t) out[t] = derivative_one(nodes, tw, values, targets[t], shift[t]);
  } else {
#pragma omp parallel for schedule(static)
    for (long t = 0; t < nt; ++t) out[t] = derivative_one(nodes, tw, values, targets[t], shift[t]);
  }
  return out;
}

std::vector<cplx> plemelj_sums(std::span<const cplx> nodes, std::span<const cplx> tw,
                               std::span<const cplx> values, Backend backend) {
  std::vector<cplx> out(nodes.size());
  const auto n = static_cast<long>(nodes.size());
  if (backend == Backend::serial) {
    for (long k = 0; k < n; ++k) out[k] = plemelj_one(nodes, tw, values, static_cast<std::size_t>(k));
  } else {
#pragma omp parallel for schedule(static)
    for (long k = 0; k < n; ++k) out[k] = plemelj_one(nodes, tw, values, static_cast<std::size_t>(k));
  }
  return out;
}

double holder_max(std::span<const cplx> nodes, std::span<const cplx> values, double a,
                  Backend backend) {
  const auto n = static_cast<long>(nodes.size());
  double m = 0.0;
  if (backend == Backend::serial) {
    for (long i = 0; i < n; ++i) m = std::max(m, holder_row(nodes, values, a, static_cast<std::size_t>(i)));
  } else {
#pragma omp parallel for schedule(dynamic, 16) reduction(max : m)
    for (long i = 0; i < n; ++i) m = std::max(m, holder_row(nodes, values, a, static_cast<std::size_t>(i)));
  }
  return m;
}

double holder_max_pairs(std::span<const cplx> nodes, std::span<const cplx> values, double a,
                        std::span<const std::pair<std::size_t, std::size_t>> pairs,
                        Backend backend) {
  const auto np = static_cast<long>(pairs.size());
  double m = 0.0;
  if (backend == Backend::serial) {
    for (long k = 0; k < np; ++k) m = std::max(m, holder_pair(nodes, values, a, pairs[k]));
  } else {
#pragma omp parallel for schedule(static) reduction(max : m)
    for (long k = 0; k < np; ++k) m = std::max(m, holder_pair(nodes, values, a, pairs[k]));
  }
  return m;
}

}  // namespace dbar::kernels
