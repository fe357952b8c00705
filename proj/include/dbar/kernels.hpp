#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

// Dense O(N * targets) boundary sums. Every kernel has a serial reference and
// an OpenMP version parallel over targets; each target's sum is accumulated in
// the same order by both, so the results are bit-identical.

namespace dbar::kernels {

using cplx = std::complex<double>;

enum class Backend { serial, openmp };

Backend default_backend();
void set_default_backend(Backend backend);

struct CauchySums {
  cplx weighted;        ///< sum_j f_j k_j
  cplx kernel;          ///< sum_j k_j
  double min_distance;  ///< min_j |zeta_j - z|
};

/// k_j = tw_j / (zeta_j - z) with tw_j = T_j w_j.
std::vector<CauchySums> cauchy_sums(std::span<const cplx> nodes, std::span<const cplx> tw,
                                    std::span<const cplx> values, std::span<const cplx> targets,
                                    Backend backend = default_backend());

/// sum_j (f_j - shift_t) tw_j / (zeta_j - z_t)^2 for every target t.
std::vector<cplx> cauchy_derivative_sums(std::span<const cplx> nodes, std::span<const cplx> tw,
                                         std::span<const cplx> values,
                                         std::span<const cplx> targets,
                                         std::span<const cplx> shift,
                                         Backend backend = default_backend());

/// For every node k: sum_{j != k} (f_j - f_k) tw_j / (zeta_j - zeta_k).
std::vector<cplx> plemelj_sums(std::span<const cplx> nodes, std::span<const cplx> tw,
                               std::span<const cplx> values, Backend backend = default_backend());

/// max_{i < j} |f_i - f_j| / |zeta_i - zeta_j|^a over all pairs.
double holder_max(std::span<const cplx> nodes, std::span<const cplx> values, double a,
                  Backend backend = default_backend());

/// Same maximum restricted to the listed pairs.
double holder_max_pairs(std::span<const cplx> nodes, std::span<const cplx> values, double a,
                        std::span<const std::pair<std::size_t, std::size_t>> pairs,
                        Backend backend = default_backend());

}  // namespace dbar::kernels
