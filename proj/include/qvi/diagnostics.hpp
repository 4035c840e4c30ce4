#pragma once

// Sampled operator diagnostics: quasimonotonicity violations, Lipschitz
// lower bounds, uniform-continuity moduli, Minty gaps, and the C5-type
// normalized gap along a sequence of points.
//
// The qvi:: versions run the sample loop with OpenMP; qvi::reference:: holds
// the serial loops. Both evaluate the same per-index kernels with per-index
// engines, so their results agree bitwise for a given seed.

#include "qvi/problems.hpp"

#include <cstdint>
#include <vector>

namespace qvi {

struct QuasimonotonicityWitness {
  std::int64_t index = 0;
  Vector xi;
  Vector eta;
  double forward = 0.0;   ///< <F(xi), eta - xi>
  double backward = 0.0;  ///< <F(eta), eta - xi>
};

struct QuasimonotonicityReport {
  std::int64_t samples = 0;
  std::int64_t violations = 0;
  /// Lowest-index violating pairs, at most max_witnesses of them.
  std::vector<QuasimonotonicityWitness> witnesses;
};

struct QuasimonotonicityOptions {
  double positive_tol = 1e-10;
  double negative_tol = 1e-10;
  std::size_t max_witnesses = 16;
};

struct PairSamplingOptions {
  /// Smallest separation drawn for near-coincident pairs.
  double near_min = 1e-6;
  /// Largest separation drawn for near-coincident pairs.
  double near_max = 1e-3;
  /// Pairs closer than this are skipped.
  double distance_guard = 1e-9;
};

QuasimonotonicityReport sampled_quasimonotonicity_check(const VIProblem& problem, std::int64_t sample_count,
                                                        std::uint64_t seed,
                                                        const QuasimonotonicityOptions& opts = {});

/// max ||F(x) - F(y)|| / ||x - y|| over sampled feasible pairs: a third are
/// independent uniform pairs, a third near-coincident pairs at uniform
/// anchors, a third near-coincident pairs at multiscale anchors.
double estimate_lipschitz_constant(const VIProblem& problem, std::int64_t sample_count, std::uint64_t seed,
                                   const PairSamplingOptions& opts = {});

/// Smallest M with ||F(x) - F(y)|| <= M ||x - y|| + eps over the same pair
/// distribution as estimate_lipschitz_constant.
double uniform_continuity_modulus(const VIProblem& problem, double eps, std::int64_t sample_count,
                                  std::uint64_t seed, const PairSamplingOptions& opts = {});

/// min over sampled y in K of <F(y), y - candidate>. Nonnegative (up to
/// rounding) for a Minty solution.
double minty_gap(const VIProblem& problem, const Vector& candidate, std::int64_t sample_count,
                 std::uint64_t seed);

/// |<F(y_k), y_k - u>| / ||y_k - u||^{2+eps}, omitting points within 1e-12
/// of u.
std::vector<double> c5_gap_series(const VIProblem& problem, const std::vector<Vector>& ys, const Vector& u,
                                  double eps);

namespace reference {

QuasimonotonicityReport sampled_quasimonotonicity_check(const VIProblem& problem, std::int64_t sample_count,
                                                        std::uint64_t seed,
                                                        const QuasimonotonicityOptions& opts = {});
double estimate_lipschitz_constant(const VIProblem& problem, std::int64_t sample_count, std::uint64_t seed,
                                   const PairSamplingOptions& opts = {});
double uniform_continuity_modulus(const VIProblem& problem, double eps, std::int64_t sample_count,
                                  std::uint64_t seed, const PairSamplingOptions& opts = {});
double minty_gap(const VIProblem& problem, const Vector& candidate, std::int64_t sample_count,
                 std::uint64_t seed);

}  // namespace reference

}  // namespace qvi
