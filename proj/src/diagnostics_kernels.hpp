#pragma once

// Per-sample kernels shared by the OpenMP and serial diagnostics loops.

#include "qvi/diagnostics.hpp"
#include "qvi/sampling.hpp"

#include <cmath>
#include <limits>
#include <optional>

namespace qvi::detail {

struct PointPair {
  Vector x;
  Vector y;
};

inline PointPair sample_pair(const FeasibleSet& set, std::uint64_t seed, std::int64_t index,
                             const PairSamplingOptions& opts) {
  Engine rng = sample_engine(seed, static_cast<std::uint64_t>(index));
  switch (index % 3) {
    case 0: {
      Vector x = sample_uniform(set, rng);
      Vector y = sample_uniform(set, rng);
      return {std::move(x), std::move(y)};
    }
    default: {
      Vector x = index % 3 == 1 ? sample_uniform(set, rng) : sample_multiscale(set, rng);
      std::uniform_real_distribution<double> expo(std::log10(opts.near_min), std::log10(opts.near_max));
      const double d = std::pow(10.0, expo(rng));
      Vector y = sample_near(set, x, d, rng);
      return {std::move(x), std::move(y)};
    }
  }
}

struct PairResponse {
  double operator_gap = 0.0;  ///< ||F(x) - F(y)||
  double distance = 0.0;      ///< ||x - y||
};

/// nullopt when the pair is closer than the distance guard.
inline std::optional<PairResponse> pair_response(const VIProblem& problem, std::uint64_t seed,
                                                 std::int64_t index, const PairSamplingOptions& opts) {
  const PointPair p = sample_pair(problem.set(), seed, index, opts);
  const double dist = (p.x - p.y).norm();
  if (!(dist >= opts.distance_guard)) return std::nullopt;
  const double gap = (eval_operator(problem, p.x) - eval_operator(problem, p.y)).norm();
  return PairResponse{gap, dist};
}

inline double lipschitz_kernel(const VIProblem& problem, std::uint64_t seed, std::int64_t index,
                               const PairSamplingOptions& opts) {
  const auto r = pair_response(problem, seed, index, opts);
  return r ? r->operator_gap / r->distance : 0.0;
}

inline double uniform_continuity_kernel(const VIProblem& problem, double eps, std::uint64_t seed,
                                        std::int64_t index, const PairSamplingOptions& opts) {
  const auto r = pair_response(problem, seed, index, opts);
  return r ? std::max(0.0, (r->operator_gap - eps) / r->distance) : 0.0;
}

inline std::optional<QuasimonotonicityWitness> quasimonotone_kernel(const VIProblem& problem,
                                                                    std::uint64_t seed, std::int64_t index,
                                                                    const QuasimonotonicityOptions& opts) {
  Engine rng = sample_engine(seed, static_cast<std::uint64_t>(index));
  Vector xi = sample_uniform(problem.set(), rng);
  Vector eta = sample_uniform(problem.set(), rng);
  const Vector diff = eta - xi;
  const double forward = eval_operator(problem, xi).dot(diff);
  if (!(forward > opts.positive_tol)) return std::nullopt;
  const double backward = eval_operator(problem, eta).dot(diff);
  if (!(backward < -opts.negative_tol)) return std::nullopt;
  return QuasimonotonicityWitness{index, std::move(xi), std::move(eta), forward, backward};
}

inline double minty_kernel(const VIProblem& problem, const Vector& candidate, std::uint64_t seed,
                           std::int64_t index) {
  Engine rng = sample_engine(seed, static_cast<std::uint64_t>(index));
  const Vector y = sample_uniform(problem.set(), rng);
  return eval_operator(problem, y).dot(y - candidate);
}

inline void require_count(std::int64_t count, std::int64_t minimum, const char* what) {
  if (count < minimum) {
    throw ValidationError(std::string(what) + ": sample_count must be at least " + std::to_string(minimum));
  }
}

}  // namespace qvi::detail
