#include "diagnostics_kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>

namespace qvi {

namespace {

// Exceptions must not cross an OpenMP region boundary. Keep the one raised at
// the lowest sample index so the rethrown error matches the serial loop.
class FirstError {
 public:
  void capture(std::int64_t index) {
#pragma omp critical(qvi_first_error)
    {
      if (!error_ || index < index_) {
        error_ = std::current_exception();
        index_ = index;
      }
    }
  }
  void rethrow_if_any() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
  std::int64_t index_ = 0;
};

template <class Kernel>
double parallel_max(std::int64_t count, double init, Kernel&& kernel) {
  double best = init;
  FirstError err;
#pragma omp parallel for schedule(static) reduction(max : best)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      best = std::max(best, kernel(i));
    } catch (...) {
      err.capture(i);
    }
  }
  err.rethrow_if_any();
  return best;
}

}  // namespace

QuasimonotonicityReport sampled_quasimonotonicity_check(const VIProblem& problem, std::int64_t sample_count,
                                                        std::uint64_t seed,
                                                        const QuasimonotonicityOptions& opts) {
  detail::require_count(sample_count, 1, "sampled_quasimonotonicity_check");
  QuasimonotonicityReport report;
  report.samples = sample_count;
  std::int64_t violations = 0;
  std::vector<QuasimonotonicityWitness> witnesses;
  FirstError err;
#pragma omp parallel
  {
    std::vector<QuasimonotonicityWitness> local;
#pragma omp for schedule(static) reduction(+ : violations)
    for (std::int64_t i = 0; i < sample_count; ++i) {
      try {
        auto w = detail::quasimonotone_kernel(problem, seed, i, opts);
        if (!w) continue;
        ++violations;
        if (local.size() < opts.max_witnesses) local.push_back(std::move(*w));
      } catch (...) {
        err.capture(i);
      }
    }
#pragma omp critical(qvi_witness_merge)
    witnesses.insert(witnesses.end(), std::make_move_iterator(local.begin()),
                     std::make_move_iterator(local.end()));
  }
  err.rethrow_if_any();
  std::sort(witnesses.begin(), witnesses.end(),
            [](const auto& a, const auto& b) { return a.index < b.index; });
  if (witnesses.size() > opts.max_witnesses) witnesses.resize(opts.max_witnesses);
  report.violations = violations;
  report.witnesses = std::move(witnesses);
  return report;
}

double estimate_lipschitz_constant(const VIProblem& problem, std::int64_t sample_count, std::uint64_t seed,
                                   const PairSamplingOptions& opts) {
  detail::require_count(sample_count, 2, "estimate_lipschitz_constant");
  return parallel_max(sample_count, 0.0,
                      [&](std::int64_t i) { return detail::lipschitz_kernel(problem, seed, i, opts); });
}

double uniform_continuity_modulus(const VIProblem& problem, double eps, std::int64_t sample_count,
                                  std::uint64_t seed, const PairSamplingOptions& opts) {
  detail::require_count(sample_count, 1, "uniform_continuity_modulus");
  return parallel_max(sample_count, 0.0, [&](std::int64_t i) {
    return detail::uniform_continuity_kernel(problem, eps, seed, i, opts);
  });
}

double minty_gap(const VIProblem& problem, const Vector& candidate, std::int64_t sample_count,
                 std::uint64_t seed) {
  detail::require_count(sample_count, 1, "minty_gap");
  // min(a, b) = -max(-a, -b)
  return -parallel_max(sample_count, -std::numeric_limits<double>::infinity(), [&](std::int64_t i) {
    return -detail::minty_kernel(problem, candidate, seed, i);
  });
}

std::vector<double> c5_gap_series(const VIProblem& problem, const std::vector<Vector>& ys, const Vector& u,
                                  double eps) {
  if (!(eps >= 0.0)) throw ValidationError("c5_gap_series: eps must be nonnegative");
  std::vector<double> out;
  out.reserve(ys.size());
  for (const Vector& y : ys) {
    const Vector d = y - u;
    const double r = d.norm();
    if (r <= 1e-12) continue;
    out.push_back(std::abs(eval_operator(problem, y).dot(d)) / std::pow(r, 2.0 + eps));
  }
  return out;
}

}  // namespace qvi
