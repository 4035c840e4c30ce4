// Serial reference loops for the sampled diagnostics. Kept as the oracle the
// OpenMP versions are tested against, and as the baseline for the benchmark.

#include "../diagnostics_kernels.hpp"

#include <algorithm>

namespace qvi::reference {

QuasimonotonicityReport sampled_quasimonotonicity_check(const VIProblem& problem, std::int64_t sample_count,
                                                        std::uint64_t seed,
                                                        const QuasimonotonicityOptions& opts) {
  detail::require_count(sample_count, 1, "sampled_quasimonotonicity_check");
  QuasimonotonicityReport report;
  report.samples = sample_count;
  for (std::int64_t i = 0; i < sample_count; ++i) {
    auto w = detail::quasimonotone_kernel(problem, seed, i, opts);
    if (!w) continue;
    ++report.violations;
    if (report.witnesses.size() < opts.max_witnesses) report.witnesses.push_back(std::move(*w));
  }
  return report;
}

double estimate_lipschitz_constant(const VIProblem& problem, std::int64_t sample_count, std::uint64_t seed,
                                   const PairSamplingOptions& opts) {
  detail::require_count(sample_count, 2, "estimate_lipschitz_constant");
  double best = 0.0;
  for (std::int64_t i = 0; i < sample_count; ++i) {
    best = std::max(best, detail::lipschitz_kernel(problem, seed, i, opts));
  }
  return best;
}

double uniform_continuity_modulus(const VIProblem& problem, double eps, std::int64_t sample_count,
                                  std::uint64_t seed, const PairSamplingOptions& opts) {
  detail::require_count(sample_count, 1, "uniform_continuity_modulus");
  double best = 0.0;
  for (std::int64_t i = 0; i < sample_count; ++i) {
    best = std::max(best, detail::uniform_continuity_kernel(problem, eps, seed, i, opts));
  }
  return best;
}

double minty_gap(const VIProblem& problem, const Vector& candidate, std::int64_t sample_count,
                 std::uint64_t seed) {
  detail::require_count(sample_count, 1, "minty_gap");
  double lowest = std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < sample_count; ++i) {
    lowest = std::min(lowest, detail::minty_kernel(problem, candidate, seed, i));
  }
  return lowest;
}

}  // namespace qvi::reference
