#pragma once

// Seeded property suites behind `qvi check`:
//   geometry  Bregman identities and projection inequalities;
//   stepsize  bounds on the adaptive step-size sequence;
//   dynamics  stationarity, energy decay and scheme consistency of the flow.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qvi {

enum class CheckSuite { Geometry, Stepsize, Dynamics, All };

/// nullopt for an unknown suite name.
std::optional<CheckSuite> parse_check_suite(const std::string& name);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<CheckResult> run_check_suite(CheckSuite suite, std::uint64_t seed);

/// Number of random instances per geometry identity.
inline constexpr int kGeometryInstances = 1000;

}  // namespace qvi
