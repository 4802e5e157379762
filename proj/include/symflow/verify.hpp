#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace symflow::verify {

struct SuiteResult {
  std::string name;
  bool passed;
  std::string detail;  // worst residual or the first failure description
};

/// Compact invariant suites spanning every module: exchange algebra, basis
/// round trips, symmetricity bounds and classification, semigroup identities,
/// bath-exponent oracle agreement, schedule maps, entropy formula, scattering
/// limits, and the two-positivity certificate. d applies to the exchange
/// suites; the seed feeds every random draw.
std::vector<SuiteResult> run_all(int d, std::uint64_t seed);

bool all_passed(const std::vector<SuiteResult>& results);

}  // namespace symflow::verify
