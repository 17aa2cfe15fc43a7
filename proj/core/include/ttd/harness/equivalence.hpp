#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ttd::harness {

struct CheckResult {
  std::string name;
  std::size_t trials = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = true;
};

struct EquivalenceReport {
  std::vector<CheckResult> checks;

  bool passed() const;
};

/// Randomized consistency checks between independent computations of the
/// same quantities: recursion vs closed form, incremental vs iterative,
/// eligibility traces vs per-visit attribution, truncation error bound, trace
/// closed form, offline lambda-return, Boltzmann normalization. Deterministic
/// in `seed`.
EquivalenceReport equivalence_report(std::size_t trials, std::uint64_t seed);

void write_report(std::ostream& out, const EquivalenceReport& report);

}  // namespace ttd::harness
