#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace svf {

struct BatteryOptions {
  int trials = 1000;
  std::uint64_t seed = 0;
  int max_blocks = 3;
  int max_size = 6;
  double tolerance = 1e-8;
  /// Random projections per oracle-triangle check on top of the structured
  /// candidates.
  int sampling_trials = 4;
};

/// Slack is lhs - rhs for inequalities lhs <= rhs and |lhs - rhs| for
/// identities; a check fails when its slack exceeds the tolerance.
struct PropertyResult {
  std::string id;
  std::string description;
  int trials = 0;
  int failures = 0;
  double worst_slack = -1e300;

  void record(double slack, double tolerance);
  void merge(const PropertyResult& other);
};

struct BatteryReport {
  std::vector<PropertyResult> properties;

  bool passed() const;
  const PropertyResult& at(const std::string& id) const;
  /// "property,trials,failures,worst_slack"
  std::string to_csv() const;
  std::string to_table() const;
};

/// Runs the full property battery. Trial t draws its randomness from
/// (seed, t) alone, so the report does not depend on evaluation order.
BatteryReport property_battery(const BatteryOptions& options);

}  // namespace svf
