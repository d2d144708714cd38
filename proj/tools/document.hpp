#pragma once

// JSON input documents for the svf tool. Exact numbers (classes, breakpoints,
// jump points) are strings such as "3/2^4" or "2/3"; matrix entries are
// [re, im] pairs of doubles.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "svf/algebra.hpp"
#include "svf/stepfn.hpp"

namespace svf::cli {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TargetDescription {
  std::string kind;  // "step", "one_minus_t", "constant" or "reciprocal"
  ScalarDomain domain = ScalarDomain::dyadic();
  std::vector<Point> breakpoints;  // step only
  std::vector<double> values;      // step only
  double constant = 0.0;           // constant only
  std::vector<Jump> jumps;         // declared; must match the function

  friend bool operator==(const TargetDescription& a, const TargetDescription& b);
};

struct Document {
  std::optional<std::vector<int>> algebra;
  std::optional<std::vector<ComplexMatrix>> element;
  std::optional<std::string> k0_class;
  std::optional<TargetDescription> target;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;

  friend bool operator==(const Document& a, const Document& b);
};

/// Throws ParseError on malformed JSON or a schema violation.
Document parse_document(const std::string& text);
std::string serialize_document(const Document& doc);

/// Both throw ParseError when the document lacks the required keys and
/// svf::Error when the contents violate a contract.
AlgebraElement element_of(const Document& doc);
TargetFunction target_of(const TargetDescription& desc);

}  // namespace svf::cli
