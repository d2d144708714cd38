#pragma once

// Ordered K0-group models with exact arithmetic: simplicial Z^k, the dyadic
// rationals Z[1/2], the rationals Q, and the lexicographic pair Q (+) Z whose
// positive cone is {(u, v) : u > 0} together with (0, 0).

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace svf {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact dyadic rational mantissa / 2^exponent, kept in lowest terms
/// (odd mantissa or exponent 0).
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(BigInt mantissa, unsigned exponent);
  explicit Dyadic(long long integer) : Dyadic(BigInt(integer), 0) {}

  /// Throws NotInDomain if the denominator of r is not a power of two.
  static Dyadic from_rational(const Rational& r);
  static bool is_dyadic(const Rational& r);

  const BigInt& mantissa() const { return mantissa_; }
  unsigned exponent() const { return exponent_; }

  Rational to_rational() const;
  double to_double() const;

  Dyadic operator-() const { return Dyadic(-mantissa_, exponent_); }
  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  /// "m/2^e"
  std::string str() const;

 private:
  void normalize();

  BigInt mantissa_ = 0;
  unsigned exponent_ = 0;
};

Dyadic parse_dyadic(std::string_view text);
Rational parse_rational(std::string_view text);
/// "p/q"
std::string render_rational(const Rational& r);

enum class GroupKind { Simplicial, Dyadic, Rational, LexPair };

std::string_view to_string(GroupKind kind);

struct Simplicial {
  std::vector<std::int64_t> coords;
  friend bool operator==(const Simplicial&, const Simplicial&) = default;
};

struct LexPair {
  Rational u;
  BigInt v;
  friend bool operator==(const LexPair&, const LexPair&) = default;
};

/// An element of one of the ordered group models. Operations between classes
/// of different kinds (or simplicial classes of different length) throw
/// VariantMismatch.
class K0Class {
 public:
  using Payload = std::variant<Simplicial, Dyadic, Rational, LexPair>;

  K0Class() : payload_(Simplicial{}) {}
  K0Class(Simplicial s) : payload_(std::move(s)) {}
  K0Class(Dyadic d) : payload_(std::move(d)) {}
  K0Class(Rational r) : payload_(std::move(r)) {}
  K0Class(LexPair p) : payload_(std::move(p)) {}

  static K0Class simplicial(std::vector<std::int64_t> coords) { return Simplicial{std::move(coords)}; }
  static K0Class zero_like(const K0Class& shape);

  GroupKind kind() const { return static_cast<GroupKind>(payload_.index()); }
  const Payload& payload() const { return payload_; }

  const Simplicial& as_simplicial() const;
  const Dyadic& as_dyadic() const;
  const Rational& as_rational() const;
  const LexPair& as_lex_pair() const;

  /// Number of coordinates for simplicial classes; 1 otherwise.
  std::size_t rank() const;

  bool is_zero() const;
  /// Membership in the positive cone of the model.
  bool is_positive() const;

  K0Class operator-() const;
  friend K0Class operator+(const K0Class& g, const K0Class& h);
  friend K0Class operator-(const K0Class& g, const K0Class& h);
  friend bool operator==(const K0Class&, const K0Class&) = default;

  std::string str() const;

 private:
  Payload payload_;
};

/// n * g for an integer n (used by the definitional infinitesimal check).
K0Class scale(const K0Class& g, long long n);

/// g <= h in the model's order, i.e. h - g lies in the positive cone.
bool leq(const K0Class& g, const K0Class& h);
K0Class add(const K0Class& g, const K0Class& h);
K0Class sub(const K0Class& g, const K0Class& h);

/// Parses the textual rendering. The kind is inferred: "(a,b,...)" is
/// simplicial, "m/2^e" dyadic, "(p/q; v)" a lex pair, anything else rational.
K0Class parse_k0_class(std::string_view text);
/// Parses text known to be of `kind`; plain integers are accepted for the
/// dyadic and rational kinds.
K0Class parse_k0_class(std::string_view text, GroupKind kind);

/// (G, G+, u): a group model with its order unit.
class OrderedGroupSpec {
 public:
  static OrderedGroupSpec simplicial(const std::vector<std::int64_t>& block_sizes);
  static OrderedGroupSpec dyadic();
  static OrderedGroupSpec rational();
  static OrderedGroupSpec lex_pair();

  GroupKind kind() const { return order_unit_.kind(); }
  const K0Class& order_unit() const { return order_unit_; }

  /// Throws VariantMismatch unless g belongs to this group.
  void require_member(const K0Class& g) const;

 private:
  explicit OrderedGroupSpec(K0Class unit);
  K0Class order_unit_;
};

/// Closed form for Inf(G): zero for the simplicial, dyadic and rational
/// models; the subgroup 0 (+) Z for the lex pair.
bool is_infinitesimal(const OrderedGroupSpec& group, const K0Class& g);

/// Bounded form of the definition: -m u <= n g <= m u for all 1 <= m, n <= bound.
/// A test oracle for `is_infinitesimal`, not a decision procedure.
bool is_infinitesimal_bounded(const OrderedGroupSpec& group, const K0Class& g, int bound = 50);

}  // namespace svf
