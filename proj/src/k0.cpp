#include "svf/k0.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "svf/error.hpp"

namespace svf {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

BigInt parse_integer(std::string_view text) {
  text = trim(text);
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw Error(Errc::InvalidArgument, "not an integer: '" + std::string(text) + "'");
  }
  return BigInt(std::string(text.front() == '+' ? text.substr(1) : text));
}

BigInt pow2(unsigned e) {
  BigInt one = 1;
  return one << e;
}

[[noreturn]] void mismatch(const K0Class& g, const K0Class& h) {
  throw Error(Errc::VariantMismatch, "classes " + g.str() + " and " + h.str() + " live in different groups");
}

void require_same_group(const K0Class& g, const K0Class& h) {
  if (g.kind() != h.kind()) mismatch(g, h);
  if (g.kind() == GroupKind::Simplicial && g.as_simplicial().coords.size() != h.as_simplicial().coords.size()) {
    mismatch(g, h);
  }
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw Error(Errc::InvalidArgument, "simplicial coordinate overflow");
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw Error(Errc::InvalidArgument, "simplicial coordinate overflow");
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Dyadic

Dyadic::Dyadic(BigInt mantissa, unsigned exponent) : mantissa_(std::move(mantissa)), exponent_(exponent) {
  normalize();
}

void Dyadic::normalize() {
  if (mantissa_ == 0) {
    exponent_ = 0;
    return;
  }
  if (exponent_ == 0) return;
  const unsigned twos = static_cast<unsigned>(boost::multiprecision::lsb(boost::multiprecision::abs(mantissa_)));
  const unsigned shift = std::min(twos, exponent_);
  mantissa_ >>= shift;  // exact: the low `shift` bits are zero
  exponent_ -= shift;
}

bool Dyadic::is_dyadic(const Rational& r) {
  const BigInt den = boost::multiprecision::denominator(r);
  return (den & (den - 1)) == 0;
}

Dyadic Dyadic::from_rational(const Rational& r) {
  if (!is_dyadic(r)) {
    throw Error(Errc::NotInDomain, render_rational(r) + " is not dyadic");
  }
  const BigInt den = boost::multiprecision::denominator(r);
  return Dyadic(boost::multiprecision::numerator(r), static_cast<unsigned>(boost::multiprecision::msb(den)));
}

Rational Dyadic::to_rational() const { return Rational(mantissa_, pow2(exponent_)); }

double Dyadic::to_double() const { return to_rational().convert_to<double>(); }

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  const unsigned e = std::max(a.exponent_, b.exponent_);
  return Dyadic((a.mantissa_ << (e - a.exponent_)) + (b.mantissa_ << (e - b.exponent_)), e);
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  const unsigned e = std::max(a.exponent_, b.exponent_);
  const BigInt lhs = a.mantissa_ << (e - a.exponent_);
  const BigInt rhs = b.mantissa_ << (e - b.exponent_);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Dyadic::str() const { return mantissa_.str() + "/2^" + std::to_string(exponent_); }

Dyadic parse_dyadic(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Dyadic(parse_integer(text), 0);
  const std::string_view den = trim(text.substr(slash + 1));
  if (den.size() < 3 || den.substr(0, 2) != "2^") {
    // Accept "p/q" when q happens to be a power of two.
    return Dyadic::from_rational(parse_rational(text));
  }
  const BigInt e = parse_integer(den.substr(2));
  if (e < 0 || e > 1u << 20) throw Error(Errc::InvalidArgument, "bad dyadic exponent in '" + std::string(text) + "'");
  return Dyadic(parse_integer(text.substr(0, slash)), e.convert_to<unsigned>());
}

Rational parse_rational(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  const std::string_view den_text = trim(text.substr(slash + 1));
  if (den_text.substr(0, 2) == "2^") return parse_dyadic(text).to_rational();
  const BigInt den = parse_integer(den_text);
  if (den == 0) throw Error(Errc::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
  return Rational(parse_integer(text.substr(0, slash)), den);
}

std::string render_rational(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

// ---------------------------------------------------------------- K0Class

std::string_view to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::Simplicial: return "simplicial";
    case GroupKind::Dyadic: return "dyadic";
    case GroupKind::Rational: return "rational";
    case GroupKind::LexPair: return "lex_pair";
  }
  return "unknown";
}

K0Class K0Class::zero_like(const K0Class& shape) {
  switch (shape.kind()) {
    case GroupKind::Simplicial: return simplicial(std::vector<std::int64_t>(shape.as_simplicial().coords.size(), 0));
    case GroupKind::Dyadic: return Dyadic();
    case GroupKind::Rational: return Rational(0);
    case GroupKind::LexPair: return LexPair{Rational(0), BigInt(0)};
  }
  return {};
}

const Simplicial& K0Class::as_simplicial() const {
  if (const auto* p = std::get_if<Simplicial>(&payload_)) return *p;
  throw Error(Errc::VariantMismatch, "expected a simplicial class, got " + str());
}

const Dyadic& K0Class::as_dyadic() const {
  if (const auto* p = std::get_if<Dyadic>(&payload_)) return *p;
  throw Error(Errc::VariantMismatch, "expected a dyadic class, got " + str());
}

const Rational& K0Class::as_rational() const {
  if (const auto* p = std::get_if<Rational>(&payload_)) return *p;
  throw Error(Errc::VariantMismatch, "expected a rational class, got " + str());
}

const LexPair& K0Class::as_lex_pair() const {
  if (const auto* p = std::get_if<LexPair>(&payload_)) return *p;
  throw Error(Errc::VariantMismatch, "expected a lex-pair class, got " + str());
}

std::size_t K0Class::rank() const {
  if (const auto* p = std::get_if<Simplicial>(&payload_)) return p->coords.size();
  return 1;
}

bool K0Class::is_zero() const { return *this == zero_like(*this); }

bool K0Class::is_positive() const {
  return std::visit(
      [](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Simplicial>) {
          return std::all_of(x.coords.begin(), x.coords.end(), [](std::int64_t c) { return c >= 0; });
        } else if constexpr (std::is_same_v<T, Dyadic>) {
          return x >= Dyadic();
        } else if constexpr (std::is_same_v<T, Rational>) {
          return x >= 0;
        } else {
          return x.u > 0 || (x.u == 0 && x.v == 0);
        }
      },
      payload_);
}

K0Class K0Class::operator-() const { return scale(*this, -1); }

K0Class operator+(const K0Class& g, const K0Class& h) {
  require_same_group(g, h);
  switch (g.kind()) {
    case GroupKind::Simplicial: {
      std::vector<std::int64_t> out(g.as_simplicial().coords.size());
      for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = checked_add(g.as_simplicial().coords[i], h.as_simplicial().coords[i]);
      }
      return K0Class::simplicial(std::move(out));
    }
    case GroupKind::Dyadic: return g.as_dyadic() + h.as_dyadic();
    case GroupKind::Rational: return Rational(g.as_rational() + h.as_rational());
    case GroupKind::LexPair:
      return LexPair{g.as_lex_pair().u + h.as_lex_pair().u, g.as_lex_pair().v + h.as_lex_pair().v};
  }
  return {};
}

K0Class operator-(const K0Class& g, const K0Class& h) { return g + (-h); }

K0Class scale(const K0Class& g, long long n) {
  switch (g.kind()) {
    case GroupKind::Simplicial: {
      std::vector<std::int64_t> out = g.as_simplicial().coords;
      for (auto& c : out) c = checked_mul(c, n);
      return K0Class::simplicial(std::move(out));
    }
    case GroupKind::Dyadic: return g.as_dyadic() * Dyadic(n);
    case GroupKind::Rational: return Rational(g.as_rational() * n);
    case GroupKind::LexPair: return LexPair{g.as_lex_pair().u * n, g.as_lex_pair().v * n};
  }
  return {};
}

bool leq(const K0Class& g, const K0Class& h) {
  require_same_group(g, h);
  return (h - g).is_positive();
}

K0Class add(const K0Class& g, const K0Class& h) { return g + h; }
K0Class sub(const K0Class& g, const K0Class& h) { return g - h; }

std::string K0Class::str() const {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Simplicial>) {
          std::string out = "(";
          for (std::size_t i = 0; i < x.coords.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(x.coords[i]);
          }
          return out + ")";
        } else if constexpr (std::is_same_v<T, Dyadic>) {
          return x.str();
        } else if constexpr (std::is_same_v<T, Rational>) {
          return render_rational(x);
        } else {
          return "(" + render_rational(x.u) + "; " + x.v.str() + ")";
        }
      },
      payload_);
}

K0Class parse_k0_class(std::string_view text) {
  const std::string_view t = trim(text);
  if (t.find(';') != std::string_view::npos) return parse_k0_class(t, GroupKind::LexPair);
  if (!t.empty() && t.front() == '(') return parse_k0_class(t, GroupKind::Simplicial);
  if (t.find("2^") != std::string_view::npos) return parse_k0_class(t, GroupKind::Dyadic);
  return parse_k0_class(t, GroupKind::Rational);
}

K0Class parse_k0_class(std::string_view text, GroupKind kind) {
  std::string_view t = trim(text);
  const auto strip_parens = [&](std::string_view s) {
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
      throw Error(Errc::InvalidArgument, "expected parenthesised class, got '" + std::string(s) + "'");
    }
    return s.substr(1, s.size() - 2);
  };
  switch (kind) {
    case GroupKind::Simplicial: {
      std::string_view body = trim(strip_parens(t));
      std::vector<std::int64_t> coords;
      while (!body.empty()) {
        const auto comma = body.find(',');
        const BigInt c = parse_integer(body.substr(0, comma));
        if (c > std::numeric_limits<std::int64_t>::max() || c < std::numeric_limits<std::int64_t>::min()) {
          throw Error(Errc::InvalidArgument, "simplicial coordinate out of range");
        }
        coords.push_back(c.convert_to<std::int64_t>());
        if (comma == std::string_view::npos) break;
        body = body.substr(comma + 1);
      }
      return K0Class::simplicial(std::move(coords));
    }
    case GroupKind::Dyadic: return parse_dyadic(t);
    case GroupKind::Rational: return parse_rational(t);
    case GroupKind::LexPair: {
      const std::string_view body = strip_parens(t);
      const auto semi = body.find(';');
      if (semi == std::string_view::npos) throw Error(Errc::InvalidArgument, "lex pair needs '(u; v)'");
      return LexPair{parse_rational(body.substr(0, semi)), parse_integer(body.substr(semi + 1))};
    }
  }
  throw Error(Errc::InvalidArgument, "unknown class kind");
}

// ---------------------------------------------------------------- groups

OrderedGroupSpec::OrderedGroupSpec(K0Class unit) : order_unit_(std::move(unit)) {
  if (!order_unit_.is_positive() || order_unit_.is_zero()) {
    throw Error(Errc::InvalidArgument, "order unit must be positive and nonzero");
  }
}

OrderedGroupSpec OrderedGroupSpec::simplicial(const std::vector<std::int64_t>& block_sizes) {
  if (block_sizes.empty() || std::any_of(block_sizes.begin(), block_sizes.end(), [](auto n) { return n < 1; })) {
    throw Error(Errc::InvalidArgument, "block sizes must be positive");
  }
  return OrderedGroupSpec(K0Class::simplicial(block_sizes));
}

OrderedGroupSpec OrderedGroupSpec::dyadic() { return OrderedGroupSpec(Dyadic(1)); }
OrderedGroupSpec OrderedGroupSpec::rational() { return OrderedGroupSpec(Rational(1)); }
OrderedGroupSpec OrderedGroupSpec::lex_pair() { return OrderedGroupSpec(LexPair{Rational(1), BigInt(0)}); }

void OrderedGroupSpec::require_member(const K0Class& g) const { require_same_group(order_unit_, g); }

bool is_infinitesimal(const OrderedGroupSpec& group, const K0Class& g) {
  group.require_member(g);
  if (g.kind() == GroupKind::LexPair) return g.as_lex_pair().u == 0;
  return g.is_zero();
}

bool is_infinitesimal_bounded(const OrderedGroupSpec& group, const K0Class& g, int bound) {
  group.require_member(g);
  const K0Class& u = group.order_unit();
  for (int m = 1; m <= bound; ++m) {
    const K0Class mu = scale(u, m);
    for (int n = 1; n <= bound; ++n) {
      const K0Class ng = scale(g, n);
      if (!leq(-mu, ng) || !leq(ng, mu)) return false;
    }
  }
  return true;
}

}  // namespace svf
