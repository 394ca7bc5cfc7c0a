#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace opbar {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number. All weight arithmetic in the engine runs on this
/// type; floating point never enters the core.
using Rat = boost::rational<BigInt>;

inline Rat rat(long long num, long long den = 1) { return Rat(BigInt(num), BigInt(den)); }

inline bool is_zero(const Rat& r) { return r.numerator() == 0; }
inline bool in_unit_interval(const Rat& r) { return r >= Rat(0) && r <= Rat(1); }

/// Renders as "num/den", or just "num" for integers (so weights read "0",
/// "1", "1/2" in JSON and DOT output).
inline std::string rat_to_string(const Rat& r) {
  std::string s = r.numerator().str();
  if (r.denominator() != 1) {
    s += '/';
    s += r.denominator().str();
  }
  return s;
}

/// Parses "num/den" or "num". Whitespace is not accepted.
inline std::optional<Rat> rat_from_string(std::string_view s) {
  if (s.empty()) return std::nullopt;
  auto parse_int = [](std::string_view t, BigInt& out) -> bool {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (std::size_t j = i; j < t.size(); ++j)
      if (t[j] < '0' || t[j] > '9') return false;
    out = BigInt(std::string(t));
    return true;
  };
  BigInt num, den = 1;
  auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    if (!parse_int(s, num)) return std::nullopt;
  } else {
    if (!parse_int(s.substr(0, slash), num)) return std::nullopt;
    if (!parse_int(s.substr(slash + 1), den)) return std::nullopt;
    if (den == 0) return std::nullopt;
  }
  return Rat(num, den);
}

inline Rat rat_from_string_or_throw(std::string_view s) {
  auto r = rat_from_string(s);
  if (!r) throw std::invalid_argument("malformed rational: '" + std::string(s) + "'");
  return *r;
}

}  // namespace opbar
