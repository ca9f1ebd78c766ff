#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace tpg {

using Rational = mpq_class;

// Accepts "p/q", "p" or "-p/q"; throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

Rational floor_of(const Rational& q);
Rational frac_of(const Rational& q);
std::int64_t to_int64(const Rational& q);  // requires an integer value

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace tpg
