#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

namespace bott {

// Every coefficient in the system is an exact, arbitrary-precision integer.
using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_zero(const Integer& v) { return sgn(v) == 0; }

bool fits_int64(const Integer& v);
std::int64_t to_int64(const Integer& v);

// JSON encoding: a plain number when the value fits in 64 bits, otherwise a
// decimal string.  Decoding accepts either form.
nlohmann::json integer_to_json(const Integer& v);
Integer integer_from_json(const nlohmann::json& j);

}  // namespace bott
