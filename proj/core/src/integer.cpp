#include "bott/integer.hpp"

#include <limits>

#include "bott/error.hpp"

namespace bott {

namespace {
const Integer kInt64Min{std::to_string(std::numeric_limits<std::int64_t>::min())};
const Integer kInt64Max{std::to_string(std::numeric_limits<std::int64_t>::max())};
}  // namespace

bool fits_int64(const Integer& v) { return v >= kInt64Min && v <= kInt64Max; }

std::int64_t to_int64(const Integer& v) {
  if (!fits_int64(v)) {
    throw BottError(ErrorCode::InternalInvariantViolation,
                    "integer does not fit in 64 bits: " + v.get_str());
  }
  if (v.fits_slong_p()) return v.get_si();
  return std::stoll(v.get_str());
}

nlohmann::json integer_to_json(const Integer& v) {
  if (fits_int64(v)) return to_int64(v);
  return v.get_str();
}

Integer integer_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer{std::to_string(j.get<std::uint64_t>())};
    return Integer{std::to_string(j.get<std::int64_t>())};
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    Integer v;
    if (s.empty() || v.set_str(s, 10) != 0) {
      throw BottError(ErrorCode::ParseError, "not a decimal integer: \"" + s + "\"");
    }
    return v;
  }
  throw BottError(ErrorCode::ParseError, "expected an integer, got " + j.dump());
}

}  // namespace bott
