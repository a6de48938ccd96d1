#include "tropwdvv/count_value.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace tropwdvv {

std::string to_decimal(const CountValue& value) { return value.get_str(10); }

CountValue parse_decimal(std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
  const bool well_formed =
      !digits.empty() &&
      std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
  if (!well_formed) {
    throw std::invalid_argument("not a decimal integer: '" + std::string(text) + "'");
  }
  // "-0" and leading zeros are accepted on input; to_decimal never produces them.
  return CountValue(std::string(text), 10);
}

std::string to_string(const Rational& value) { return value.get_str(10); }

}  // namespace tropwdvv
