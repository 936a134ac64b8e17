#include "wignerlab/dsl_format.hpp"

#include <charconv>
#include <cstdio>

namespace wignerlab {

namespace {

// "1e-09" -> "1e-9", "1e+05" -> "1e5".
std::string tidy_exponent(std::string text) {
  const auto e = text.find_first_of("eE");
  if (e == std::string::npos) return text;
  std::string mantissa = text.substr(0, e);
  std::string exponent = text.substr(e + 1);
  bool negative = false;
  std::size_t i = 0;
  if (i < exponent.size() && (exponent[i] == '+' || exponent[i] == '-')) {
    negative = exponent[i] == '-';
    ++i;
  }
  while (i + 1 < exponent.size() && exponent[i] == '0') ++i;
  return mantissa + "e" + (negative ? "-" : "") + exponent.substr(i);
}

}  // namespace

std::string format_amplitude(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return tidy_exponent(buffer);
}

std::string format_shortest(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return tidy_exponent(std::string(buffer, result.ptr));
}

std::string format_complex(const std::complex<double>& value) {
  if (value.imag() == 0.0) return format_amplitude(value.real());
  std::string text = "(" + format_amplitude(value.real());
  if (!(value.imag() < 0.0)) text += "+";
  text += format_amplitude(value.imag());
  return text + "i)";
}

}  // namespace wignerlab
