#include "bskernel/complex_literal.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "bskernel/errors.hpp"

namespace bskernel {

namespace {

[[noreturn]] void bad_literal(std::string_view text) {
  throw InputError("not a complex literal (expected a, bi, a+bi or a-bi): '" + std::string(text) +
                   "'");
}

double parse_real(std::string_view part, std::string_view whole) {
  bool negative = false;
  if (!part.empty() && (part.front() == '+' || part.front() == '-')) {
    negative = part.front() == '-';
    part.remove_prefix(1);
  }
  if (part.empty() || part.front() == '+' || part.front() == '-') bad_literal(whole);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(part.data(), part.data() + part.size(), value, std::chars_format::general);
  if (ec != std::errc() || ptr != part.data() + part.size() || !std::isfinite(value)) {
    bad_literal(whole);
  }
  return negative ? -value : value;
}

// Imaginary coefficient; an empty or sign-only body means unit magnitude.
double parse_imag(std::string_view part, std::string_view whole) {
  if (part.empty() || part == "+") return 1.0;
  if (part == "-") return -1.0;
  return parse_real(part, whole);
}

}  // namespace

cdouble parse_complex(std::string_view text) {
  if (text.empty()) bad_literal(text);
  if (text.back() != 'i') return {parse_real(text, text), 0.0};

  const std::string_view body = text.substr(0, text.size() - 1);
  // The real/imaginary split is the last sign that is neither leading nor
  // part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, parse_imag(body, text)};
  return {parse_real(body.substr(0, split), text), parse_imag(body.substr(split), text)};
}

std::string format_real(double x) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
  return std::string(buf.data(), ptr);
}

std::string format_complex(cdouble z) {
  std::string out = format_real(z.real());
  out += std::signbit(z.imag()) ? '-' : '+';
  out += format_real(std::abs(z.imag()));
  out += 'i';
  return out;
}

}  // namespace bskernel
