#include "optidep/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>
#include <system_error>

namespace optidep {
namespace {

using Wide = __int128;

std::int64_t narrow(Wide v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational overflow");
  return static_cast<std::int64_t>(v);
}

Wide gcd_wide(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational make(Wide num, Wide den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide g = gcd_wide(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational(narrow(num), narrow(den));
}

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    if (num == INT64_MIN || den == INT64_MIN) throw std::overflow_error("rational overflow");
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  num_ = g > 1 ? num / g : num;
  den_ = g > 1 ? den / g : den;
}

Rational Rational::parse(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos)
    return Rational(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));

  bool negative = !text.empty() && text.front() == '-';
  std::string_view body = negative ? text.substr(1) : text;
  auto dot = body.find('.');
  std::string digits(body.substr(0, dot));
  std::int64_t den = 1;
  if (dot != std::string_view::npos) {
    std::string_view frac = body.substr(dot + 1);
    if (frac.empty() || frac.size() > 18)
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    digits += frac;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  std::int64_t num = parse_int(digits, text);
  return Rational(negative ? -num : num, den);
}

Rational Rational::from_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
  if (ec != std::errc()) throw std::invalid_argument("number not representable as a rational");
  return parse(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  std::int64_t d = den_;
  int twos = 0, fives = 0;
  while (d % 2 == 0) d /= 2, ++twos;
  while (d % 5 == 0) d /= 5, ++fives;
  if (d != 1) return std::to_string(num_) + "/" + std::to_string(den_);

  int places = std::max(twos, fives);
  Wide scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  Wide scaled = static_cast<Wide>(num_) * (scale / den_);
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits;
  for (Wide v = scaled; v > 0 || digits.size() <= static_cast<std::size_t>(places); v /= 10)
    digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
  digits.insert(digits.end() - places, '.');
  return (negative ? "-" : "") + digits;
}

Rational Rational::operator-() const { return make(-static_cast<Wide>(num_), den_); }

Rational& Rational::operator+=(const Rational& rhs) {
  return *this = make(static_cast<Wide>(num_) * rhs.den_ + static_cast<Wide>(rhs.num_) * den_,
                      static_cast<Wide>(den_) * rhs.den_);
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  return *this = make(static_cast<Wide>(num_) * rhs.num_, static_cast<Wide>(den_) * rhs.den_);
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw std::domain_error("division by zero");
  return *this = make(static_cast<Wide>(num_) * rhs.den_, static_cast<Wide>(den_) * rhs.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return static_cast<Wide>(a.num_) * b.den_ <=> static_cast<Wide>(b.num_) * a.den_;
}

}  // namespace optidep
