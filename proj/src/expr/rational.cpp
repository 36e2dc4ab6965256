#include "symred/rational.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include <boost/integer/common_factor.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace symred {

Rational::Rational(BigInt num, BigInt den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  BigInt g = boost::multiprecision::gcd(num < 0 ? BigInt(-num) : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = std::move(num);
  den_ = std::move(den);
}

Rational Rational::from_double(double v) {
  if (!std::isfinite(v)) throw std::domain_error("cannot convert non-finite double to rational");
  if (v == 0.0) return Rational();
  int exponent = 0;
  double mantissa = std::frexp(v, &exponent);  // v = mantissa * 2^exponent, |mantissa| in [0.5, 1)
  auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  BigInt num(scaled);
  BigInt den(1);
  if (exponent > 0) {
    num <<= exponent;
  } else {
    den <<= -exponent;
  }
  return Rational(num, den);
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    return parse(text.substr(0, slash)) / parse(text.substr(slash + 1));
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(BigInt(text), BigInt(1));
  std::string whole = text.substr(0, dot);
  std::string frac = text.substr(dot + 1);
  bool negative = !whole.empty() && whole[0] == '-';
  if (negative || (!whole.empty() && whole[0] == '+')) whole = whole.substr(1);
  if (whole.empty()) whole = "0";
  BigInt den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  BigInt num = BigInt(whole) * den + (frac.empty() ? BigInt(0) : BigInt(frac));
  return Rational(negative ? BigInt(-num) : num, den);
}

std::optional<long long> Rational::to_int() const {
  if (den_ != 1) return std::nullopt;
  if (num_ > std::numeric_limits<long long>::max() || num_ < std::numeric_limits<long long>::min()) {
    return std::nullopt;
  }
  return num_.convert_to<long long>();
}

double Rational::to_double() const {
  using Float = boost::multiprecision::cpp_bin_float_double_extended;
  Float q = Float(num_) / Float(den_);
  return q.convert_to<double>();
}

std::string Rational::str() const {
  if (den_ == 1) return num_.str();
  return num_.str() + "/" + den_.str();
}

std::size_t Rational::hash() const {
  auto part = [](const BigInt& v) -> std::size_t {
    if (v <= std::numeric_limits<long long>::max() && v >= std::numeric_limits<long long>::min()) {
      return std::hash<long long>{}(v.convert_to<long long>());
    }
    return std::hash<std::string>{}(v.str());
  };
  return part(num_) * 1000003u ^ part(den_);
}

Rational Rational::reciprocal() const {
  if (num_ == 0) throw std::domain_error("reciprocal of zero");
  return Rational(den_, num_);
}

Rational Rational::pow(long long exponent) const {
  if (exponent < 0) return reciprocal().pow(-exponent);
  BigInt n = 1;
  BigInt d = 1;
  BigInt bn = num_;
  BigInt bd = den_;
  while (exponent > 0) {
    if (exponent & 1) {
      n *= bn;
      d *= bd;
    }
    bn *= bn;
    bd *= bd;
    exponent >>= 1;
  }
  return Rational(n, d, Normalized{});
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.den_ == 1 && b.den_ == 1) return Rational(a.num_ + b.num_, BigInt(1), Rational::Normalized{});
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  if (a.den_ == 1 && b.den_ == 1) return Rational(a.num_ * b.num_, BigInt(1), Rational::Normalized{});
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) { return a * b.reciprocal(); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  BigInt lhs = a.num_ * b.den_;
  BigInt rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace symred
