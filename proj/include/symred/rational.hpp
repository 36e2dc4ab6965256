#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace symred {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number with arbitrary-precision numerator and denominator.
/// Always stored in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(BigInt num, BigInt den);

  /// Exact value of a finite double (every double is a dyadic rational).
  static Rational from_double(double v);
  /// Parses "3", "-3/2" or a decimal literal such as "0.125".
  static Rational parse(const std::string& text);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  bool is_integer() const { return den_ == 1; }
  bool is_negative() const { return num_ < 0; }
  int sign() const { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

  /// The value as a machine integer when it is an integer that fits.
  std::optional<long long> to_int() const;
  double to_double() const;
  std::string str() const;
  std::size_t hash() const;

  Rational operator-() const { return Rational(-num_, den_, Normalized{}); }
  Rational abs() const { return Rational(num_ < 0 ? BigInt(-num_) : num_, den_, Normalized{}); }
  Rational reciprocal() const;
  Rational pow(long long exponent) const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  struct Normalized {};
  Rational(BigInt num, BigInt den, Normalized) : num_(std::move(num)), den_(std::move(den)) {}

  BigInt num_;
  BigInt den_;
};

}  // namespace symred
