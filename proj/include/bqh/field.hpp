#pragma once

// Exact scalar arithmetic over the two coefficient fields the engine supports:
// arbitrary-precision rationals and prime fields GF(p).  Every Scalar carries
// its field descriptor; mixing descriptors in one operation is an error.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bqh {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Base class for all errors raised on precondition violations.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed external input: files, descriptions, CLI expressions.
struct ParseError : Error {
  using Error::Error;
};

class Field {
 public:
  Field() = default;  // rationals

  static Field rationals() { return Field{}; }
  static Field gf(std::uint32_t p);  // throws ParseError unless p is prime, p < 2^31

  bool is_rationals() const { return p_ == 0; }
  std::uint32_t characteristic() const { return p_; }

  std::string str() const;                       // "Q" or "GF(p)"
  static Field parse(const std::string& text);   // inverse of str()

  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }
  friend bool operator!=(const Field& a, const Field& b) { return a.p_ != b.p_; }

 private:
  std::uint32_t p_ = 0;  // 0 encodes the rationals
};

class Scalar {
 public:
  Scalar() : Scalar(Field::rationals()) {}
  explicit Scalar(Field f) : field_(f) {}  // zero of the field

  static Scalar zero(Field f) { return Scalar(f); }
  static Scalar one(Field f) { return from_int(f, 1); }
  static Scalar from_int(Field f, long long n);
  static Scalar from_rational(BigRat q);  // field is the rationals

  // Accepts an optionally signed integer, or "a/b" over the rationals.
  static Scalar parse(Field f, const std::string& text);

  Field field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  // Only valid over the matching field kind.
  const BigRat& rational() const;
  std::uint32_t residue() const;

  Scalar operator-() const;
  Scalar inverse() const;  // throws Error on zero

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Canonical text: reduced "a/b" with "/1" omitted over Q, least residue over GF(p).
  std::string str() const;

 private:
  void check_same_field(const Scalar& o) const;

  Field field_;
  BigRat q_;           // used when field_ is the rationals
  std::uint64_t r_ = 0;  // used when field_ is GF(p)
};

}  // namespace bqh
