#include "bqh/field.hpp"

namespace bqh {

namespace {

bool is_prime_u32(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t acc = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1) acc = acc * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return acc;
}

}  // namespace

Field Field::gf(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime_u32(p)) {
    throw ParseError("GF modulus must be a prime below 2^31, got " + std::to_string(p));
  }
  Field f;
  f.p_ = p;
  return f;
}

std::string Field::str() const {
  return is_rationals() ? "Q" : "GF(" + std::to_string(p_) + ")";
}

Field Field::parse(const std::string& text) {
  if (text == "Q") return rationals();
  if (text.size() > 4 && text.compare(0, 3, "GF(") == 0 && text.back() == ')') {
    const std::string num = text.substr(3, text.size() - 4);
    try {
      std::size_t pos = 0;
      const unsigned long p = std::stoul(num, &pos);
      if (pos == num.size() && p < (1ull << 31)) return gf(static_cast<std::uint32_t>(p));
    } catch (const std::exception&) {
    }
  }
  throw ParseError("unrecognized field descriptor: " + text);
}

Scalar Scalar::from_int(Field f, long long n) {
  Scalar s(f);
  if (f.is_rationals()) {
    s.q_ = BigRat(n);
  } else {
    const long long p = f.characteristic();
    long long r = n % p;
    if (r < 0) r += p;
    s.r_ = static_cast<std::uint64_t>(r);
  }
  return s;
}

Scalar Scalar::from_rational(BigRat q) {
  Scalar s(Field::rationals());
  s.q_ = std::move(q);
  return s;
}

Scalar Scalar::parse(Field f, const std::string& text) {
  if (text.empty()) throw ParseError("empty scalar literal");
  const auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i) {
      if (t[i] < '0' || t[i] > '9') return false;
    }
    return true;
  };
  try {
    if (f.is_rationals()) {
      const auto slash = text.find('/');
      if (slash == std::string::npos) {
        if (!is_int(text)) throw ParseError("bad literal");
        return from_rational(BigRat(BigInt(text)));
      }
      const std::string num = text.substr(0, slash);
      const std::string den = text.substr(slash + 1);
      if (!is_int(num) || !is_int(den)) throw ParseError("bad literal");
      BigInt d(den);
      if (d == 0) throw ParseError("zero denominator");
      return from_rational(BigRat(BigInt(num), d));
    }
    if (!is_int(text)) throw ParseError("bad literal");
    BigInt n(text);
    const BigInt p(f.characteristic());
    BigInt r = n % p;
    if (r < 0) r += p;
    Scalar s(f);
    s.r_ = r.convert_to<std::uint64_t>();
    return s;
  } catch (const ParseError&) {
    throw ParseError("malformed scalar literal over " + f.str() + ": " + text);
  } catch (const std::exception&) {
    throw ParseError("malformed scalar literal over " + f.str() + ": " + text);
  }
}

bool Scalar::is_zero() const {
  return field_.is_rationals() ? q_.is_zero() : r_ == 0;
}

bool Scalar::is_one() const {
  return field_.is_rationals() ? q_ == 1 : r_ == 1;
}

const BigRat& Scalar::rational() const {
  if (!field_.is_rationals()) throw Error("rational() on a GF(p) scalar");
  return q_;
}

std::uint32_t Scalar::residue() const {
  if (field_.is_rationals()) throw Error("residue() on a rational scalar");
  return static_cast<std::uint32_t>(r_);
}

Scalar Scalar::operator-() const {
  Scalar s(field_);
  if (field_.is_rationals()) {
    s.q_ = -q_;
  } else if (r_ != 0) {
    s.r_ = field_.characteristic() - r_;
  }
  return s;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error("division by zero in " + field_.str());
  Scalar s(field_);
  if (field_.is_rationals()) {
    s.q_ = BigRat(1) / q_;  // component swap mishandles negative numerators
  } else {
    // Fermat inverse; the modulus is prime.
    const std::uint64_t p = field_.characteristic();
    s.r_ = mod_pow(r_, p - 2, p);
  }
  return s;
}

void Scalar::check_same_field(const Scalar& o) const {
  if (field_ != o.field_) {
    throw Error("mixed field descriptors: " + field_.str() + " vs " + o.field_.str());
  }
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same_field(o);
  if (field_.is_rationals()) {
    q_ += o.q_;
  } else {
    r_ = (r_ + o.r_) % field_.characteristic();
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same_field(o);
  if (field_.is_rationals()) {
    q_ -= o.q_;
  } else {
    const std::uint64_t p = field_.characteristic();
    r_ = (r_ + p - o.r_) % p;
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same_field(o);
  if (field_.is_rationals()) {
    q_ *= o.q_;
  } else {
    r_ = r_ * o.r_ % field_.characteristic();
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same_field(o);
  return *this *= o.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.field_ != b.field_) return false;
  return a.field_.is_rationals() ? a.q_ == b.q_ : a.r_ == b.r_;
}

std::string Scalar::str() const {
  if (!field_.is_rationals()) return std::to_string(r_);
  const BigInt num = boost::multiprecision::numerator(q_);
  const BigInt den = boost::multiprecision::denominator(q_);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace bqh
