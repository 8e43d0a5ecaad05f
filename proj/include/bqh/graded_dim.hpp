#pragma once

// Graded dimensions live in Z[q, q^-1][pi]/(pi^2 - 1): Laurent polynomials in
// the degree variable q with a parity marker pi.  Sparse integer coefficients
// keyed by (q-exponent, parity exponent).

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace bqh {

class GradedDim {
 public:
  // (q-exponent, parity exponent in {0,1}) -> integer coefficient
  using Key = std::pair<int, int>;

  GradedDim() = default;

  static GradedDim zero() { return GradedDim{}; }
  static GradedDim one() { return term(0, 0, 1); }
  static GradedDim term(int q_exp, int parity, long long coeff);

  bool is_zero() const { return c_.empty(); }
  long long coeff(int q_exp, int parity) const;
  const std::map<Key, long long>& terms() const { return c_; }

  GradedDim& operator+=(const GradedDim& o);
  GradedDim& operator-=(const GradedDim& o);
  GradedDim operator*(const GradedDim& o) const;

  friend GradedDim operator+(GradedDim a, const GradedDim& b) { return a += b; }
  friend GradedDim operator-(GradedDim a, const GradedDim& b) { return a -= b; }
  friend bool operator==(const GradedDim& a, const GradedDim& b) { return a.c_ == b.c_; }
  friend bool operator!=(const GradedDim& a, const GradedDim& b) { return !(a == b); }

  // Total dimension: evaluate at q = 1, pi = 1.
  long long eval_at_one() const;
  bool all_coeffs_nonnegative() const;

  // Canonical rendering: terms sorted by (q-exponent, parity), each printed
  // as "c*q^n*pi^e" with trivial factors omitted; zero prints "0".
  std::string str() const;

  // Canonical triple list [q_exp, parity, coeff] sorted by (q_exp, parity).
  std::vector<std::array<long long, 3>> triples() const;

 private:
  void set(Key k, long long v);

  std::map<Key, long long> c_;  // no zero coefficients stored
};

}  // namespace bqh
