#include "bqh/graded_dim.hpp"

#include "bqh/field.hpp"

#include <array>

namespace bqh {

GradedDim GradedDim::term(int q_exp, int parity, long long coeff) {
  if (parity != 0 && parity != 1) throw Error("parity exponent must be 0 or 1");
  GradedDim g;
  g.set({q_exp, parity}, coeff);
  return g;
}

long long GradedDim::coeff(int q_exp, int parity) const {
  const auto it = c_.find({q_exp, parity});
  return it == c_.end() ? 0 : it->second;
}

void GradedDim::set(Key k, long long v) {
  if (v == 0) {
    c_.erase(k);
  } else {
    c_[k] = v;
  }
}

GradedDim& GradedDim::operator+=(const GradedDim& o) {
  for (const auto& [k, v] : o.c_) set(k, coeff(k.first, k.second) + v);
  return *this;
}

GradedDim& GradedDim::operator-=(const GradedDim& o) {
  for (const auto& [k, v] : o.c_) set(k, coeff(k.first, k.second) - v);
  return *this;
}

GradedDim GradedDim::operator*(const GradedDim& o) const {
  GradedDim p;
  for (const auto& [ka, va] : c_) {
    for (const auto& [kb, vb] : o.c_) {
      // pi^2 = 1, so the parity exponents add mod 2.
      const Key k{ka.first + kb.first, ka.second ^ kb.second};
      p.set(k, p.coeff(k.first, k.second) + va * vb);
    }
  }
  return p;
}

long long GradedDim::eval_at_one() const {
  long long total = 0;
  for (const auto& [k, v] : c_) total += v;
  return total;
}

bool GradedDim::all_coeffs_nonnegative() const {
  for (const auto& [k, v] : c_) {
    if (v < 0) return false;
  }
  return true;
}

std::string GradedDim::str() const {
  if (c_.empty()) return "0";
  std::string out;
  for (const auto& [k, v] : c_) {
    if (!out.empty()) out += " + ";
    const auto [n, eps] = k;
    std::string term;
    if (v != 1 || (n == 0 && eps == 0)) term = std::to_string(v);
    if (n != 0) {
      if (!term.empty()) term += "*";
      term += (n == 1) ? "q" : "q^" + std::to_string(n);
    }
    if (eps != 0) {
      if (!term.empty()) term += "*";
      term += "pi";
    }
    out += term;
  }
  return out;
}

std::vector<std::array<long long, 3>> GradedDim::triples() const {
  std::vector<std::array<long long, 3>> t;
  t.reserve(c_.size());
  for (const auto& [k, v] : c_) {
    t.push_back({static_cast<long long>(k.first), static_cast<long long>(k.second), v});
  }
  return t;
}

}  // namespace bqh
