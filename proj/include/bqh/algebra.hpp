#pragma once

// Finite-dimensional graded superalgebras presented by structure constants on
// a labeled homogeneous basis.  Elements are sparse coefficient vectors over
// the algebra's field; the zero coefficient is never stored.

#include "bqh/field.hpp"
#include "bqh/graded_dim.hpp"
#include "bqh/matrix.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bqh {

// Degree in Z x Z/2: q-degree plus parity.
struct Deg {
  int n = 0;
  int parity = 0;

  friend Deg operator+(Deg a, Deg b) { return Deg{a.n + b.n, (a.parity + b.parity) & 1}; }
  friend bool operator==(Deg a, Deg b) { return a.n == b.n && a.parity == b.parity; }
  friend bool operator!=(Deg a, Deg b) { return !(a == b); }
  std::string str() const;
};

struct BasisInfo {
  std::string label;
  Deg deg;
};

class SparseVec {
 public:
  explicit SparseVec(Field f) : field_(f) {}

  Field field() const { return field_; }
  bool is_zero() const { return c_.empty(); }
  std::size_t support_size() const { return c_.size(); }

  Scalar coeff(std::size_t i) const;
  void set(std::size_t i, const Scalar& s);
  void add(std::size_t i, const Scalar& s);
  void add_scaled(const SparseVec& o, const Scalar& s);

  SparseVec& operator+=(const SparseVec& o);
  SparseVec& operator-=(const SparseVec& o);
  SparseVec scaled(const Scalar& s) const;

  friend SparseVec operator+(SparseVec a, const SparseVec& b) { return a += b; }
  friend SparseVec operator-(SparseVec a, const SparseVec& b) { return a -= b; }
  friend bool operator==(const SparseVec& a, const SparseVec& b) {
    return a.field_ == b.field_ && a.c_ == b.c_;
  }
  friend bool operator!=(const SparseVec& a, const SparseVec& b) { return !(a == b); }

  const std::map<std::size_t, Scalar>& entries() const { return c_; }

  Vec dense(std::size_t n) const;
  static SparseVec from_dense(Field f, const Vec& v);

 private:
  Field field_;
  std::map<std::size_t, Scalar> c_;
};

struct ValidationReport {
  bool ok = false;
  std::vector<std::string> problems;
};

struct IdempotentReport {
  bool idempotent = false;
  bool degree_zero_even = false;
  std::string witness;

  bool ok() const { return idempotent && degree_zero_even; }
};

struct SuperAlgebraOptions {
  // Guards against runaway table sizes; larger inputs are rejected upfront.
  std::size_t max_dimension = 512;
};

class SuperAlgebra {
 public:
  SuperAlgebra(Field f, std::vector<BasisInfo> basis, SuperAlgebraOptions opts = {});

  Field field() const { return field_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<BasisInfo>& basis() const { return basis_; }
  const std::string& label(std::size_t i) const { return basis_[i].label; }
  Deg deg(std::size_t i) const { return basis_[i].deg; }
  std::optional<std::size_t> index_of(const std::string& label) const;

  // Mutation is only allowed before successful validation.
  void set_product(std::size_t i, std::size_t j, SparseVec value);
  void set_unit(SparseVec u);

  const SparseVec& product(std::size_t i, std::size_t j) const;  // of basis elements
  const std::optional<SparseVec>& unit() const { return unit_; }

  SparseVec zero_element() const { return SparseVec(field_); }
  SparseVec basis_element(std::size_t i) const;
  SparseVec element_from_labels(const std::map<std::string, Scalar>& coeffs) const;

  SparseVec multiply(const SparseVec& a, const SparseVec& b) const;

  // Grading, associativity on all basis triples, and the unit laws.
  // Marks the algebra validated only when every check passes.
  ValidationReport validate() const;
  bool validated() const { return validated_; }
  void require_validated() const;

  GradedDim graded_dimension() const;
  IdempotentReport check_idempotent(const SparseVec& e) const;

  // Degree of a nonzero homogeneous element; nullopt when zero or mixed.
  std::optional<Deg> homogeneous_degree(const SparseVec& v) const;

 private:
  void check_index(std::size_t i) const;
  void check_element(const SparseVec& v, const char* what) const;

  Field field_;
  std::vector<BasisInfo> basis_;
  std::map<std::string, std::size_t> index_;
  std::map<std::pair<std::size_t, std::size_t>, SparseVec> table_;  // absent pair = zero
  std::optional<SparseVec> unit_;
  SparseVec empty_;
  mutable bool validated_ = false;
};

}  // namespace bqh
