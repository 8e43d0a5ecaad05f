#include "bqh/algebra.hpp"

#include <algorithm>

namespace bqh {

std::string Deg::str() const {
  return "(" + std::to_string(n) + ", " + std::to_string(parity) + ")";
}

Scalar SparseVec::coeff(std::size_t i) const {
  const auto it = c_.find(i);
  return it == c_.end() ? Scalar::zero(field_) : it->second;
}

void SparseVec::set(std::size_t i, const Scalar& s) {
  if (s.field() != field_) throw Error("scalar field mismatch in sparse vector");
  if (s.is_zero()) {
    c_.erase(i);
  } else {
    c_[i] = s;
  }
}

void SparseVec::add(std::size_t i, const Scalar& s) { set(i, coeff(i) + s); }

void SparseVec::add_scaled(const SparseVec& o, const Scalar& s) {
  if (o.field_ != field_) throw Error("mixed field descriptors in sparse sum");
  if (s.is_zero()) return;
  for (const auto& [i, c] : o.c_) add(i, c * s);
}

SparseVec& SparseVec::operator+=(const SparseVec& o) {
  add_scaled(o, Scalar::one(field_));
  return *this;
}

SparseVec& SparseVec::operator-=(const SparseVec& o) {
  add_scaled(o, -Scalar::one(field_));
  return *this;
}

SparseVec SparseVec::scaled(const Scalar& s) const {
  SparseVec v(field_);
  v.add_scaled(*this, s);
  return v;
}

Vec SparseVec::dense(std::size_t n) const {
  Vec v(n, Scalar::zero(field_));
  for (const auto& [i, c] : c_) {
    if (i >= n) throw Error("sparse vector support exceeds requested dimension");
    v[i] = c;
  }
  return v;
}

SparseVec SparseVec::from_dense(Field f, const Vec& v) {
  SparseVec s(f);
  for (std::size_t i = 0; i < v.size(); ++i) s.set(i, v[i]);
  return s;
}

SuperAlgebra::SuperAlgebra(Field f, std::vector<BasisInfo> basis, SuperAlgebraOptions opts)
    : field_(f), basis_(std::move(basis)), empty_(f) {
  if (basis_.empty()) throw Error("algebra needs a nonempty basis");
  if (basis_.size() > opts.max_dimension) {
    throw Error("basis size " + std::to_string(basis_.size()) + " exceeds the configured cap " +
                std::to_string(opts.max_dimension));
  }
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const auto& b = basis_[i];
    if (b.label.empty()) throw Error("empty basis label at index " + std::to_string(i));
    if (b.deg.parity != 0 && b.deg.parity != 1) throw Error("parity must be 0 or 1: " + b.label);
    if (!index_.emplace(b.label, i).second) throw Error("duplicate basis label: " + b.label);
  }
}

std::optional<std::size_t> SuperAlgebra::index_of(const std::string& label) const {
  const auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void SuperAlgebra::check_index(std::size_t i) const {
  if (i >= basis_.size()) throw Error("basis index out of range: " + std::to_string(i));
}

void SuperAlgebra::check_element(const SparseVec& v, const char* what) const {
  if (v.field() != field_) {
    throw Error(std::string(what) + ": element field does not match the algebra");
  }
  if (!v.entries().empty() && v.entries().rbegin()->first >= basis_.size()) {
    throw Error(std::string(what) + ": element support outside the algebra's basis");
  }
}

void SuperAlgebra::set_product(std::size_t i, std::size_t j, SparseVec value) {
  if (validated_) throw Error("algebra is immutable after validation");
  check_index(i);
  check_index(j);
  check_element(value, "structure constant");
  if (value.is_zero()) {
    table_.erase({i, j});
  } else {
    table_.insert_or_assign({i, j}, std::move(value));
  }
}

void SuperAlgebra::set_unit(SparseVec u) {
  if (validated_) throw Error("algebra is immutable after validation");
  check_element(u, "unit");
  unit_ = std::move(u);
}

const SparseVec& SuperAlgebra::product(std::size_t i, std::size_t j) const {
  check_index(i);
  check_index(j);
  const auto it = table_.find({i, j});
  return it == table_.end() ? empty_ : it->second;
}

SparseVec SuperAlgebra::basis_element(std::size_t i) const {
  check_index(i);
  SparseVec v(field_);
  v.set(i, Scalar::one(field_));
  return v;
}

SparseVec SuperAlgebra::element_from_labels(const std::map<std::string, Scalar>& coeffs) const {
  SparseVec v(field_);
  for (const auto& [label, s] : coeffs) {
    const auto idx = index_of(label);
    if (!idx) throw Error("unknown basis label: " + label);
    v.add(*idx, s);
  }
  return v;
}

SparseVec SuperAlgebra::multiply(const SparseVec& a, const SparseVec& b) const {
  check_element(a, "multiply lhs");
  check_element(b, "multiply rhs");
  SparseVec out(field_);
  for (const auto& [i, ci] : a.entries()) {
    for (const auto& [j, cj] : b.entries()) {
      out.add_scaled(product(i, j), ci * cj);
    }
  }
  return out;
}

ValidationReport SuperAlgebra::validate() const {
  ValidationReport rep;
  const std::size_t n = basis_.size();
  const std::size_t max_problems = 24;
  const auto note = [&](std::string msg) {
    if (rep.problems.size() < max_problems) rep.problems.push_back(std::move(msg));
  };

  for (const auto& [key, value] : table_) {
    const Deg expected = basis_[key.first].deg + basis_[key.second].deg;
    for (const auto& [k, c] : value.entries()) {
      if (basis_[k].deg != expected) {
        note("grading violation: " + label(key.first) + " * " + label(key.second) +
             " has support on " + label(k) + " of degree " + basis_[k].deg.str() +
             ", expected " + expected.str());
        break;
      }
    }
  }

  for (std::size_t i = 0; i < n && rep.problems.size() < max_problems; ++i) {
    for (std::size_t j = 0; j < n && rep.problems.size() < max_problems; ++j) {
      const SparseVec& ij = product(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        const SparseVec lhs = multiply(ij, basis_element(k));
        const SparseVec rhs = multiply(basis_element(i), product(j, k));
        if (lhs != rhs) {
          note("associativity violation on (" + label(i) + ", " + label(j) + ", " + label(k) + ")");
          break;
        }
      }
    }
  }

  if (unit_) {
    const auto udeg = homogeneous_degree(*unit_);
    if (!udeg || *udeg != Deg{0, 0}) {
      note("unit is not homogeneous of degree (0, 0)");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const SparseVec b = basis_element(i);
      if (multiply(*unit_, b) != b || multiply(b, *unit_) != b) {
        note("unit law fails on basis element " + label(i));
      }
    }
  }

  rep.ok = rep.problems.empty();
  if (rep.ok) validated_ = true;
  return rep;
}

void SuperAlgebra::require_validated() const {
  if (!validated_) throw Error("operation requires a validated algebra");
}

GradedDim SuperAlgebra::graded_dimension() const {
  require_validated();
  GradedDim g;
  for (const auto& b : basis_) g += GradedDim::term(b.deg.n, b.deg.parity, 1);
  return g;
}

IdempotentReport SuperAlgebra::check_idempotent(const SparseVec& e) const {
  require_validated();
  check_element(e, "idempotent candidate");
  IdempotentReport rep;
  const SparseVec sq = multiply(e, e);
  rep.idempotent = (sq == e);
  if (!rep.idempotent) rep.witness = "e*e differs from e";
  const auto d = homogeneous_degree(e);
  rep.degree_zero_even = d.has_value() && *d == Deg{0, 0};
  if (!rep.degree_zero_even && rep.witness.empty()) {
    rep.witness = "candidate is not homogeneous of degree (0, 0)";
  }
  return rep;
}

std::optional<Deg> SuperAlgebra::homogeneous_degree(const SparseVec& v) const {
  check_element(v, "degree query");
  if (v.is_zero()) return std::nullopt;
  std::optional<Deg> deg;
  for (const auto& [i, c] : v.entries()) {
    if (!deg) {
      deg = basis_[i].deg;
    } else if (*deg != basis_[i].deg) {
      return std::nullopt;
    }
  }
  return deg;
}

}  // namespace bqh
