#pragma once

// Dense exact matrices over Q or GF(p) with Gauss-Jordan elimination.
// Everything downstream (basis checks, Gram radicals, commutants, idempotent
// splitting) reduces to rref / kernel / solve over one of these two fields.

#include "bqh/field.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace bqh {

using Vec = std::vector<Scalar>;

class Matrix {
 public:
  Matrix() : field_(Field::rationals()), rows_(0), cols_(0) {}
  Matrix(Field f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols), a_(rows * cols, Scalar::zero(f)) {}

  static Matrix identity(Field f, std::size_t n);
  static Matrix from_rows(Field f, const std::vector<Vec>& rows, std::size_t cols);
  static Matrix from_cols(Field f, const std::vector<Vec>& cols, std::size_t rows);

  Field field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  Vec row(std::size_t r) const;
  Vec col(std::size_t c) const;
  Matrix transpose() const;
  bool is_zero() const;

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Vec apply(const Vec& v) const;  // matrix * column vector

  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  Field field_;
  std::size_t rows_, cols_;
  std::vector<Scalar> a_;
};

struct RrefResult {
  Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

// Unique reduced row echelon form: pivots 1, pivot columns elementary.
RrefResult rref(const Matrix& m);

// Basis of the right kernel {v : m v = 0}, one vector per free column,
// in increasing free-column order; the free coordinate is normalized to 1.
std::vector<Vec> kernel_basis(const Matrix& m);

std::size_t rank(const Matrix& m);

// One solution of m x = b, or nullopt when inconsistent (free coords 0).
std::optional<Vec> solve(const Matrix& m, const Vec& b);

std::optional<Matrix> inverse(const Matrix& m);

// Incremental row space in reduced echelon form; used for ideal closures,
// span membership, and greedy basis selection.
class RowSpace {
 public:
  RowSpace(Field f, std::size_t ncols) : field_(f), ncols_(ncols) {}

  // Reduces v against the current rows; inserts the remainder unless zero.
  // Returns true when the dimension grew.
  bool add(Vec v);
  bool contains(Vec v) const;
  std::size_t dim() const { return rows_.size(); }
  std::size_t ncols() const { return ncols_; }

  // Coordinates of v in terms of the vectors previously accepted by add(),
  // or nullopt when v lies outside the span.  Tracks the insertion history.
  std::optional<Vec> coordinates(Vec v) const;

  // Remainder of v after elimination against the stored rows: the unique
  // member of v + span supported away from the lead columns.
  Vec residue(Vec v) const;
  const std::vector<std::size_t>& lead_columns() const { return lead_; }

 private:
  void reduce(Vec& v, Vec* combo) const;

  Field field_;
  std::size_t ncols_;
  std::vector<Vec> rows_;            // reduced echelon rows
  std::vector<std::size_t> lead_;    // pivot column per row
  std::vector<Vec> combo_;           // rows_[k] as a combination of inserted vectors
  std::size_t inserted_ = 0;
};

}  // namespace bqh
