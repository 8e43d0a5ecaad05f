#include "bqh/matrix.hpp"

namespace bqh {

namespace {

void check_fields(Field a, Field b, const char* op) {
  if (a != b) throw Error(std::string("mixed field descriptors in ") + op);
}

}  // namespace

Matrix Matrix::identity(Field f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
  return m;
}

Matrix Matrix::from_rows(Field f, const std::vector<Vec>& rows, std::size_t cols) {
  Matrix m(f, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error("row length mismatch in from_rows");
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::from_cols(Field f, const std::vector<Vec>& cols, std::size_t rows) {
  Matrix m(f, rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw Error("column length mismatch in from_cols");
    for (std::size_t r = 0; r < rows; ++r) m.at(r, c) = cols[c][r];
  }
  return m;
}

Vec Matrix::row(std::size_t r) const {
  Vec v;
  v.reserve(cols_);
  for (std::size_t c = 0; c < cols_; ++c) v.push_back(at(r, c));
  return v;
}

Vec Matrix::col(std::size_t c) const {
  Vec v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back(at(r, c));
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  }
  return t;
}

bool Matrix::is_zero() const {
  for (const auto& s : a_) {
    if (!s.is_zero()) return false;
  }
  return true;
}

Matrix Matrix::operator*(const Matrix& o) const {
  check_fields(field_, o.field_, "matrix product");
  if (cols_ != o.rows_) throw Error("dimension mismatch in matrix product");
  Matrix p(field_, rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& s = at(r, k);
      if (s.is_zero()) continue;
      for (std::size_t c = 0; c < o.cols_; ++c) {
        p.at(r, c) += s * o.at(k, c);
      }
    }
  }
  return p;
}

Matrix Matrix::operator+(const Matrix& o) const {
  check_fields(field_, o.field_, "matrix sum");
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("dimension mismatch in matrix sum");
  Matrix s = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) s.a_[i] += o.a_[i];
  return s;
}

Matrix Matrix::operator-(const Matrix& o) const {
  check_fields(field_, o.field_, "matrix difference");
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("dimension mismatch in matrix difference");
  Matrix s = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) s.a_[i] -= o.a_[i];
  return s;
}

Vec Matrix::apply(const Vec& v) const {
  if (v.size() != cols_) throw Error("dimension mismatch in matrix apply");
  Vec out(rows_, Scalar::zero(field_));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (!at(r, c).is_zero() && !v[c].is_zero()) out[r] += at(r, c) * v[c];
    }
  }
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

RrefResult rref(const Matrix& m) {
  RrefResult res;
  res.reduced = m;
  Matrix& a = res.reduced;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < a.cols() && lead_row < a.rows(); ++c) {
    std::size_t pivot = lead_row;
    while (pivot < a.rows() && a.at(pivot, c).is_zero()) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != lead_row) {
      for (std::size_t k = 0; k < a.cols(); ++k) std::swap(a.at(pivot, k), a.at(lead_row, k));
    }
    const Scalar inv = a.at(lead_row, c).inverse();
    for (std::size_t k = c; k < a.cols(); ++k) a.at(lead_row, k) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == lead_row || a.at(r, c).is_zero()) continue;
      const Scalar factor = a.at(r, c);
      for (std::size_t k = c; k < a.cols(); ++k) {
        a.at(r, k) -= factor * a.at(lead_row, k);
      }
    }
    res.pivot_cols.push_back(c);
    ++lead_row;
  }
  res.rank = res.pivot_cols.size();
  return res;
}

std::vector<Vec> kernel_basis(const Matrix& m) {
  const RrefResult r = rref(m);
  const Field f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : r.pivot_cols) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    Vec v(m.cols(), Scalar::zero(f));
    v[c] = Scalar::one(f);
    for (std::size_t k = 0; k < r.pivot_cols.size(); ++k) {
      v[r.pivot_cols[k]] = -r.reduced.at(k, c);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw Error("dimension mismatch in solve");
  Matrix aug(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, m.cols()) = b[r];
  }
  const RrefResult r = rref(aug);
  for (std::size_t k = 0; k < r.pivot_cols.size(); ++k) {
    if (r.pivot_cols[k] == m.cols()) return std::nullopt;  // pivot in the constant column
  }
  Vec x(m.cols(), Scalar::zero(m.field()));
  for (std::size_t k = 0; k < r.pivot_cols.size(); ++k) {
    x[r.pivot_cols[k]] = r.reduced.at(k, m.cols());
  }
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, n + r) = Scalar::one(m.field());
  }
  const RrefResult r = rref(aug);
  if (r.rank < n || r.pivot_cols[n - 1] != n - 1) return std::nullopt;
  Matrix inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = r.reduced.at(i, n + j);
  }
  return inv;
}

void RowSpace::reduce(Vec& v, Vec* combo) const {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Scalar c = v[lead_[k]];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < ncols_; ++j) {
      if (!rows_[k][j].is_zero()) v[j] -= c * rows_[k][j];
    }
    if (combo) {
      for (std::size_t j = 0; j < combo_[k].size(); ++j) {
        (*combo)[j] += c * combo_[k][j];
      }
    }
  }
}

bool RowSpace::add(Vec v) {
  if (v.size() != ncols_) throw Error("dimension mismatch in RowSpace::add");
  Vec combo(inserted_, Scalar::zero(field_));
  reduce(v, &combo);
  std::size_t lead = ncols_;
  for (std::size_t j = 0; j < ncols_; ++j) {
    if (!v[j].is_zero()) {
      lead = j;
      break;
    }
  }
  if (lead == ncols_) return false;
  // Normalize so the lead entry is 1; record the row as a combination of
  // accepted originals (the negated reduction plus the new slot).
  const Scalar inv = v[lead].inverse();
  for (auto& s : v) s *= inv;
  for (auto& s : combo) s = -(s * inv);
  combo.push_back(inv);
  for (auto& c : combo_) c.resize(inserted_ + 1, Scalar::zero(field_));
  rows_.push_back(std::move(v));
  lead_.push_back(lead);
  combo_.push_back(std::move(combo));
  ++inserted_;
  return true;
}

bool RowSpace::contains(Vec v) const {
  if (v.size() != ncols_) throw Error("dimension mismatch in RowSpace::contains");
  reduce(v, nullptr);
  for (const auto& s : v) {
    if (!s.is_zero()) return false;
  }
  return true;
}

std::optional<Vec> RowSpace::coordinates(Vec v) const {
  if (v.size() != ncols_) throw Error("dimension mismatch in RowSpace::coordinates");
  Vec combo(inserted_, Scalar::zero(field_));
  reduce(v, &combo);
  for (const auto& s : v) {
    if (!s.is_zero()) return std::nullopt;
  }
  return combo;
}

Vec RowSpace::residue(Vec v) const {
  if (v.size() != ncols_) throw Error("dimension mismatch in RowSpace::residue");
  reduce(v, nullptr);
  return v;
}

}  // namespace bqh
