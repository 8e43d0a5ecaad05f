#pragma once

// Shared test scaffolding: a pool of verified catalog algebras, independent
// oracles for dimensions and multiplication tables, and frozen expected
// values the suites compare against.  The oracles never call into the
// construction code they check; they recompute from first principles.

#include "bqh/basicize.hpp"
#include "bqh/catalog.hpp"
#include "bqh/io.hpp"
#include "bqh/standard_modules.hpp"
#include "bqh/truncation.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace bqh_test {

using namespace bqh;

// ---- verification shortcut ----

inline VerifiedHeredity must_verify(const SuperAlgebra& A, const HeredityData& data) {
  const ValidationReport vr = A.validate();
  if (!vr.ok) throw Error("pool algebra failed validation: " + vr.problems.front());
  HeredityReport hr = verify_heredity(A, data);
  if (!hr.ok) {
    throw Error("pool algebra failed heredity verification: " + hr.failures.front().check +
                ": " + hr.failures.front().detail);
  }
  return std::move(*hr.verified);
}

// ---- pool of verified catalog algebras ----

struct PoolEntry {
  std::string name;
  CatalogAlgebra cat;
  VerifiedHeredity vh;
  bool is_zigzag = false;
  std::size_t zigzag_l = 0;
};

inline PoolEntry make_zigzag_entry(std::size_t l, const Field& f) {
  CatalogAlgebra cat = extended_zigzag(l, f);
  VerifiedHeredity vh = must_verify(cat.algebra, cat.data);
  return PoolEntry{"zigzag(" + std::to_string(l) + ")/" + f.str(), std::move(cat),
                   std::move(vh), true, l};
}

inline PoolEntry make_matrix_entry(std::size_t n, std::size_t m, const Field& f) {
  CatalogAlgebra cat = matrix_superalgebra(n, m, f);
  VerifiedHeredity vh = must_verify(cat.algebra, cat.data);
  return PoolEntry{"matrix(" + std::to_string(n) + "|" + std::to_string(m) + ")/" + f.str(),
                   std::move(cat), std::move(vh), false, 0};
}

// Built once; verification of each member is itself part of the setup
// contract, so a defect in any catalog family aborts every dependent test.
inline const std::vector<PoolEntry>& pool() {
  static const std::vector<PoolEntry> entries = [] {
    std::vector<PoolEntry> out;
    const Field q = Field::rationals();
    const Field f2 = Field::gf(2);
    const Field f7 = Field::gf(7);
    for (std::size_t l = 1; l <= 4; ++l) {
      out.push_back(make_zigzag_entry(l, q));
      out.push_back(make_zigzag_entry(l, f2));
    }
    out.push_back(make_zigzag_entry(2, f7));
    out.push_back(make_matrix_entry(1, 0, q));
    out.push_back(make_matrix_entry(2, 0, q));
    out.push_back(make_matrix_entry(1, 1, q));
    out.push_back(make_matrix_entry(2, 1, q));
    out.push_back(make_matrix_entry(2, 1, f2));
    out.push_back(make_matrix_entry(2, 2, Field::gf(5)));
    {
      CatalogAlgebra sum = direct_sum(extended_zigzag(1, q), matrix_superalgebra(1, 1, q));
      VerifiedHeredity vh = must_verify(sum.algebra, sum.data);
      out.push_back(PoolEntry{"zigzag(1)+matrix(1|1)/Q", std::move(sum), std::move(vh),
                              false, 0});
    }
    return out;
  }();
  return entries;
}

// ---- independent zigzag oracle ----
//
// Works on raw path words: an arrow is the vertex pair (to, from), a word is
// a product-ordered arrow list with its start vertex.  The normal form is
// computed from the defining relations alone.

struct ZigzagWord {
  int start = 0;                           // vertex the rightmost arrow leaves
  std::vector<std::pair<int, int>> arrows;  // product order: leftmost acts last

  int end() const { return arrows.empty() ? start : arrows.front().first; }
};

struct ZigzagOracle {
  std::size_t l;

  explicit ZigzagOracle(std::size_t l_in) : l(l_in) {}

  static std::string arrow_label(int to, int from) {
    return "a" + std::to_string(to) + "_" + std::to_string(from);
  }

  // Canonical labels of the surviving monomials, recomputed by enumerating
  // words of each length and quotienting by the relations.
  std::vector<std::string> basis_labels() const {
    std::vector<std::string> out;
    for (int v = 0; v <= static_cast<int>(l); ++v) out.push_back("e" + std::to_string(v));
    for (int v = 0; v + 1 <= static_cast<int>(l); ++v) {
      out.push_back(arrow_label(v + 1, v));
      out.push_back(arrow_label(v, v + 1));
    }
    // Length-two survivors: enumerate every composable pair and keep the
    // distinct nonzero classes.  Cycles at j through j + 1 and through j - 1
    // agree; the cycle at the top vertex and all non-cycles vanish.
    std::set<std::string> classes;
    for (int t1 = 0; t1 <= static_cast<int>(l); ++t1) {
      for (int d1 : {t1 - 1, t1 + 1}) {
        if (d1 < 0 || d1 > static_cast<int>(l)) continue;
        for (int d2 : {d1 - 1, d1 + 1}) {
          if (d2 < 0 || d2 > static_cast<int>(l)) continue;
          ZigzagWord w{t1, {{d2, d1}, {d1, t1}}};
          const auto nf = normal_form(w);
          if (nf.has_value()) classes.insert(*nf);
        }
      }
    }
    for (const std::string& c : classes) out.push_back(c);
    return out;
  }

  // Word of a basis label; inverse of the normal form naming.
  ZigzagWord word_of(const std::string& label) const {
    if (label[0] == 'e') return ZigzagWord{std::stoi(label.substr(1)), {}};
    if (label[0] == 'c') {
      const int j = std::stoi(label.substr(1));
      return ZigzagWord{j, {{j, j + 1}, {j + 1, j}}};
    }
    const auto us = label.find('_');
    const int to = std::stoi(label.substr(1, us - 1));
    const int from = std::stoi(label.substr(us + 1));
    return ZigzagWord{from, {{to, from}}};
  }

  // Normal form of a composable word: the label of its class, or nullopt for
  // zero.  Applies the relations directly, never the structure constants.
  std::optional<std::string> normal_form(const ZigzagWord& w) const {
    const std::size_t len = w.arrows.size();
    if (len == 0) return "e" + std::to_string(w.start);
    if (len == 1) return arrow_label(w.arrows[0].first, w.arrows[0].second);
    if (len >= 3) return std::nullopt;
    const int t = w.start;
    const int mid = w.arrows[1].first;
    const int dst = w.arrows[0].first;
    if (dst != t) return std::nullopt;  // length-two non-cycles vanish
    if (mid == t + 1) return "c" + std::to_string(t);
    if (t == static_cast<int>(l)) return std::nullopt;  // top cycle vanishes
    return "c" + std::to_string(t);
  }

  // Product of two monomials by concatenation plus normal form.
  std::optional<std::string> product(const std::string& left, const std::string& right) const {
    const ZigzagWord a = word_of(left);
    const ZigzagWord b = word_of(right);
    if (b.end() != a.start) return std::nullopt;
    ZigzagWord c{b.start, a.arrows};
    c.arrows.insert(c.arrows.end(), b.arrows.begin(), b.arrows.end());
    return normal_form(c);
  }

  // Endpoints (start, end) of a monomial, for truncation filters.
  std::pair<int, int> endpoints(const std::string& label) const {
    const ZigzagWord w = word_of(label);
    return {w.start, w.end()};
  }
};

// Compares a zigzag algebra's entire multiplication table against the word
// oracle.  Returns a human-readable mismatch, or empty on agreement.
inline std::string compare_zigzag_with_oracle(const SuperAlgebra& A, std::size_t l) {
  ZigzagOracle oracle(l);
  const std::vector<std::string> labels = oracle.basis_labels();
  if (labels.size() != A.dim()) {
    return "dimension " + std::to_string(A.dim()) + " differs from the " +
           std::to_string(labels.size()) + " oracle monomials";
  }
  for (const std::string& lab : labels) {
    if (!A.index_of(lab).has_value()) return "oracle monomial " + lab + " is not a basis label";
  }
  for (const std::string& la : labels) {
    for (const std::string& lb : labels) {
      const SparseVec got = A.multiply(A.basis_element(*A.index_of(la)),
                                       A.basis_element(*A.index_of(lb)));
      const auto expect = oracle.product(la, lb);
      SparseVec want(A.field());
      if (expect.has_value()) want.set(*A.index_of(*expect), Scalar::one(A.field()));
      if (got != want) return "product " + la + " * " + lb + " disagrees with the oracle";
    }
  }
  return "";
}

// ---- independent matrix-unit oracle ----
//
// Multiplies genuine dense 0/1 matrices and re-reads the result as a basis
// combination, bypassing the structure-constant table entirely.

inline std::string compare_matrix_with_oracle(const SuperAlgebra& A, std::size_t n,
                                              std::size_t m) {
  const std::size_t N = n + m;
  if (A.dim() != N * N) {
    return "dimension " + std::to_string(A.dim()) + " differs from the " +
           std::to_string(N * N) + " unit pairs";
  }
  auto label = [](std::size_t r, std::size_t s) {
    return "E" + std::to_string(r) + "_" + std::to_string(s);
  };
  for (std::size_t r = 1; r <= N; ++r) {
    for (std::size_t s = 1; s <= N; ++s) {
      if (!A.index_of(label(r, s)).has_value()) return "missing unit label " + label(r, s);
      const Deg d = A.deg(*A.index_of(label(r, s)));
      const int want_parity = static_cast<int>(((r > n ? 1 : 0) + (s > n ? 1 : 0)) % 2);
      if (d.n != static_cast<int>(r) - static_cast<int>(s) || d.parity != want_parity) {
        return "degree of " + label(r, s) + " disagrees with the index recipe";
      }
    }
  }
  std::vector<std::vector<int>> left(N, std::vector<int>(N, 0));
  std::vector<std::vector<int>> right(N, std::vector<int>(N, 0));
  for (std::size_t r = 1; r <= N; ++r) {
    for (std::size_t s = 1; s <= N; ++s) {
      for (std::size_t t = 1; t <= N; ++t) {
        for (std::size_t u = 1; u <= N; ++u) {
          for (auto& row : left) std::fill(row.begin(), row.end(), 0);
          for (auto& row : right) std::fill(row.begin(), row.end(), 0);
          left[r - 1][s - 1] = 1;
          right[t - 1][u - 1] = 1;
          SparseVec want(A.field());
          for (std::size_t i = 0; i < N; ++i) {
            for (std::size_t j = 0; j < N; ++j) {
              int acc = 0;
              for (std::size_t k = 0; k < N; ++k) acc += left[i][k] * right[k][j];
              if (acc != 0) {
                want.set(*A.index_of(label(i + 1, j + 1)),
                         Scalar::from_int(A.field(), acc));
              }
            }
          }
          const SparseVec got =
              A.product(*A.index_of(label(r, s)), *A.index_of(label(t, u)));
          if (got != want) {
            return "product " + label(r, s) + " * " + label(t, u) +
                   " disagrees with dense multiplication";
          }
        }
      }
    }
  }
  return "";
}

// ---- frozen expectations ----

// Expected decomposition entry of the extended zigzag: 1 on the diagonal and
// q pi one step below, verified against the counting of standard-to-simple
// multiplicities before freezing.
inline GradedDim zigzag_decomp_entry(std::size_t i, std::size_t j) {
  if (i == j) return GradedDim::one();
  if (j + 1 == i) return GradedDim::term(1, 1, 1);
  return GradedDim::zero();
}

inline bool zigzag_decomp_matches(const SuperAlgebra& A, const VerifiedHeredity& vh,
                                  std::size_t l) {
  const DecompositionMatrix dm = decomposition_matrix(A, vh);
  if (!dm.ok()) return false;
  for (std::size_t i = 0; i <= l; ++i) {
    for (std::size_t j = 0; j <= l; ++j) {
      const auto pi = vh.poset().index_of(std::to_string(i));
      const auto pj = vh.poset().index_of(std::to_string(j));
      if (!pi || !pj) return false;
      if (dm.d[*pi][*pj] != zigzag_decomp_entry(i, j)) return false;
    }
  }
  return true;
}

// ---- randomness ----

struct Rng {
  std::mt19937 gen;

  explicit Rng(std::uint32_t seed) : gen(seed) {}

  std::size_t below(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen);
  }
  bool coin() { return below(2) == 0; }

  Scalar scalar(const Field& f) {
    if (f.is_rationals()) {
      const long long num = static_cast<long long>(below(19)) - 9;
      const long long den = static_cast<long long>(below(4)) + 1;
      return Scalar::from_int(f, num) / Scalar::from_int(f, den);
    }
    return Scalar::from_int(f, static_cast<long long>(below(f.characteristic())));
  }

  Scalar nonzero_scalar(const Field& f) {
    for (;;) {
      Scalar s = scalar(f);
      if (!s.is_zero()) return s;
    }
  }

  SparseVec element(const SuperAlgebra& A) {
    SparseVec v(A.field());
    const std::size_t picks = 1 + below(3);
    for (std::size_t t = 0; t < picks; ++t) v.add(below(A.dim()), scalar(A.field()));
    return v;
  }
};

}  // namespace bqh_test
