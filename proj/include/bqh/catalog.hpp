#pragma once

// Built-in families of based algebras: extended zigzag algebras, matrix
// superalgebras, quotients of quiver path algebras, and direct sums.  Every
// constructor validates its output and verifies the attached heredity data
// before returning.

#include "bqh/heredity.hpp"
#include "bqh/truncation.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace bqh {

struct CatalogAlgebra {
  SuperAlgebra algebra;
  HeredityData data;
  // Basis-indexed anti-involution images; empty when the family carries none.
  std::vector<SparseVec> involution;
};

// Extended zigzag algebra on the chain 0 < 1 < ... < l (l >= 1): vertices
// e0..e<l>, arrows a<i>_<j> between neighbours (a path from j to i; products
// compose right to left), loops c0..c<l-1>.  Arrows have degree (1, odd),
// loops (2, even), and the cycle at the top vertex vanishes.  Dimension 4l+1.
CatalogAlgebra extended_zigzag(std::size_t l, const Field& field);

// Matrix superalgebra M_{n|m} on a single cell: matrix units E<r>_<s> with
// degree (r - s, par(r) + par(s)), the first n row indices even.  Carries no
// anti-involution: transposition negates the q-degree.  Requires n >= 1.
CatalogAlgebra matrix_superalgebra(std::size_t n, std::size_t m, const Field& field);

// Truncation of the extended zigzag by e0 + ... + e<l-1>: the classical
// zigzag algebra, standardly based on the surviving products and cellular
// for the restricted involution.
struct TruncatedZigzag {
  CatalogAlgebra parent;
  Truncation truncation;
};
TruncatedZigzag truncated_zigzag(std::size_t l, const Field& field);

// ---- quiver presentations ----

struct QuiverArrow {
  std::string label;
  std::string source;
  std::string target;
  Deg deg;
};

// A linear combination of parallel paths.  Paths are arrow label sequences in
// product order (the rightmost label is the first arrow walked); the terms of
// one relation must share source, target, length, and degree.
struct QuiverRelation {
  std::vector<std::pair<Scalar, std::vector<std::string>>> terms;
};

struct QuiverPresentation {
  std::vector<std::string> vertices;
  std::vector<QuiverArrow> arrows;
  std::vector<QuiverRelation> relations;
  // Paths longer than this must die in the quotient; checked, never assumed.
  std::size_t path_length_cap = 8;
};

// A basis monomial of the quotient: arrow labels in product order, with the
// source vertex; a lazy path has no arrows and sits at its vertex.
struct PathWord {
  std::string source;
  std::vector<std::string> arrows;

  std::string str() const;  // vertex label, or arrow labels joined by '*'
};

struct PathAlgebraResult {
  SuperAlgebra algebra;
  std::vector<PathWord> monomials;  // one per basis index
};

// Quotient of the path algebra by the two-sided ideal the relations generate,
// on the basis of monomial representatives.  Throws when the quotient fails
// to be finite-dimensional within the length cap.
PathAlgebraResult path_algebra_quotient(const QuiverPresentation& q, const Field& field);

// The extended zigzag algebra as a quiver presentation; its quotient agrees
// with extended_zigzag(l) under the path-to-product bijection.
QuiverPresentation zigzag_presentation(std::size_t l, const Field& field);

// Block product with disjoint poset union.  Labels get "L:" / "R:" prefixes
// only when the summands collide; the involution survives only when both
// summands carry one.
CatalogAlgebra direct_sum(const CatalogAlgebra& a, const CatalogAlgebra& b);

}  // namespace bqh
