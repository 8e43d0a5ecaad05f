#pragma once

// Reduction to a basic algebra: Jacobson radical via the simple actions,
// refinement of the initial idempotents into primitive ones inside the even
// subalgebra, the induced heredity data with primitive initial elements, the
// truncation by their sum, and the audit comparing modules across the
// equivalence.

#include "bqh/standard_modules.hpp"
#include "bqh/truncation.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace bqh {

struct RadicalResult {
  std::vector<SparseVec> basis;  // homogeneous spanning set of the radical
  std::size_t nilpotency = 1;    // least m with J^m = 0; 1 for the zero ideal
  bool is_ideal = false;         // two-sidedness, verified
};

// Intersection of the annihilators of the simple modules, which the cell
// structure makes the whole radical; verified nilpotent and two-sided.
RadicalResult jacobson_radical(const SuperAlgebra& A, const VerifiedHeredity& vh);

struct PrimitiveRefinement {
  ConformityReport conformity;      // the even subalgebra the work happens in
  RadicalResult radical;            // radical of that subalgebra
  std::vector<SparseVec> e_prime;   // per cell, ambient coordinates
  std::vector<SparseVec> e_prime_sub;  // per cell, subalgebra coordinates
  bool orthogonal = false;          // e_i' e_j' = delta_ij e_i'
  bool primitive = false;           // each corner has one-dimensional head
  bool ok = false;
  std::vector<std::string> problems;
};

// Splits each initial idempotent into orthogonal primitive idempotents of
// the even subalgebra (semisimple-quotient splitting plus cubic lifting) and
// keeps the unique summand congruent to it above the higher cells.  Requires
// the algebra's unit to lie in the subalgebra.
PrimitiveRefinement primitive_refinement(const SuperAlgebra& A, const VerifiedHeredity& vh);

struct FunctorAuditRow {
  std::size_t cell = 0;
  GradedDim f_delta;        // graded dim of f * (standard module at cell)
  GradedDim delta_trunc;    // graded dim of the truncated algebra's standard module
  GradedDim f_simple;
  GradedDim simple_trunc;
  bool delta_ok = false;
  bool simple_ok = false;

  bool ok() const { return delta_ok && simple_ok; }
};

struct FunctorAudit {
  std::vector<FunctorAuditRow> rows;
  bool decomposition_equal = false;
  bool ok = false;
  std::vector<std::string> problems;
};

struct BasicizationResult {
  explicit BasicizationResult(Field fld) : e_sum(fld), f(fld) {}

  SparseVec e_sum;                       // sum of the original initial idempotents
  std::optional<Truncation> by_e;        // truncation by that sum
  PrimitiveRefinement refine;            // refinement inside the truncated pair
  std::vector<SparseVec> e_prime;        // primitive initial elements, ambient coords
  SparseVec f;                           // their sum
  std::optional<HeredityData> new_data;  // (I, X', Y') with primitive initials
  std::optional<VerifiedHeredity> new_vh;
  std::optional<Truncation> by_f;        // f A f with verified heredity data
  ConformityReport conf_new;             // even subalgebra of the new data
  std::optional<Truncation> suba_by_f;   // f a f
  bool same_subalgebra = false;          // new data recovers the original subalgebra
  bool f_strongly_adapted = false;
  bool suba_basic = false;               // all simples of f a f are one-dimensional
  RadicalResult radical;                 // radical of the ambient algebra
  bool odd_in_radical = false;           // odd part sits inside the radical
  std::optional<bool> truncated_basic;   // asserted only when odd_in_radical
  FunctorAudit audit;
  bool ok = false;
  std::vector<std::string> problems;
};

BasicizationResult basicize(const SuperAlgebra& A, const VerifiedHeredity& vh);

// Compares graded dimensions of f-cut standard and simple modules with the
// truncation's own, and the two decomposition matrices entry by entry.
FunctorAudit functor_audit(const SuperAlgebra& A, const VerifiedHeredity& vh,
                           const BasicizationResult& r);

}  // namespace bqh
