#pragma once

// Idempotent truncation e A e: classification of adapted idempotents, the
// truncated algebra on the surviving product basis with standard-basis,
// cellular, and heredity certificates, the surviving-simple computation, and
// the even-subalgebra conformity checks.

#include "bqh/heredity.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace bqh {

// Outcome of probing an idempotent against verified heredity data.  Being
// non-adapted is a value with witnesses, not an error; a non-idempotent or
// wrongly graded element is rejected up front.
struct AdaptedIdempotent {
  SparseVec e;
  std::vector<std::vector<bool>> x_keep;  // per cell: e x == x (else e x == 0)
  std::vector<std::vector<bool>> y_keep;  // per cell: y e == y (else y e == 0)
  std::vector<bool> ibar;                 // cells with both families inhabited
  bool adapted = false;
  bool strongly_adapted = false;          // adapted and e e_i = e_i e = e_i on ibar
  std::vector<std::string> problems;      // witnesses when not (strongly) adapted

  std::size_t ibar_count() const;
};

AdaptedIdempotent classify_idempotent(const SuperAlgebra& A, const VerifiedHeredity& vh,
                                      const SparseVec& e);

// The algebra e A e on the basis {x y : i in ibar, x kept, y kept}, with the
// certificates the truncation carries: a standard-basis check always, full
// heredity data exactly when e is strongly adapted, and a cellular check when
// an anti-involution fixing e is supplied.
struct Truncation {
  Truncation(AdaptedIdempotent c, Poset sub) : cls(std::move(c)), subposet(std::move(sub)) {}

  AdaptedIdempotent cls;
  std::optional<SuperAlgebra> algebra;      // engaged on successful construction
  std::vector<BIndex> basis_index;          // parent (cell, x, y) of each basis member
  std::vector<std::size_t> parent_b_pos;    // parent B position of each basis member
  std::vector<SparseVec> basis_in_parent;   // ambient coordinates in the parent
  Poset subposet;                           // parent poset restricted to ibar
  std::vector<std::size_t> parent_cell;     // subposet index -> parent cell
  std::vector<std::size_t> sub_cell;        // parent cell -> subposet index (npos outside)
  bool unital = false;                      // e itself becomes the unit

  bool standardly_based = false;
  std::vector<std::string> standard_basis_problems;

  std::optional<HeredityData> heredity;     // strongly adapted only
  std::optional<VerifiedHeredity> verified;
  std::vector<std::string> heredity_notes;

  std::optional<bool> cellular;             // engaged when a usable tau was supplied
  std::vector<std::string> cellular_notes;  // withhold reason or failure witness

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

Truncation truncate(const SuperAlgebra& A, const VerifiedHeredity& vh,
                    const AdaptedIdempotent& cls,
                    const std::vector<SparseVec>* tau_images = nullptr);

// Coordinates of an ambient element inside the truncated basis; throws when
// the element does not lie in e A e.
SparseVec restrict_to_truncation(const SuperAlgebra& A, const VerifiedHeredity& vh,
                                 const Truncation& t, const SparseVec& ambient);

// Ambient coordinates of a truncated element.
SparseVec embed_from_truncation(const SuperAlgebra& A, const Truncation& t,
                                const SparseVec& truncated);

// Cells whose simple module survives truncation: those i in ibar with some
// kept x, y whose product y x avoids the higher cell ideal.  Equivalently
// e L(i) != 0; the module-level statement is cross-checked in the tests.
std::vector<std::size_t> surviving_simples(const SuperAlgebra& A, const VerifiedHeredity& vh,
                                           const AdaptedIdempotent& cls);

// The even-product subalgebra: span{x y : x, y even} materialized with its
// own structure constants, carrying the induced heredity data built from the
// even parts of the families.
struct ConformityReport {
  bool closed = false;                     // span is multiplicatively closed
  std::vector<std::string> problems;
  std::vector<BIndex> basis_index;         // even-even B positions
  std::vector<std::size_t> parent_b_pos;
  std::vector<SparseVec> basis_in_parent;  // ambient coordinates in the parent
  std::optional<SuperAlgebra> algebra;     // engaged when closed
  bool unital = false;                     // a unit exists inside the subalgebra
  std::optional<HeredityData> data;
  std::optional<VerifiedHeredity> verified;

  bool ok() const { return closed && verified.has_value(); }
};

ConformityReport conformity_check(const SuperAlgebra& A, const VerifiedHeredity& vh);

// Coordinates of an ambient element inside the even subalgebra basis; throws
// when the element lies outside.
SparseVec restrict_to_subalgebra(const SuperAlgebra& A, const VerifiedHeredity& vh,
                                 const ConformityReport& cr, const SparseVec& ambient);

SparseVec embed_from_subalgebra(const SuperAlgebra& A, const ConformityReport& cr,
                                const SparseVec& element);

// A (Z/2 x Z/2)-bigrade attached to one ambient basis element.
struct Bigrade {
  int eps = 0;    // first component, 0 or 1
  int delta = 0;  // second component

  bool operator==(const Bigrade& o) const { return eps == o.eps && delta == o.delta; }
};

struct Z2Z2Report {
  bool multiplicative = false;   // products respect the componentwise sum
  bool refines_parity = false;   // parity of each basis element = eps + delta
  bool families_placed = false;  // X(i) in A_{eps,0}, Y(i) in A_{0,eps}
  std::vector<std::string> problems;
  std::vector<std::size_t> even_even;  // ambient indices with bigrade (0, 0)
  bool cross_validated = false;  // conformity subalgebra = span of even_even

  bool ok() const { return multiplicative && refines_parity && families_placed; }
};

// Checks the three bigrading conditions that force the even-even component
// to be the conforming subalgebra, then cross-validates the conclusion
// against conformity_check.
Z2Z2Report z2z2_check(const SuperAlgebra& A, const std::vector<Bigrade>& bigrading,
                      const VerifiedHeredity& vh);

}  // namespace bqh
