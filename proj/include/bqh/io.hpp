#pragma once

// Canonical text descriptions of based algebras: a versioned JSON document
// holding the field, the labeled graded basis, the structure constants, and
// optional unit, heredity, anti-involution, and bigrading blocks.  Serialize
// and parse are mutually inverse on canonical documents.

#include "bqh/heredity.hpp"
#include "bqh/truncation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bqh {

struct AlgebraBundle {
  SuperAlgebra algebra;
  std::optional<HeredityData> heredity;
  std::vector<SparseVec> involution;  // basis-indexed images; empty when absent
  std::optional<std::vector<Bigrade>> bigrading;  // basis-indexed
};

// Canonical form: sorted keys, two-space indent, scalars as strings, one
// trailing newline.
std::string serialize_algebra(const AlgebraBundle& bundle);

// Throws ParseError on malformed documents, unresolved labels, or structure
// tables that do not fit the declared basis.  The algebra is not validated.
AlgebraBundle parse_algebra(const std::string& text);

}  // namespace bqh
