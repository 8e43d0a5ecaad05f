#pragma once

// Standard modules carried by the cells of verified heredity data, their
// contravariant pairing, radicals, simple heads, e-weight graded dimensions,
// and the bigraded decomposition matrix obtained by a triangular solve.

#include "bqh/heredity.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace bqh {

enum class Side { left, right };

// A finite graded module presented by one action matrix per ambient basis
// element (column-vector convention; right modules compose in reverse).
struct ModuleRep {
  Side side = Side::left;
  std::vector<Deg> degrees;
  std::vector<Matrix> action;

  std::size_t dim() const { return degrees.size(); }
  GradedDim graded_dimension() const;
  Matrix act(const SuperAlgebra& A, const SparseVec& v) const;  // matrix of v
};

struct StandardModule {
  std::size_t cell = 0;
  ModuleRep rep;  // basis indexed by X(i) on the left, Y(i) on the right
};

// Builds the standard module from the verification tensors.  When an
// explicit pair of upper sets (omega_prime, omega) with difference {i} is
// given, the action coefficients are recomputed modulo those ideals and
// checked against the tensors, so the module is independent of the choice.
StandardModule build_standard_module(
    const SuperAlgebra& A, const VerifiedHeredity& vh, std::size_t i, Side side,
    const std::optional<std::pair<std::vector<bool>, std::vector<bool>>>& upper_pair =
        std::nullopt);

struct PairingReport {
  std::size_t cell = 0;
  GramForm gram;
  bool normalized = false;        // f(e_i, e_i) = 1
  bool degree_vanishing = false;  // f(y, x) = 0 unless deg(x) deg(y) = 1
  bool adjoint = false;           // (a v, w) = (v, w a) on all basis triples
  std::string witness;

  bool ok() const { return normalized && degree_vanishing && adjoint; }
};

PairingReport pairing_check(const SuperAlgebra& A, const VerifiedHeredity& vh, std::size_t i);

struct SimpleModule {
  std::size_t cell = 0;
  std::vector<std::size_t> pivot_x;  // X-indices representing the head's basis
  ModuleRep rep;
};

struct RadicalSimpleResult {
  std::size_t cell = 0;
  std::vector<Vec> radical;  // homogeneous kernel vectors in X-coordinates
  GradedDim radical_gdim;
  SimpleModule simple;
};

RadicalSimpleResult radical_and_simple(const SuperAlgebra& A, const VerifiedHeredity& vh,
                                       std::size_t i);

// Graded dimension of f M for a degree-(0, even) idempotent f, computed as
// the rank of its action per degree block.
GradedDim idempotent_weight_gdim(const SuperAlgebra& A, const ModuleRep& rep,
                                 const SparseVec& f);

// Graded dimension of e_j M, the image of the idempotent's action.
GradedDim e_weight_graded_dim(const SuperAlgebra& A, const VerifiedHeredity& vh, std::size_t j,
                              const ModuleRep& rep);

struct DecompositionMatrix {
  std::vector<std::size_t> order;  // linear extension; printing order for rows/cols
  std::vector<std::vector<GradedDim>> d;  // indexed by poset indices
  bool diagonal_one = false;
  bool triangular = false;     // d[i][j] = 0 unless j <= i
  bool entries_nonneg = false;

  bool ok() const { return diagonal_one && triangular && entries_nonneg; }
};

DecompositionMatrix decomposition_matrix(const SuperAlgebra& A, const VerifiedHeredity& vh);

struct StructuralCellReport {
  std::size_t cell = 0;
  bool end_dim_one = false;        // End of the standard module is scalars
  bool layer_tensor_match = false; // layer acts as Delta tensor Delta-op
  bool layer_gdim_ok = false;      // layer graded dim = product of the factors
};

struct StructuralReport {
  bool ok = false;
  std::vector<StructuralCellReport> cells;
  bool total_gdim_ok = false;  // sum of layer products = graded dim of A
  std::string witness;
};

StructuralReport structural_checks(const SuperAlgebra& A, const VerifiedHeredity& vh);

}  // namespace bqh
