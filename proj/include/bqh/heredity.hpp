#pragma once

// Based quasi-hereditary structure: a poset of cells, distinguished element
// families X(i), Y(i) with initial idempotents e_i, and the axioms making the
// products {x y} a heredity basis.  Verification is exact and produces the
// change-of-basis data plus the left/right action coefficient tensors that
// the module and truncation layers reuse.

#include "bqh/algebra.hpp"
#include "bqh/poset.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace bqh {

struct HeredityCell {
  SparseVec e;
  std::vector<SparseVec> X;
  std::vector<SparseVec> Y;
  std::size_t e_in_X = 0;  // position of e within X, located at construction
  std::size_t e_in_Y = 0;
};

class HeredityData {
 public:
  // One cell per poset element, in poset index order.  X(i) and Y(i) must
  // contain e_i; empty families are rejected outright.
  HeredityData(Poset poset, std::vector<HeredityCell> cells);

  const Poset& poset() const { return poset_; }
  std::size_t cell_count() const { return cells_.size(); }
  const HeredityCell& cell(std::size_t i) const { return cells_[i]; }

 private:
  Poset poset_;
  std::vector<HeredityCell> cells_;
};

struct BIndex {
  std::size_t cell = 0;
  std::size_t x = 0;
  std::size_t y = 0;
};

// Outcome of a successful verification: the heredity basis B in a fixed
// order, conversions between ambient and B coordinates, and the coefficient
// tensors from the triangular action axiom.
class VerifiedHeredity {
 public:
  const HeredityData& data() const { return data_; }
  const Poset& poset() const { return data_.poset(); }
  std::size_t dim() const { return b_.size(); }
  std::size_t cell_count() const { return data_.cell_count(); }

  const std::vector<BIndex>& b() const { return b_; }
  std::size_t b_pos(std::size_t cell, std::size_t x, std::size_t y) const;
  std::size_t x_count(std::size_t i) const { return data_.cell(i).X.size(); }
  std::size_t y_count(std::size_t i) const { return data_.cell(i).Y.size(); }
  Deg x_deg(std::size_t i, std::size_t x) const { return x_deg_[i][x]; }
  Deg y_deg(std::size_t i, std::size_t y) const { return y_deg_[i][y]; }

  Vec to_b(const SparseVec& v) const;
  SparseVec from_b(const Vec& b_coords) const;
  SparseVec b_element(std::size_t k) const;

  // B positions lying in the given set of cells.
  std::vector<bool> z_mask(const std::vector<bool>& cell_mask) const;

  // Left tensor: column x of l_tensor(i, a) holds the coefficients of
  // a * x along X(i) modulo the higher ideal; right tensor dually on Y(i).
  const Matrix& l_tensor(std::size_t i, std::size_t a) const { return l_[i][a]; }
  const Matrix& r_tensor(std::size_t i, std::size_t a) const { return r_[i][a]; }

  const std::vector<std::size_t>& linear_extension() const { return linext_; }

 private:
  friend struct HeredityVerifier;

  explicit VerifiedHeredity(HeredityData data) : data_(std::move(data)) {}

  HeredityData data_;
  std::vector<BIndex> b_;
  std::vector<std::size_t> offset_;  // first B position of each cell
  Matrix b_cols_;   // ambient coords of B elements, one column each
  Matrix b_inv_;    // inverse: ambient coordinates -> B coordinates
  std::vector<std::vector<Matrix>> l_, r_;  // [cell][ambient basis index]
  std::vector<std::vector<Deg>> x_deg_, y_deg_;
  std::vector<std::size_t> linext_;
};

struct HeredityFailure {
  std::string check;  // "preliminary", "a", "b", "c"
  std::string detail;
};

struct HeredityReport {
  bool ok = false;
  std::vector<HeredityFailure> failures;
  std::optional<VerifiedHeredity> verified;
};

HeredityReport verify_heredity(const SuperAlgebra& A, const HeredityData& data);

// ---- cell ideals ----

struct CellIdealResult {
  std::vector<bool> omega;   // upward-closed cell mask
  bool closure_changed = false;
  std::vector<std::size_t> b_members;  // B positions spanning the ideal
  bool span_is_ideal = false;
  bool matches_generated_ideal = false;  // equals the ideal generated by {e_i : i in omega}
  std::string witness;

  bool ok() const { return span_is_ideal && matches_generated_ideal; }
};

CellIdealResult cell_ideal(const SuperAlgebra& A, const VerifiedHeredity& vh,
                           const std::vector<std::size_t>& generators);

// Residue of v modulo the cell ideal of the (upward-closed) mask: full
// B-coordinate vector with the ideal's positions zeroed.
Vec reduce_mod_ideal(const SuperAlgebra& A, const VerifiedHeredity& vh, const SparseVec& v,
                     const std::vector<bool>& omega);

// ---- Gram forms ----

struct GramForm {
  std::size_t cell = 0;
  Matrix m;  // rows indexed by Y(i), columns by X(i)
};

GramForm gram_form(const SuperAlgebra& A, const VerifiedHeredity& vh, std::size_t i);

// ---- anti-involutions ----

struct InvolutionReport {
  bool anti_multiplicative = false;
  bool involutive = false;
  bool degree_preserving = false;
  bool standard = false;  // fixes every e_i and maps X(i) onto Y(i)
  std::vector<std::vector<std::size_t>> x_to_y;  // per cell, when standard
  std::string witness;

  bool ok() const {
    return anti_multiplicative && involutive && degree_preserving && standard;
  }
};

InvolutionReport verify_anti_involution(const SuperAlgebra& A, const VerifiedHeredity& vh,
                                        const std::vector<SparseVec>& images);

// ---- standard bases without initial idempotents ----

struct StandardBasisCandidate {
  Poset poset;
  // b[i][x][y]; the x-family and y-family sizes may differ per cell.
  std::vector<std::vector<std::vector<SparseVec>>> b;
};

struct StandardlyBasedReport {
  bool ok = false;
  std::vector<std::string> problems;
};

StandardlyBasedReport check_standardly_based(const SuperAlgebra& A,
                                             const StandardBasisCandidate& cand);

struct CellularReport {
  bool ok = false;
  bool standardly_based = false;
  bool square_cells = false;
  bool involution_compatible = false;
  std::string witness;
};

// Cellular = standardly based with square cells and tau(b[i][s][t]) = b[i][t][s]
// for an anti-automorphism tau given by ambient basis images.
CellularReport check_cellular(const SuperAlgebra& A, const StandardBasisCandidate& cand,
                              const std::vector<SparseVec>& tau_images);

// ---- split heredity chains ----

struct SplitChainStep {
  std::size_t cell = 0;
  bool ideal_idempotent = false;       // J^2 = J in the quotient
  bool dim_ok = false;                 // dim J = |X(i)| * |Y(i)|
  std::size_t end_left_dim = 0;        // endomorphisms of J as a left module
  std::size_t end_right_dim = 0;       // ... as a right module
  bool end_left_ok = false;            // == |Y(i)|^2
  bool end_right_ok = false;           // == |X(i)|^2

  bool ok() const { return ideal_idempotent && dim_ok && end_left_ok && end_right_ok; }
};

struct SplitChainReport {
  bool ok = false;
  std::vector<std::size_t> chain;  // linear extension, bottom cell first
  std::vector<SplitChainStep> steps;
  std::string witness;
};

// Walks the total refinement of upper sets induced by the linear extension
// and certifies each subquotient layer as a split heredity ideal.
SplitChainReport check_split_heredity_chain(const SuperAlgebra& A, const VerifiedHeredity& vh);

// Standalone certificate that a span is a two-sided ideal with J^2 = J;
// exposed so defective inputs can be probed directly.
struct IdealIdempotenceReport {
  bool is_ideal = false;
  bool idempotent = false;
  std::string witness;
};

IdealIdempotenceReport check_ideal_idempotent(const SuperAlgebra& A,
                                              const std::vector<SparseVec>& span);

}  // namespace bqh
