#pragma once

// Randomized property runners shared by the unit suite and the acceptance
// binary.  Each runner draws at least two hundred cases across the algebra
// pool and returns a tally; a failure entry is a human-readable witness.
// The mutation runner builds deliberately corrupted algebras and documents,
// every one of which must be rejected; an accepted mutant is a failure.

#include "bqh/basicize.hpp"
#include "bqh/catalog.hpp"
#include "bqh/io.hpp"
#include "bqh/standard_modules.hpp"
#include "helpers.hpp"
#include "json.hpp"

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace bqh_test {

struct PropertyResult {
  std::string name;
  std::size_t cases = 0;
  std::vector<std::string> failures;

  bool ok() const { return cases >= 200 && failures.empty(); }
};

namespace detail {

inline const PoolEntry& draw_entry(Rng& rng) {
  const auto& p = pool();
  return p[rng.below(p.size())];
}

inline void note(PropertyResult& r, const PoolEntry& entry, const std::string& what) {
  if (r.failures.size() < 8) r.failures.push_back(entry.name + ": " + what);
}

// Action tensor of an arbitrary element on the X- or Y-family of a cell.
inline Matrix combine_tensor(const PoolEntry& entry, std::size_t i, const SparseVec& a,
                             bool left) {
  const VerifiedHeredity& vh = entry.vh;
  const std::size_t n = left ? vh.x_count(i) : vh.y_count(i);
  Matrix out(entry.cat.algebra.field(), n, n);
  for (const auto& [k, coeff] : a.entries()) {
    const Matrix& t = left ? vh.l_tensor(i, k) : vh.r_tensor(i, k);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        out.at(r, c) += coeff * t.at(r, c);
      }
    }
  }
  return out;
}

}  // namespace detail

// The pairing of the initial elements of every cell is normalized to one.
inline PropertyResult property_initial_pairing() {
  PropertyResult r{"initial_pairing", 0, {}};
  Rng rng(1001u);
  for (int round = 0; round < 240; ++round) {
    const PoolEntry& entry = detail::draw_entry(rng);
    const std::size_t i = rng.below(entry.vh.cell_count());
    const GramForm g = gram_form(entry.cat.algebra, entry.vh, i);
    const HeredityCell& cell = entry.vh.data().cell(i);
    const Scalar v = g.m.at(cell.e_in_Y, cell.e_in_X);
    ++r.cases;
    if (!(v == Scalar::one(entry.cat.algebra.field()))) {
      detail::note(r, entry, "pairing of the initial element with itself is " + v.str() +
                                 " at cell " + entry.vh.poset().label(i));
    }
  }
  return r;
}

// Entries of the Gram form vanish unless the paired degrees cancel.
inline PropertyResult property_gram_degree_vanishing() {
  PropertyResult r{"gram_degree_vanishing", 0, {}};
  Rng rng(1002u);
  for (int round = 0; round < 240; ++round) {
    const PoolEntry& entry = detail::draw_entry(rng);
    const std::size_t i = rng.below(entry.vh.cell_count());
    const std::size_t x = rng.below(entry.vh.x_count(i));
    const std::size_t y = rng.below(entry.vh.y_count(i));
    const GramForm g = gram_form(entry.cat.algebra, entry.vh, i);
    ++r.cases;
    if (g.m.at(y, x).is_zero()) continue;
    const Deg sum = entry.vh.x_deg(i, x) + entry.vh.y_deg(i, y);
    if (!(sum == Deg{0, 0})) {
      detail::note(r, entry, "nonzero pairing in degree " + sum.str() + " at cell " +
                                 entry.vh.poset().label(i));
    }
  }
  return r;
}

// Initial elements of distinct cells multiply to zero, and each squares to
// itself.
inline PropertyResult property_initial_orthogonality() {
  PropertyResult r{"initial_orthogonality", 0, {}};
  Rng rng(1003u);
  for (int round = 0; round < 240; ++round) {
    const PoolEntry& entry = detail::draw_entry(rng);
    const SuperAlgebra& A = entry.cat.algebra;
    const std::size_t i = rng.below(entry.vh.cell_count());
    const std::size_t j = rng.below(entry.vh.cell_count());
    const SparseVec& ei = entry.vh.data().cell(i).e;
    const SparseVec& ej = entry.vh.data().cell(j).e;
    const SparseVec prod = A.multiply(ei, ej);
    const SparseVec expect = (i == j) ? ei : A.zero_element();
    ++r.cases;
    if (!(prod == expect)) {
      detail::note(r, entry, "initial elements of cells " + entry.vh.poset().label(i) +
                                 " and " + entry.vh.poset().label(j) +
                                 " violate orthogonality");
    }
  }
  return r;
}

// An initial element of a cell not below i annihilates X(i) on the left and
// Y(i) on the right.
inline PropertyResult property_foreign_initial_action() {
  PropertyResult r{"foreign_initial_action", 0, {}};
  Rng rng(1004u);
  int rounds = 0;
  while (r.cases < 220 && rounds < 4000) {
    ++rounds;
    const PoolEntry& entry = detail::draw_entry(rng);
    const SuperAlgebra& A = entry.cat.algebra;
    const Poset& P = entry.vh.poset();
    const std::size_t i = rng.below(entry.vh.cell_count());
    const std::size_t j = rng.below(entry.vh.cell_count());
    if (P.leq(j, i)) continue;
    const HeredityCell& ci = entry.vh.data().cell(i);
    const SparseVec& ej = entry.vh.data().cell(j).e;
    const SparseVec& x = ci.X[rng.below(ci.X.size())];
    const SparseVec& y = ci.Y[rng.below(ci.Y.size())];
    ++r.cases;
    if (!A.multiply(ej, x).is_zero() || !A.multiply(y, ej).is_zero()) {
      detail::note(r, entry, "initial element of cell " + P.label(j) +
                                 " fails to annihilate the families of cell " + P.label(i));
    }
  }
  return r;
}

// Each family member is itself a heredity basis element: pairing it with the
// initial element of the opposite family reproduces it on the nose.
inline PropertyResult property_family_members_in_basis() {
  PropertyResult r{"family_members_in_basis", 0, {}};
  Rng rng(1005u);
  for (int round = 0; round < 240; ++round) {
    const PoolEntry& entry = detail::draw_entry(rng);
    const VerifiedHeredity& vh = entry.vh;
    const std::size_t i = rng.below(vh.cell_count());
    const HeredityCell& cell = vh.data().cell(i);
    const bool x_side = rng.coin();
    const std::size_t member =
        x_side ? rng.below(cell.X.size()) : rng.below(cell.Y.size());
    const SparseVec& v = x_side ? cell.X[member] : cell.Y[member];
    const std::size_t pos = x_side ? vh.b_pos(i, member, cell.e_in_Y)
                                   : vh.b_pos(i, cell.e_in_X, member);
    const Vec coords = vh.to_b(v);
    bool unit_vector = true;
    for (std::size_t k = 0; k < coords.size(); ++k) {
      const bool want_one = (k == pos);
      if (want_one != !coords[k].is_zero()) unit_vector = false;
      if (want_one && !(coords[k] == Scalar::one(entry.cat.algebra.field())))
        unit_vector = false;
    }
    ++r.cases;
    if (!unit_vector) {
      detail::note(r, entry, "family member is not the expected heredity basis element at cell " +
                                 vh.poset().label(i));
    }
  }
  return r;
}

// Cell ideals are ordered by inclusion exactly as their upper sets, and the
// product of two of them lands in the ideal of the intersection.
inline PropertyResult property_ideal_containments() {
  PropertyResult r{"ideal_containments", 0, {}};
  Rng rng(1006u);
  for (int round = 0; round < 210; ++round) {
    const PoolEntry& entry = detail::draw_entry(rng);
    const SuperAlgebra& A = entry.cat.algebra;
    const VerifiedHeredity& vh = entry.vh;
    const std::size_t n = vh.cell_count();
    auto random_generators = [&]() {
      std::vector<std::size_t> gens;
      for (std::size_t i = 0; i < n; ++i) {
        if (rng.coin()) gens.push_back(i);
      }
      return gens;
    };
    const CellIdealResult one = cell_ideal(A, vh, random_generators());
    const CellIdealResult two = cell_ideal(A, vh, random_generators());
    ++r.cases;
    if (!one.ok() || !two.ok()) {
      detail::note(r, entry, "cell ideal certificate failed: " +
                                 (one.ok() ? two.witness : one.witness));
      continue;
    }

    bool masks_nested = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (one.omega[i] && !two.omega[i]) masks_nested = false;
    }
    RowSpace span_two(A.field(), A.dim());
    for (std::size_t kpos : two.b_members) {
      span_two.add(vh.b_element(kpos).dense(A.dim()));
    }
    bool spans_nested = true;
    for (std::size_t kpos : one.b_members) {
      if (!span_two.contains(vh.b_element(kpos).dense(A.dim()))) spans_nested = false;
    }
    if (masks_nested != spans_nested) {
      detail::note(r, entry, "ideal inclusion disagrees with upper-set inclusion");
      continue;
    }

    std::vector<std::size_t> meet;
    for (std::size_t i = 0; i < n; ++i) {
      if (one.omega[i] && two.omega[i]) meet.push_back(i);
    }
    const CellIdealResult both = cell_ideal(A, vh, meet);
    RowSpace span_meet(A.field(), A.dim());
    for (std::size_t kpos : both.b_members) {
      span_meet.add(vh.b_element(kpos).dense(A.dim()));
    }
    bool products_inside = true;
    for (int probe = 0; probe < 3; ++probe) {
      if (one.b_members.empty() || two.b_members.empty()) break;
      SparseVec u(A.field()), v(A.field());
      for (std::size_t kpos : one.b_members) {
        if (rng.coin()) u.add_scaled(vh.b_element(kpos), rng.scalar(A.field()));
      }
      for (std::size_t kpos : two.b_members) {
        if (rng.coin()) v.add_scaled(vh.b_element(kpos), rng.scalar(A.field()));
      }
      if (!span_meet.contains(A.multiply(u, v).dense(A.dim()))) products_inside = false;
    }
    if (!products_inside) {
      detail::note(r, entry, "a product of two cell ideals escapes their intersection");
    }
  }
  return r;
}

// The Gram form intertwines the right action on Y with the left action on X.
inline PropertyResult property_pairing_adjointness() {
  PropertyResult r{"pairing_adjointness", 0, {}};
  Rng rng(1007u);
  for (int round = 0; round < 220; ++round) {
    const PoolEntry& entry = detail::draw_entry(rng);
    const SuperAlgebra& A = entry.cat.algebra;
    const std::size_t i = rng.below(entry.vh.cell_count());
    const SparseVec a = rng.element(A);
    const GramForm g = gram_form(A, entry.vh, i);
    const Matrix left = detail::combine_tensor(entry, i, a, true);
    const Matrix right = detail::combine_tensor(entry, i, a, false);
    ++r.cases;
    if (!(right.transpose() * g.m == g.m * left)) {
      detail::note(r, entry, "pairing is not adjoint for a random element at cell " +
                                 entry.vh.poset().label(i));
    }
  }
  return r;
}

// Endomorphisms of a standard module commuting with the whole action are
// exactly the scalars, computed here as the kernel of the commutant system.
inline PropertyResult property_standard_end_dimension() {
  PropertyResult r{"standard_end_dimension", 0, {}};
  Rng rng(1008u);
  std::map<std::pair<std::string, std::size_t>, std::size_t> cache;
  for (int round = 0; round < 210; ++round) {
    const PoolEntry& entry = detail::draw_entry(rng);
    const SuperAlgebra& A = entry.cat.algebra;
    const std::size_t i = rng.below(entry.vh.cell_count());
    const auto key = std::make_pair(entry.name, i);
    auto it = cache.find(key);
    if (it == cache.end()) {
      const StandardModule sm = build_standard_module(A, entry.vh, i, Side::left);
      const std::size_t d = sm.rep.dim();
      // Unknown matrix T flattened row-major; constraint T M_k - M_k T = 0.
      Matrix sys(A.field(), A.dim() * d * d, d * d);
      std::size_t row = 0;
      for (std::size_t k = 0; k < A.dim(); ++k) {
        const Matrix& m = sm.rep.action[k];
        for (std::size_t p = 0; p < d; ++p) {
          for (std::size_t q = 0; q < d; ++q) {
            for (std::size_t t = 0; t < d; ++t) {
              sys.at(row, p * d + t) += m.at(t, q);
              sys.at(row, t * d + q) -= m.at(p, t);
            }
            ++row;
          }
        }
      }
      it = cache.emplace(key, kernel_basis(sys).size()).first;
    }
    ++r.cases;
    if (it->second != 1) {
      std::ostringstream os;
      os << "commutant of the standard module at cell " << entry.vh.poset().label(i)
         << " has dimension " << it->second;
      detail::note(r, entry, os.str());
    }
  }
  return r;
}

// Family sizes tile the algebra: ungraded counts match the dimension, and
// the bigraded refinement of any upper set matches the degrees of the basis
// elements it actually contains.
inline PropertyResult property_dimension_tiling() {
  PropertyResult r{"dimension_tiling", 0, {}};
  Rng rng(1009u);
  for (int round = 0; round < 210; ++round) {
    const PoolEntry& entry = detail::draw_entry(rng);
    const SuperAlgebra& A = entry.cat.algebra;
    const VerifiedHeredity& vh = entry.vh;
    std::size_t total = 0;
    for (std::size_t i = 0; i < vh.cell_count(); ++i) {
      total += vh.x_count(i) * vh.y_count(i);
    }
    ++r.cases;
    if (total != A.dim()) {
      detail::note(r, entry, "family sizes do not tile the dimension");
      continue;
    }

    std::vector<std::size_t> gens;
    for (std::size_t i = 0; i < vh.cell_count(); ++i) {
      if (rng.coin()) gens.push_back(i);
    }
    const UpperSet up = vh.poset().upper_closure(gens);
    GradedDim from_families = GradedDim::zero();
    for (std::size_t i = 0; i < vh.cell_count(); ++i) {
      if (!up.mask[i]) continue;
      for (std::size_t x = 0; x < vh.x_count(i); ++x) {
        for (std::size_t y = 0; y < vh.y_count(i); ++y) {
          const Deg d = vh.x_deg(i, x) + vh.y_deg(i, y);
          from_families += GradedDim::term(d.n, d.parity, 1);
        }
      }
    }
    GradedDim from_basis = GradedDim::zero();
    const std::vector<bool> zmask = vh.z_mask(up.mask);
    for (std::size_t k = 0; k < vh.dim(); ++k) {
      if (!zmask[k]) continue;
      const auto d = A.homogeneous_degree(vh.b_element(k));
      if (!d) {
        detail::note(r, entry, "a heredity basis element is not homogeneous");
        from_basis = GradedDim::term(0, 0, -1);
        break;
      }
      from_basis += GradedDim::term(d->n, d->parity, 1);
    }
    if (!(from_families == from_basis)) {
      detail::note(r, entry, "bigraded layer of an upper set disagrees with its basis degrees");
    }
  }
  return r;
}

// Decomposition matrices are unitriangular with nonnegative integer entries.
inline PropertyResult property_decomposition_shape() {
  PropertyResult r{"decomposition_shape", 0, {}};
  Rng rng(1010u);
  std::map<std::string, DecompositionMatrix> cache;
  for (int round = 0; round < 210; ++round) {
    const PoolEntry& entry = detail::draw_entry(rng);
    auto it = cache.find(entry.name);
    if (it == cache.end()) {
      it = cache.emplace(entry.name,
                         decomposition_matrix(entry.cat.algebra, entry.vh)).first;
    }
    const DecompositionMatrix& dm = it->second;
    const Poset& P = entry.vh.poset();
    const std::size_t i = rng.below(P.size());
    const std::size_t j = rng.below(P.size());
    ++r.cases;
    if (!dm.ok()) {
      detail::note(r, entry, "decomposition matrix certificate failed");
      continue;
    }
    const GradedDim& d = dm.d[i][j];
    if (i == j && !(d == GradedDim::one())) {
      detail::note(r, entry, "diagonal decomposition entry is not one");
    } else if (!P.leq(j, i) && i != j && !d.is_zero()) {
      detail::note(r, entry, "decomposition entry outside the order is nonzero");
    } else if (!d.all_coeffs_nonnegative()) {
      detail::note(r, entry, "decomposition entry has a negative coefficient");
    }
  }
  return r;
}

// ---- mutation corpus ----

namespace detail {

// Rebuild an algebra from its table, with hooks to corrupt the basis list
// and the products before validation.
struct AlgebraRebuild {
  std::vector<BasisInfo> infos;
  std::vector<std::vector<SparseVec>> table;
  SparseVec unit;

  explicit AlgebraRebuild(const SuperAlgebra& A)
      : table(A.dim(), std::vector<SparseVec>(A.dim(), SparseVec(A.field()))),
        unit(*A.unit()) {
    infos = A.basis();
    for (std::size_t i = 0; i < A.dim(); ++i) {
      for (std::size_t j = 0; j < A.dim(); ++j) {
        table[i][j] = A.product(i, j);
      }
    }
  }

  SuperAlgebra build() const {
    SuperAlgebra B(unit.field(), infos);
    for (std::size_t i = 0; i < infos.size(); ++i) {
      for (std::size_t j = 0; j < infos.size(); ++j) {
        if (!table[i][j].is_zero()) B.set_product(i, j, table[i][j]);
      }
    }
    B.set_unit(unit);
    return B;
  }
};

inline HeredityData copy_data(const HeredityData& src) {
  std::vector<HeredityCell> cells;
  for (std::size_t i = 0; i < src.cell_count(); ++i) cells.push_back(src.cell(i));
  return HeredityData(src.poset(), std::move(cells));
}

// A mutant is rejected when validation or verification refuses it with a
// recorded reason; a mutant that sails through is a false accept.
inline bool rejected(const SuperAlgebra& B, const HeredityData& data) {
  const ValidationReport vr = B.validate();
  if (!vr.ok) return !vr.problems.empty();
  const HeredityReport hr = verify_heredity(B, data);
  if (!hr.ok) return !hr.failures.empty();
  return false;
}

}  // namespace detail

// Seven families of corruptions, each provably fatal: unit rows losing a
// product, a single basis degree drifting, a heredity basis product zeroed,
// a duplicated family member, a flattened poset, a rescaled initial element,
// and structural damage to serialized documents.
inline PropertyResult property_mutation_corpus() {
  PropertyResult r{"mutation_corpus", 0, {}};
  Rng rng(1011u);
  const int per_class = 40;

  // Unit row: drop the product that lets the unit reproduce a basis element.
  for (int round = 0; round < per_class; ++round) {
    const PoolEntry& entry = detail::draw_entry(rng);
    const SuperAlgebra& A = entry.cat.algebra;
    detail::AlgebraRebuild rb(A);
    const std::size_t k = rng.below(A.dim());
    std::size_t chosen = A.dim();
    for (const auto& [s, coeff] : rb.unit.entries()) {
      if (!rb.table[s][k].is_zero()) chosen = s;
    }
    if (chosen == A.dim()) continue;
    rb.table[chosen][k] = SparseVec(A.field());
    ++r.cases;
    if (!detail::rejected(rb.build(), entry.cat.data)) {
      detail::note(r, entry, "accepted a corrupted unit row at " + A.label(k));
    }
  }

  // Degree drift: every basis element is pinned by some product, so moving
  // one degree must surface as an inhomogeneous table.
  for (int round = 0; round < per_class; ++round) {
    const PoolEntry& entry = detail::draw_entry(rng);
    const SuperAlgebra& A = entry.cat.algebra;
    detail::AlgebraRebuild rb(A);
    const std::size_t k = rng.below(A.dim());
    if (rng.coin()) {
      rb.infos[k].deg.n += 1;
    } else {
      rb.infos[k].deg.parity ^= 1;
    }
    ++r.cases;
    if (!detail::rejected(rb.build(), entry.cat.data)) {
      detail::note(r, entry, "accepted a drifted degree at " + A.label(k));
    }
  }

  // Zeroed heredity product: the basis B then contains the zero vector.
  for (int round = 0; round < per_class; ++round) {
    const PoolEntry& entry = detail::draw_entry(rng);
    const SuperAlgebra& A = entry.cat.algebra;
    const VerifiedHeredity& vh = entry.vh;
    const std::size_t i = rng.below(vh.cell_count());
    const HeredityCell& cell = vh.data().cell(i);
    const SparseVec& x = cell.X[rng.below(cell.X.size())];
    const SparseVec& y = cell.Y[rng.below(cell.Y.size())];
    if (x.entries().size() != 1 || y.entries().size() != 1) continue;
    detail::AlgebraRebuild rb(A);
    rb.table[x.entries().begin()->first][y.entries().begin()->first] = SparseVec(A.field());
    ++r.cases;
    if (!detail::rejected(rb.build(), entry.cat.data)) {
      detail::note(r, entry, "accepted a zeroed heredity product at cell " +
                                 vh.poset().label(i));
    }
  }

  // Duplicated family member: the would-be basis grows past the dimension.
  for (int round = 0; round < per_class; ++round) {
    const PoolEntry& entry = detail::draw_entry(rng);
    const VerifiedHeredity& vh = entry.vh;
    const std::size_t i = rng.below(vh.cell_count());
    std::vector<HeredityCell> cells;
    for (std::size_t c = 0; c < vh.cell_count(); ++c) cells.push_back(vh.data().cell(c));
    if (rng.coin()) {
      cells[i].X.push_back(cells[i].X[rng.below(cells[i].X.size())]);
    } else {
      cells[i].Y.push_back(cells[i].Y[rng.below(cells[i].Y.size())]);
    }
    const HeredityData data(vh.poset(), std::move(cells));
    ++r.cases;
    const HeredityReport hr = verify_heredity(entry.cat.algebra, data);
    if (hr.ok) {
      detail::note(r, entry, "accepted a duplicated family member at cell " +
                                 vh.poset().label(i));
    }
  }

  // Flattened poset: discarding a genuine order relation breaks the
  // triangular action axiom somewhere.
  for (int round = 0; round < per_class; ++round) {
    const PoolEntry& entry = detail::draw_entry(rng);
    const Poset& P = entry.vh.poset();
    bool has_relation = false;
    for (std::size_t a = 0; a < P.size() && !has_relation; ++a) {
      for (std::size_t b = 0; b < P.size(); ++b) {
        if (P.less(a, b)) {
          has_relation = true;
          break;
        }
      }
    }
    if (!has_relation) continue;
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < P.size(); ++a) labels.push_back(P.label(a));
    std::vector<HeredityCell> cells;
    for (std::size_t c = 0; c < entry.vh.cell_count(); ++c) {
      cells.push_back(entry.vh.data().cell(c));
    }
    const HeredityData data(Poset(labels, {}), std::move(cells));
    ++r.cases;
    const HeredityReport hr = verify_heredity(entry.cat.algebra, data);
    if (hr.ok) detail::note(r, entry, "accepted a flattened poset");
  }

  // Rescaled initial element: the normalization in the family axioms fails
  // for any scale other than one (skipped where two is not invertible).
  for (int round = 0; round < per_class; ++round) {
    const PoolEntry& entry = detail::draw_entry(rng);
    const Field f = entry.cat.algebra.field();
    if (f.characteristic() == 2) continue;
    const VerifiedHeredity& vh = entry.vh;
    const std::size_t i = rng.below(vh.cell_count());
    std::vector<HeredityCell> cells;
    for (std::size_t c = 0; c < vh.cell_count(); ++c) cells.push_back(vh.data().cell(c));
    const Scalar two = Scalar::one(f) + Scalar::one(f);
    SparseVec doubled(f);
    doubled.add_scaled(cells[i].e, two);
    cells[i].e = doubled;
    cells[i].X[cells[i].e_in_X] = doubled;
    cells[i].Y[cells[i].e_in_Y] = doubled;
    const HeredityData data(vh.poset(), std::move(cells));
    ++r.cases;
    const HeredityReport hr = verify_heredity(entry.cat.algebra, data);
    if (hr.ok) {
      detail::note(r, entry, "accepted a rescaled initial element at cell " +
                                 vh.poset().label(i));
    }
  }

  // Serialized-document damage: every structural edit must raise a parse
  // error, applied to the zigzag bundles where all blocks are present.
  for (int round = 0; round < per_class; ++round) {
    const auto& entries = pool();
    std::vector<const PoolEntry*> hosts;
    for (const PoolEntry& entry : entries) {
      if (entry.is_zigzag) hosts.push_back(&entry);
    }
    const PoolEntry& entry = *hosts[rng.below(hosts.size())];
    AlgebraBundle bundle{entry.cat.algebra, detail::copy_data(entry.cat.data),
                         entry.cat.involution, std::nullopt};
    const std::string text = serialize_algebra(bundle);
    nlohmann::json doc = nlohmann::json::parse(text);
    std::string damaged;
    switch (rng.below(6)) {
      case 0:
        damaged = text.substr(0, 2 + rng.below(text.size() - 4));
        break;
      case 1:
        doc["format"] = "mystery-format-" + std::to_string(rng.below(100));
        damaged = doc.dump(2) + "\n";
        break;
      case 2:
        doc["basis"][rng.below(doc["basis"].size())]["degree"][1] = 2 + int(rng.below(7));
        damaged = doc.dump(2) + "\n";
        break;
      case 3:
        doc["products"]["ghost_" + std::to_string(rng.below(100))] =
            nlohmann::json::object();
        damaged = doc.dump(2) + "\n";
        break;
      case 4:
        doc["heredity"]["cells"][1]["cell"] = doc["heredity"]["cells"][0]["cell"];
        damaged = doc.dump(2) + "\n";
        break;
      default: {
        auto it = doc["involution"].begin();
        doc["involution"].erase(it.key());
        damaged = doc.dump(2) + "\n";
        break;
      }
    }
    ++r.cases;
    bool refused = false;
    try {
      parse_algebra(damaged);
    } catch (const ParseError&) {
      refused = true;
    }
    if (!refused) detail::note(r, entry, "accepted a damaged document");
  }

  return r;
}

inline std::vector<PropertyResult> run_all_properties() {
  return {property_initial_pairing(),
          property_gram_degree_vanishing(),
          property_initial_orthogonality(),
          property_foreign_initial_action(),
          property_family_members_in_basis(),
          property_ideal_containments(),
          property_pairing_adjointness(),
          property_standard_end_dimension(),
          property_dimension_tiling(),
          property_decomposition_shape(),
          property_mutation_corpus()};
}

}  // namespace bqh_test
