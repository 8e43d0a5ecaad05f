#include "bqh/truncation.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace bqh {

namespace {

std::string b_position_name(const VerifiedHeredity& vh, std::size_t pos) {
  const BIndex& ix = vh.b()[pos];
  std::ostringstream os;
  os << "(" << vh.poset().label(ix.cell) << ":" << ix.x << "," << ix.y << ")";
  return os.str();
}

// Basis data for a subspace spanned by a subset of the heredity basis.
struct SubBasis {
  std::vector<BIndex> index;
  std::vector<std::size_t> parent_pos;
  std::vector<SparseVec> in_parent;
  std::vector<BasisInfo> infos;
  std::unordered_map<std::size_t, std::size_t> local_of_pos;
};

// Collects the B positions selected by keep (indexed by B position), in B
// order, naming each member after its ambient basis element when the product
// coincides with one and after its B position otherwise.
SubBasis collect_sub_basis(const SuperAlgebra& A, const VerifiedHeredity& vh,
                           const std::vector<bool>& keep) {
  SubBasis sb;
  for (std::size_t pos = 0; pos < vh.dim(); ++pos) {
    if (!keep[pos]) continue;
    const BIndex& ix = vh.b()[pos];
    const SparseVec el = vh.b_element(pos);
    std::string label;
    if (el.support_size() == 1 && el.entries().begin()->second.is_one()) {
      label = A.label(el.entries().begin()->first);
    } else {
      label = "b@" + std::to_string(pos);
    }
    sb.local_of_pos.emplace(pos, sb.index.size());
    sb.index.push_back(ix);
    sb.parent_pos.push_back(pos);
    sb.in_parent.push_back(el);
    sb.infos.push_back(BasisInfo{std::move(label), vh.x_deg(ix.cell, ix.x) + vh.y_deg(ix.cell, ix.y)});
  }
  // Duplicate labels can only arise between a synthesized name and an exotic
  // ambient label; disambiguate deterministically.
  std::map<std::string, std::size_t> seen;
  for (auto& info : sb.infos) {
    while (seen.count(info.label)) info.label += "'";
    seen.emplace(info.label, 1);
  }
  return sb;
}

// Coordinates of an ambient element on the selected positions, or nullopt
// when its B support leaks outside.
std::optional<SparseVec> sub_coords(const SuperAlgebra& A, const VerifiedHeredity& vh,
                                    const SubBasis& sb, const SparseVec& ambient) {
  const Vec w = vh.to_b(ambient);
  SparseVec out(A.field());
  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    if (w[pos].is_zero()) continue;
    auto it = sb.local_of_pos.find(pos);
    if (it == sb.local_of_pos.end()) return std::nullopt;
    out.set(it->second, w[pos]);
  }
  return out;
}

// Builds the algebra on the selected span.  Returns nullopt (with a witness)
// when the span is not multiplicatively closed.
std::optional<SuperAlgebra> materialize_sub_algebra(const SuperAlgebra& A,
                                                    const VerifiedHeredity& vh,
                                                    const SubBasis& sb,
                                                    std::vector<std::string>& problems) {
  SuperAlgebraOptions opts;
  opts.max_dimension = std::max<std::size_t>(A.dim(), 1);
  SuperAlgebra S(A.field(), sb.infos, opts);
  for (std::size_t k = 0; k < sb.index.size(); ++k) {
    for (std::size_t l = 0; l < sb.index.size(); ++l) {
      const SparseVec p = A.multiply(sb.in_parent[k], sb.in_parent[l]);
      const auto coords = sub_coords(A, vh, sb, p);
      if (!coords) {
        problems.push_back("product " + sb.infos[k].label + " * " + sb.infos[l].label +
                           " leaves the selected span");
        if (problems.size() >= 8) return std::nullopt;
        continue;
      }
      if (!coords->is_zero()) S.set_product(k, l, *coords);
    }
  }
  if (!problems.empty()) return std::nullopt;
  return S;
}

SparseVec apply_linear(const SuperAlgebra& A, const std::vector<SparseVec>& images,
                       const SparseVec& v) {
  SparseVec out(A.field());
  for (const auto& [idx, c] : v.entries()) out.add_scaled(images.at(idx), c);
  return out;
}

// Unit of an algebra presented by structure constants, found by a linear
// solve of the two-sided unit laws; nullopt when no unit exists.
std::optional<SparseVec> find_unit(const SuperAlgebra& S) {
  const std::size_t d = S.dim();
  if (d == 0) return std::nullopt;
  Matrix m(S.field(), 2 * d * d, d);
  Vec rhs(2 * d * d, Scalar::zero(S.field()));
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < d; ++k) {
      const SparseVec& left = S.product(j, k);   // e_j * b_k
      const SparseVec& right = S.product(k, j);  // b_k * e_j
      for (const auto& [idx, c] : left.entries()) m.at(k * d + idx, j) = c;
      for (const auto& [idx, c] : right.entries()) m.at(d * d + k * d + idx, j) = c;
    }
  }
  for (std::size_t k = 0; k < d; ++k) {
    rhs[k * d + k] = Scalar::one(S.field());
    rhs[d * d + k * d + k] = Scalar::one(S.field());
  }
  const auto sol = solve(m, rhs);
  if (!sol) return std::nullopt;
  return SparseVec::from_dense(S.field(), *sol);
}

}  // namespace

std::size_t AdaptedIdempotent::ibar_count() const {
  std::size_t n = 0;
  for (bool b : ibar) {
    if (b) ++n;
  }
  return n;
}

AdaptedIdempotent classify_idempotent(const SuperAlgebra& A, const VerifiedHeredity& vh,
                                      const SparseVec& e) {
  A.require_validated();
  const IdempotentReport ir = A.check_idempotent(e);
  if (!ir.ok()) {
    throw Error("classification requires a degree-(0, even) idempotent: " + ir.witness);
  }
  AdaptedIdempotent out{e, {}, {}, {}, true, false, {}};
  const std::size_t cells = vh.cell_count();
  out.x_keep.assign(cells, {});
  out.y_keep.assign(cells, {});
  out.ibar.assign(cells, false);
  for (std::size_t i = 0; i < cells; ++i) {
    const HeredityCell& cell = vh.data().cell(i);
    out.x_keep[i].assign(cell.X.size(), false);
    out.y_keep[i].assign(cell.Y.size(), false);
    for (std::size_t x = 0; x < cell.X.size(); ++x) {
      const SparseVec p = A.multiply(e, cell.X[x]);
      if (p == cell.X[x]) {
        out.x_keep[i][x] = true;
      } else if (!p.is_zero()) {
        out.adapted = false;
        out.problems.push_back("e * X(" + vh.poset().label(i) + ")[" + std::to_string(x) +
                               "] is neither the element nor zero");
      }
    }
    for (std::size_t y = 0; y < cell.Y.size(); ++y) {
      const SparseVec p = A.multiply(cell.Y[y], e);
      if (p == cell.Y[y]) {
        out.y_keep[i][y] = true;
      } else if (!p.is_zero()) {
        out.adapted = false;
        out.problems.push_back("Y(" + vh.poset().label(i) + ")[" + std::to_string(y) +
                               "] * e is neither the element nor zero");
      }
    }
    const bool any_x = std::count(out.x_keep[i].begin(), out.x_keep[i].end(), true) > 0;
    const bool any_y = std::count(out.y_keep[i].begin(), out.y_keep[i].end(), true) > 0;
    out.ibar[i] = any_x && any_y;
  }
  out.strongly_adapted = out.adapted;
  for (std::size_t i = 0; i < cells; ++i) {
    if (!out.ibar[i]) continue;
    const HeredityCell& cell = vh.data().cell(i);
    if (!out.x_keep[i][cell.e_in_X] || !out.y_keep[i][cell.e_in_Y]) {
      out.strongly_adapted = false;
      out.problems.push_back("initial element of cell " + vh.poset().label(i) +
                             " is not fixed by e although the cell survives");
    }
  }
  if (!out.adapted) out.strongly_adapted = false;
  return out;
}

Truncation truncate(const SuperAlgebra& A, const VerifiedHeredity& vh,
                    const AdaptedIdempotent& cls,
                    const std::vector<SparseVec>* tau_images) {
  A.require_validated();
  if (!cls.adapted) throw Error("idempotent is not adapted; truncation undefined");
  const Poset& poset = vh.poset();
  const std::size_t cells = vh.cell_count();

  // Subposet on the surviving cells, inheriting the parent order.
  std::vector<std::string> sub_labels;
  std::vector<std::size_t> parent_cell;
  std::vector<std::size_t> sub_cell(cells, Truncation::npos);
  for (std::size_t i = 0; i < cells; ++i) {
    if (!cls.ibar[i]) continue;
    sub_cell[i] = sub_labels.size();
    parent_cell.push_back(i);
    sub_labels.push_back(poset.label(i));
  }
  std::vector<std::pair<std::string, std::string>> rels;
  for (std::size_t a : parent_cell) {
    for (std::size_t b : parent_cell) {
      if (a != b && poset.leq(a, b)) rels.emplace_back(poset.label(a), poset.label(b));
    }
  }
  Truncation t(cls, Poset(sub_labels, rels));
  t.parent_cell = std::move(parent_cell);
  t.sub_cell = std::move(sub_cell);

  // Surviving products, in B order.
  std::vector<bool> keep(vh.dim(), false);
  for (std::size_t i = 0; i < cells; ++i) {
    if (!cls.ibar[i]) continue;
    for (std::size_t x = 0; x < vh.x_count(i); ++x) {
      if (!cls.x_keep[i][x]) continue;
      for (std::size_t y = 0; y < vh.y_count(i); ++y) {
        if (cls.y_keep[i][y]) keep[vh.b_pos(i, x, y)] = true;
      }
    }
  }
  SubBasis sb = collect_sub_basis(A, vh, keep);
  std::vector<std::string> closure_problems;
  auto alg = materialize_sub_algebra(A, vh, sb, closure_problems);
  if (!alg) {
    throw Error("truncated basis failed to close under multiplication: " +
                (closure_problems.empty() ? std::string("?") : closure_problems.front()));
  }
  const auto unit_coords = sub_coords(A, vh, sb, cls.e);
  if (!unit_coords) throw Error("adapted idempotent lies outside its own truncation");
  alg->set_unit(*unit_coords);
  const ValidationReport vr = alg->validate();
  if (!vr.ok) {
    throw Error("truncated algebra failed validation: " +
                (vr.problems.empty() ? std::string("?") : vr.problems.front()));
  }
  t.algebra = std::move(alg);
  t.basis_index = std::move(sb.index);
  t.parent_b_pos = std::move(sb.parent_pos);
  t.basis_in_parent = std::move(sb.in_parent);
  t.unital = true;
  const SuperAlgebra& T = *t.algebra;

  // Kept family positions per surviving cell, in family order.
  std::vector<std::vector<std::size_t>> kept_x(t.parent_cell.size()), kept_y(t.parent_cell.size());
  for (std::size_t s = 0; s < t.parent_cell.size(); ++s) {
    const std::size_t i = t.parent_cell[s];
    for (std::size_t x = 0; x < vh.x_count(i); ++x) {
      if (cls.x_keep[i][x]) kept_x[s].push_back(x);
    }
    for (std::size_t y = 0; y < vh.y_count(i); ++y) {
      if (cls.y_keep[i][y]) kept_y[s].push_back(y);
    }
  }
  auto local_unit = [&](std::size_t i, std::size_t x, std::size_t y) {
    SparseVec v(A.field());
    v.set(sb.local_of_pos.at(vh.b_pos(i, x, y)), Scalar::one(A.field()));
    return v;
  };

  // Standard-basis certificate for the product basis, bucketed by cell.
  StandardBasisCandidate cand{t.subposet, {}};
  cand.b.resize(t.parent_cell.size());
  for (std::size_t s = 0; s < t.parent_cell.size(); ++s) {
    const std::size_t i = t.parent_cell[s];
    cand.b[s].resize(kept_x[s].size());
    for (std::size_t xa = 0; xa < kept_x[s].size(); ++xa) {
      for (std::size_t yb = 0; yb < kept_y[s].size(); ++yb) {
        cand.b[s][xa].push_back(local_unit(i, kept_x[s][xa], kept_y[s][yb]));
      }
    }
  }
  const StandardlyBasedReport sbr = check_standardly_based(T, cand);
  t.standardly_based = sbr.ok;
  t.standard_basis_problems = sbr.problems;

  // Full heredity data exists exactly in the strongly adapted case.
  if (cls.strongly_adapted) {
    std::vector<HeredityCell> hcells;
    for (std::size_t s = 0; s < t.parent_cell.size(); ++s) {
      const std::size_t i = t.parent_cell[s];
      const HeredityCell& pc = vh.data().cell(i);
      HeredityCell hc{SparseVec(A.field()), {}, {}, 0, 0};
      hc.e = local_unit(i, pc.e_in_X, pc.e_in_Y);
      for (std::size_t x : kept_x[s]) hc.X.push_back(local_unit(i, x, pc.e_in_Y));
      for (std::size_t y : kept_y[s]) hc.Y.push_back(local_unit(i, pc.e_in_X, y));
      hcells.push_back(std::move(hc));
    }
    HeredityData hd(t.subposet, std::move(hcells));
    HeredityReport hr = verify_heredity(T, hd);
    if (hr.ok) {
      t.heredity = std::move(hd);
      t.verified = std::move(hr.verified);
    } else {
      for (const auto& f : hr.failures) t.heredity_notes.push_back(f.check + ": " + f.detail);
    }
  } else {
    t.heredity_notes.push_back("idempotent is adapted but not strongly adapted; "
                               "no induced heredity data");
  }

  // Cellular certificate, available when tau is supplied and fixes e.
  if (tau_images != nullptr) {
    if (tau_images->size() != A.dim()) {
      t.cellular_notes.push_back("involution images must cover the ambient basis");
    } else if (!(apply_linear(A, *tau_images, cls.e) == cls.e)) {
      t.cellular_notes.push_back("involution does not fix the idempotent; "
                                 "cellular certificate withheld");
    } else {
      bool inside = true;
      std::vector<SparseVec> sub_tau;
      for (std::size_t k = 0; k < T.dim() && inside; ++k) {
        const auto img = sub_coords(A, vh, sb, apply_linear(A, *tau_images, t.basis_in_parent[k]));
        if (!img) {
          inside = false;
          t.cellular_notes.push_back("involution image of " + T.label(k) +
                                     " leaves the truncation");
        } else {
          sub_tau.push_back(*img);
        }
      }
      if (inside) {
        const CellularReport cr = check_cellular(T, cand, sub_tau);
        t.cellular = cr.ok;
        if (!cr.ok) t.cellular_notes.push_back(cr.witness);
      }
    }
  }
  return t;
}

SparseVec restrict_to_truncation(const SuperAlgebra& A, const VerifiedHeredity& vh,
                                 const Truncation& t, const SparseVec& ambient) {
  const Vec w = vh.to_b(ambient);
  std::unordered_map<std::size_t, std::size_t> local;
  for (std::size_t k = 0; k < t.parent_b_pos.size(); ++k) local.emplace(t.parent_b_pos[k], k);
  SparseVec out(A.field());
  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    if (w[pos].is_zero()) continue;
    auto it = local.find(pos);
    if (it == local.end()) {
      throw Error("element lies outside the truncated subalgebra at position " +
                  b_position_name(vh, pos));
    }
    out.set(it->second, w[pos]);
  }
  return out;
}

SparseVec embed_from_truncation(const SuperAlgebra& A, const Truncation& t,
                                const SparseVec& truncated) {
  return apply_linear(A, t.basis_in_parent, truncated);
}

std::vector<std::size_t> surviving_simples(const SuperAlgebra& A, const VerifiedHeredity& vh,
                                           const AdaptedIdempotent& cls) {
  A.require_validated();
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vh.cell_count(); ++i) {
    if (!cls.ibar[i]) continue;
    const HeredityCell& cell = vh.data().cell(i);
    const std::vector<bool> above = vh.poset().strictly_above(i);
    bool survives = false;
    for (std::size_t x = 0; x < cell.X.size() && !survives; ++x) {
      if (!cls.x_keep[i][x]) continue;
      for (std::size_t y = 0; y < cell.Y.size() && !survives; ++y) {
        if (!cls.y_keep[i][y]) continue;
        const Vec residue = reduce_mod_ideal(A, vh, A.multiply(cell.Y[y], cell.X[x]), above);
        for (const Scalar& c : residue) {
          if (!c.is_zero()) {
            survives = true;
            break;
          }
        }
      }
    }
    if (survives) out.push_back(i);
  }
  return out;
}

ConformityReport conformity_check(const SuperAlgebra& A, const VerifiedHeredity& vh) {
  A.require_validated();
  ConformityReport cr;
  std::vector<bool> keep(vh.dim(), false);
  for (std::size_t pos = 0; pos < vh.dim(); ++pos) {
    const BIndex& ix = vh.b()[pos];
    keep[pos] = vh.x_deg(ix.cell, ix.x).parity == 0 && vh.y_deg(ix.cell, ix.y).parity == 0;
  }
  SubBasis sb = collect_sub_basis(A, vh, keep);
  auto alg = materialize_sub_algebra(A, vh, sb, cr.problems);
  cr.basis_index = sb.index;
  cr.parent_b_pos = sb.parent_pos;
  cr.basis_in_parent = sb.in_parent;
  cr.closed = alg.has_value();
  if (!cr.closed) return cr;

  if (auto u = find_unit(*alg)) {
    alg->set_unit(*u);
    cr.unital = true;
  }
  const ValidationReport vr = alg->validate();
  if (!vr.ok) {
    cr.problems.insert(cr.problems.end(), vr.problems.begin(), vr.problems.end());
    return cr;
  }
  cr.algebra = std::move(alg);

  // Induced data: the even parts of the families over the full parent poset.
  std::vector<HeredityCell> hcells;
  for (std::size_t i = 0; i < vh.cell_count(); ++i) {
    const HeredityCell& pc = vh.data().cell(i);
    auto local_unit = [&](std::size_t x, std::size_t y) {
      SparseVec v(A.field());
      v.set(sb.local_of_pos.at(vh.b_pos(i, x, y)), Scalar::one(A.field()));
      return v;
    };
    HeredityCell hc{SparseVec(A.field()), {}, {}, 0, 0};
    hc.e = local_unit(pc.e_in_X, pc.e_in_Y);
    for (std::size_t x = 0; x < pc.X.size(); ++x) {
      if (vh.x_deg(i, x).parity == 0) hc.X.push_back(local_unit(x, pc.e_in_Y));
    }
    for (std::size_t y = 0; y < pc.Y.size(); ++y) {
      if (vh.y_deg(i, y).parity == 0) hc.Y.push_back(local_unit(pc.e_in_X, y));
    }
    hcells.push_back(std::move(hc));
  }
  HeredityData hd(vh.poset(), std::move(hcells));
  HeredityReport hr = verify_heredity(*cr.algebra, hd);
  if (hr.ok) {
    cr.data = std::move(hd);
    cr.verified = std::move(hr.verified);
  } else {
    for (const auto& f : hr.failures) cr.problems.push_back(f.check + ": " + f.detail);
  }
  return cr;
}

SparseVec restrict_to_subalgebra(const SuperAlgebra& A, const VerifiedHeredity& vh,
                                 const ConformityReport& cr, const SparseVec& ambient) {
  const Vec w = vh.to_b(ambient);
  std::unordered_map<std::size_t, std::size_t> local;
  for (std::size_t k = 0; k < cr.parent_b_pos.size(); ++k) local.emplace(cr.parent_b_pos[k], k);
  SparseVec out(A.field());
  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    if (w[pos].is_zero()) continue;
    auto it = local.find(pos);
    if (it == local.end()) {
      throw Error("element lies outside the even subalgebra at position " +
                  b_position_name(vh, pos));
    }
    out.set(it->second, w[pos]);
  }
  return out;
}

SparseVec embed_from_subalgebra(const SuperAlgebra& A, const ConformityReport& cr,
                                const SparseVec& element) {
  return apply_linear(A, cr.basis_in_parent, element);
}

Z2Z2Report z2z2_check(const SuperAlgebra& A, const std::vector<Bigrade>& bigrading,
                      const VerifiedHeredity& vh) {
  A.require_validated();
  if (bigrading.size() != A.dim()) throw Error("bigrading must cover the whole basis");
  Z2Z2Report rep;
  std::vector<Bigrade> bg(bigrading);
  for (auto& g : bg) {
    g.eps &= 1;
    g.delta &= 1;
  }

  rep.refines_parity = true;
  for (std::size_t k = 0; k < A.dim(); ++k) {
    if (((bg[k].eps + bg[k].delta) & 1) != A.deg(k).parity) {
      rep.refines_parity = false;
      rep.problems.push_back("bigrade of " + A.label(k) + " does not refine its parity");
    }
  }

  rep.multiplicative = true;
  for (std::size_t k = 0; k < A.dim() && rep.problems.size() < 16; ++k) {
    for (std::size_t l = 0; l < A.dim() && rep.problems.size() < 16; ++l) {
      const Bigrade want{(bg[k].eps + bg[l].eps) & 1, (bg[k].delta + bg[l].delta) & 1};
      for (const auto& [idx, c] : A.product(k, l).entries()) {
        (void)c;
        if (!(bg[idx] == want)) {
          rep.multiplicative = false;
          rep.problems.push_back("product " + A.label(k) + " * " + A.label(l) +
                                 " meets " + A.label(idx) + " outside its bigrade");
          break;
        }
      }
    }
  }

  rep.families_placed = true;
  for (std::size_t i = 0; i < vh.cell_count(); ++i) {
    const HeredityCell& cell = vh.data().cell(i);
    for (std::size_t x = 0; x < cell.X.size(); ++x) {
      const Bigrade want{vh.x_deg(i, x).parity, 0};
      for (const auto& [idx, c] : cell.X[x].entries()) {
        (void)c;
        if (!(bg[idx] == want)) {
          rep.families_placed = false;
          rep.problems.push_back("X(" + vh.poset().label(i) + ")[" + std::to_string(x) +
                                 "] is not concentrated in bigrade (parity, 0)");
          break;
        }
      }
    }
    for (std::size_t y = 0; y < cell.Y.size(); ++y) {
      const Bigrade want{0, vh.y_deg(i, y).parity};
      for (const auto& [idx, c] : cell.Y[y].entries()) {
        (void)c;
        if (!(bg[idx] == want)) {
          rep.families_placed = false;
          rep.problems.push_back("Y(" + vh.poset().label(i) + ")[" + std::to_string(y) +
                                 "] is not concentrated in bigrade (0, parity)");
          break;
        }
      }
    }
  }

  for (std::size_t k = 0; k < A.dim(); ++k) {
    if (bg[k] == Bigrade{0, 0}) rep.even_even.push_back(k);
  }

  if (rep.ok()) {
    const ConformityReport cr = conformity_check(A, vh);
    if (!cr.ok()) {
      rep.problems.push_back("even bigrading holds but the conforming subalgebra "
                             "failed verification");
    } else {
      RowSpace span(A.field(), A.dim());
      for (const auto& v : cr.basis_in_parent) span.add(v.dense(A.dim()));
      bool match = span.dim() == rep.even_even.size();
      for (std::size_t k : rep.even_even) {
        if (!match) break;
        Vec unit(A.dim(), Scalar::zero(A.field()));
        unit[k] = Scalar::one(A.field());
        match = span.contains(unit);
      }
      rep.cross_validated = match;
      if (!match) {
        rep.problems.push_back("even-even component differs from the conforming subalgebra");
      }
    }
  }
  return rep;
}

}  // namespace bqh
