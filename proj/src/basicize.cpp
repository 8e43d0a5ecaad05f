#include "bqh/basicize.hpp"

#include <algorithm>

namespace bqh {

namespace {

// Every simple action in one stacked matrix: column z holds the entries of
// the action of basis element z on each simple, so the kernel is the
// intersection of the annihilators.
struct SimpleStack {
  std::vector<ModuleRep> simples;
  Matrix m;
};

SimpleStack stack_simple_actions(const SuperAlgebra& S, const VerifiedHeredity& vh) {
  SimpleStack st;
  std::size_t rows = 0;
  for (std::size_t i = 0; i < vh.cell_count(); ++i) {
    st.simples.push_back(radical_and_simple(S, vh, i).simple.rep);
    rows += st.simples.back().dim() * st.simples.back().dim();
  }
  st.m = Matrix(S.field(), rows, S.dim());
  for (std::size_t z = 0; z < S.dim(); ++z) {
    std::size_t off = 0;
    for (const auto& rep : st.simples) {
      const Matrix act = rep.act(S, S.basis_element(z));
      const std::size_t d = rep.dim();
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t s = 0; s < d; ++s) st.m.at(off + r * d + s, z) = act.at(r, s);
      }
      off += d * d;
    }
  }
  return st;
}

Vec stacked_action(const SuperAlgebra& S, const SimpleStack& st, const SparseVec& v) {
  Vec out(st.m.rows(), Scalar::zero(S.field()));
  std::size_t off = 0;
  for (const auto& rep : st.simples) {
    const Matrix act = rep.act(S, v);
    const std::size_t d = rep.dim();
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t s = 0; s < d; ++s) out[off + r * d + s] = act.at(r, s);
    }
    off += d * d;
  }
  return out;
}

bool all_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& c) { return c.is_zero(); });
}

}  // namespace

RadicalResult jacobson_radical(const SuperAlgebra& A, const VerifiedHeredity& vh) {
  A.require_validated();
  if (!A.unit()) throw Error("radical computation requires a unital algebra");
  const SimpleStack st = stack_simple_actions(A, vh);
  RadicalResult out;
  for (const Vec& v : kernel_basis(st.m)) out.basis.push_back(SparseVec::from_dense(A.field(), v));

  RowSpace span(A.field(), A.dim());
  for (const auto& v : out.basis) span.add(v.dense(A.dim()));
  out.is_ideal = true;
  for (const auto& v : out.basis) {
    for (std::size_t z = 0; z < A.dim() && out.is_ideal; ++z) {
      const SparseVec b = A.basis_element(z);
      if (!span.contains(A.multiply(b, v).dense(A.dim())) ||
          !span.contains(A.multiply(v, b).dense(A.dim()))) {
        out.is_ideal = false;
      }
    }
  }

  std::vector<SparseVec> power = out.basis;  // spanning set of J^m
  out.nilpotency = 1;
  while (!power.empty()) {
    if (out.nilpotency > A.dim() + 1) {
      throw Error("radical is not nilpotent; the simple-module data is inconsistent");
    }
    std::vector<SparseVec> next;
    RowSpace rs(A.field(), A.dim());
    for (const auto& a : out.basis) {
      for (const auto& b : power) {
        SparseVec p = A.multiply(a, b);
        if (!p.is_zero() && rs.add(p.dense(A.dim()))) next.push_back(std::move(p));
      }
    }
    power = std::move(next);
    ++out.nilpotency;
  }
  return out;
}

PrimitiveRefinement primitive_refinement(const SuperAlgebra& A, const VerifiedHeredity& vh) {
  A.require_validated();
  if (!A.unit()) throw Error("primitive refinement requires a unital algebra");
  PrimitiveRefinement pr;
  pr.conformity = conformity_check(A, vh);
  if (!pr.conformity.ok()) {
    throw Error("heredity data is not conforming; primitive refinement undefined");
  }
  SparseVec unit_sub(A.field());
  try {
    unit_sub = restrict_to_subalgebra(A, vh, pr.conformity, *A.unit());
  } catch (const Error&) {
    throw Error("the unit does not lie in the even subalgebra; refinement refused");
  }
  const SuperAlgebra& S = *pr.conformity.algebra;
  const VerifiedHeredity& vs = *pr.conformity.verified;
  if (!pr.conformity.unital || !(*S.unit() == unit_sub)) {
    throw Error("the even subalgebra does not share the ambient unit");
  }

  pr.radical = jacobson_radical(S, vs);
  const SimpleStack st = stack_simple_actions(S, vs);

  // Solving for semisimple-quotient preimages inside the degree-(0, even)
  // component keeps every produced idempotent homogeneous.
  std::vector<std::size_t> zcols;
  for (std::size_t z = 0; z < S.dim(); ++z) {
    if (S.deg(z) == Deg{0, 0}) zcols.push_back(z);
  }
  Matrix m0(S.field(), st.m.rows(), zcols.size());
  for (std::size_t c = 0; c < zcols.size(); ++c) {
    for (std::size_t r = 0; r < st.m.rows(); ++r) m0.at(r, c) = st.m.at(r, zcols[c]);
  }

  const std::size_t cells = vs.cell_count();
  pr.e_prime_sub.assign(cells, SparseVec(S.field()));
  pr.e_prime.assign(cells, SparseVec(A.field()));

  for (std::size_t i = 0; i < cells; ++i) {
    const SparseVec& ei = vs.data().cell(i).e;
    const std::vector<bool> above = vs.poset().strictly_above(i);

    // The corner over cell i must be one-dimensional in the quotient; this
    // is what makes the congruent summand unique.
    RowSpace corner(S.field(), S.dim());
    for (std::size_t z = 0; z < S.dim(); ++z) {
      corner.add(reduce_mod_ideal(S, vs, S.multiply(S.multiply(ei, S.basis_element(z)), ei),
                                  above));
    }
    if (corner.dim() != 1) {
      pr.problems.push_back("corner of cell " + vs.poset().label(i) +
                            " modulo the higher ideal has dimension " +
                            std::to_string(corner.dim()) + ", not 1");
      return pr;
    }

    // Rank-one pieces of the idempotent's image in each simple block, from a
    // pivot-column factorization of the block.
    std::vector<SparseVec> summands;
    SparseVec u(S.field());  // sum of the summands produced so far
    for (std::size_t j = 0; j < st.simples.size(); ++j) {
      const Matrix P = st.simples[j].act(S, ei);
      const std::size_t d = st.simples[j].dim();
      const RrefResult rr = rref(P);
      if (rr.rank == 0) continue;
      Matrix U(S.field(), d, rr.rank);
      for (std::size_t t = 0; t < rr.rank; ++t) {
        for (std::size_t r = 0; r < d; ++r) U.at(r, t) = P.at(r, rr.pivot_cols[t]);
      }
      // W with P = U W; W U = identity because U has full column rank.
      Matrix W(S.field(), rr.rank, d);
      for (std::size_t s = 0; s < d; ++s) {
        const auto w = solve(U, P.col(s));
        if (!w) throw Error("idempotent image failed to factor through its column space");
        for (std::size_t t = 0; t < rr.rank; ++t) W.at(t, s) = (*w)[t];
      }
      for (std::size_t t = 0; t < rr.rank; ++t) {
        // Target: the rank-one idempotent (col t of U) (row t of W) in block
        // j and zero elsewhere.
        Vec rhs(st.m.rows(), Scalar::zero(S.field()));
        std::size_t off = 0;
        for (std::size_t jj = 0; jj < j; ++jj) {
          off += st.simples[jj].dim() * st.simples[jj].dim();
        }
        for (std::size_t r = 0; r < d; ++r) {
          for (std::size_t s = 0; s < d; ++s) rhs[off + r * d + s] = U.at(r, t) * W.at(t, s);
        }
        const auto sol = solve(m0, rhs);
        if (!sol) {
          pr.problems.push_back("semisimple quotient is not reached from degree zero at cell " +
                                vs.poset().label(i));
          return pr;
        }
        SparseVec g(S.field());
        for (std::size_t c = 0; c < zcols.size(); ++c) {
          if (!(*sol)[c].is_zero()) g.set(zcols[c], (*sol)[c]);
        }
        g = S.multiply(S.multiply(ei, g), ei);
        // Orthogonalize against the summands already produced, then lift to
        // an exact idempotent; both steps fix the image in the quotient.
        g = g - S.multiply(u, g) - S.multiply(g, u) + S.multiply(S.multiply(u, g), u);
        bool stable = false;
        for (std::size_t it = 0; it <= S.dim() + 1; ++it) {
          const SparseVec g2 = S.multiply(g, g);
          if (g2 == g) {
            stable = true;
            break;
          }
          g = g2.scaled(Scalar::from_int(S.field(), 3)) -
              S.multiply(g2, g).scaled(Scalar::from_int(S.field(), 2));
        }
        if (!stable) throw Error("idempotent lifting failed to stabilize");
        if (!(stacked_action(S, st, g) == rhs)) {
          pr.problems.push_back("lifted idempotent drifted from its semisimple image");
          return pr;
        }
        u += g;
        summands.push_back(std::move(g));
      }
    }

    SparseVec total(S.field());
    for (const auto& g : summands) total += g;
    if (!(total == ei)) {
      pr.problems.push_back("orthogonal summands of the initial idempotent at cell " +
                            vs.poset().label(i) + " do not sum back to it");
      return pr;
    }

    std::size_t congruent = summands.size();
    for (std::size_t t = 0; t < summands.size(); ++t) {
      if (all_zero(reduce_mod_ideal(S, vs, summands[t] - ei, above))) {
        if (congruent != summands.size()) {
          pr.problems.push_back("two primitive summands at cell " + vs.poset().label(i) +
                                " are congruent to the initial idempotent");
          return pr;
        }
        congruent = t;
      }
    }
    if (congruent == summands.size()) {
      pr.problems.push_back("no primitive summand at cell " + vs.poset().label(i) +
                            " is congruent to the initial idempotent");
      return pr;
    }
    pr.e_prime_sub[i] = summands[congruent];
    pr.e_prime[i] = embed_from_subalgebra(A, pr.conformity, summands[congruent]);
  }

  pr.orthogonal = true;
  for (std::size_t i = 0; i < cells && pr.orthogonal; ++i) {
    for (std::size_t j = 0; j < cells && pr.orthogonal; ++j) {
      const SparseVec p = S.multiply(pr.e_prime_sub[i], pr.e_prime_sub[j]);
      if (i == j ? !(p == pr.e_prime_sub[i]) : !p.is_zero()) pr.orthogonal = false;
    }
  }
  if (!pr.orthogonal) pr.problems.push_back("refined idempotents are not orthogonal");

  // Primitivity: the corner over each refined idempotent has a
  // one-dimensional head, since its radical is the cut of the big one.
  RowSpace radspan(S.field(), S.dim());
  for (const auto& v : pr.radical.basis) radspan.add(v.dense(S.dim()));
  pr.primitive = true;
  for (std::size_t i = 0; i < cells; ++i) {
    RowSpace head(S.field(), S.dim());
    std::size_t corner_dim = 0;
    std::size_t corner_rad = 0;
    for (std::size_t z = 0; z < S.dim(); ++z) {
      const SparseVec c =
          S.multiply(S.multiply(pr.e_prime_sub[i], S.basis_element(z)), pr.e_prime_sub[i]);
      if (head.add(c.dense(S.dim()))) ++corner_dim;
    }
    RowSpace cut(S.field(), S.dim());
    for (const auto& v : pr.radical.basis) {
      const SparseVec c = S.multiply(S.multiply(pr.e_prime_sub[i], v), pr.e_prime_sub[i]);
      if (cut.add(c.dense(S.dim()))) ++corner_rad;
    }
    if (corner_dim - corner_rad != 1) {
      pr.primitive = false;
      pr.problems.push_back("refined idempotent at cell " + vs.poset().label(i) +
                            " is not primitive in the subalgebra");
    }
  }

  pr.ok = pr.problems.empty() && pr.orthogonal && pr.primitive;
  return pr;
}

namespace {

// Greedy choice of a corner-aligned family replacing fam (all in the
// truncated algebra T): picks products cornered between the refined
// idempotents whose residues modulo the higher ideal stay independent.
std::vector<SparseVec> cornered_family(const SuperAlgebra& T, const VerifiedHeredity& tvh,
                                       std::size_t sub_i, const std::vector<SparseVec>& eps,
                                       const SparseVec& estar,
                                       const std::vector<SparseVec>& fam, bool left_corner,
                                       std::vector<std::string>& problems) {
  const std::vector<bool> above = tvh.poset().strictly_above(sub_i);
  const SparseVec& ei = eps[sub_i];
  std::vector<SparseVec> corners = eps;
  corners.push_back(estar);
  std::vector<SparseVec> chosen;
  RowSpace rs(T.field(), T.dim());
  if (rs.add(reduce_mod_ideal(T, tvh, ei, above))) chosen.push_back(ei);
  for (const auto& corner : corners) {
    for (const auto& x : fam) {
      if (chosen.size() == fam.size()) break;
      const SparseVec cand = left_corner ? T.multiply(T.multiply(corner, x), ei)
                                         : T.multiply(T.multiply(ei, x), corner);
      if (cand.is_zero()) continue;
      if (!T.homogeneous_degree(cand)) {
        problems.push_back("cornered candidate is not homogeneous");
        return {};
      }
      if (rs.add(reduce_mod_ideal(T, tvh, cand, above))) chosen.push_back(cand);
    }
  }
  if (chosen.size() != fam.size()) {
    problems.push_back("cornered family at cell " + tvh.poset().label(sub_i) +
                       " spans dimension " + std::to_string(chosen.size()) + " instead of " +
                       std::to_string(fam.size()));
    return {};
  }
  return chosen;
}

}  // namespace

BasicizationResult basicize(const SuperAlgebra& A, const VerifiedHeredity& vh) {
  A.require_validated();
  BasicizationResult r(A.field());
  if (!A.unit()) throw Error("basicization requires a unital algebra");
  const std::size_t cells = vh.cell_count();
  for (std::size_t i = 0; i < cells; ++i) r.e_sum += vh.data().cell(i).e;

  const AdaptedIdempotent cls_e = classify_idempotent(A, vh, r.e_sum);
  if (!cls_e.strongly_adapted) {
    r.problems.push_back("sum of initial idempotents is not strongly adapted");
    r.problems.insert(r.problems.end(), cls_e.problems.begin(), cls_e.problems.end());
    return r;
  }
  r.by_e.emplace(truncate(A, vh, cls_e));
  if (!r.by_e->verified) {
    r.problems.push_back("truncation by the initial sum carries no verified heredity data");
    r.problems.insert(r.problems.end(), r.by_e->heredity_notes.begin(),
                      r.by_e->heredity_notes.end());
    return r;
  }
  const SuperAlgebra& T = *r.by_e->algebra;
  const VerifiedHeredity& tvh = *r.by_e->verified;

  r.refine = primitive_refinement(T, tvh);
  if (!r.refine.ok) {
    r.problems.push_back("primitive refinement failed inside the truncated pair");
    r.problems.insert(r.problems.end(), r.refine.problems.begin(), r.refine.problems.end());
    return r;
  }
  for (std::size_t i = 0; i < cells; ++i) {
    r.e_prime.push_back(embed_from_truncation(A, *r.by_e, r.refine.e_prime[i]));
    r.f += r.e_prime.back();
  }

  // New heredity data: cornered families inside the truncation, then the
  // parent family members killed by e, pushed through the refined initials.
  SparseVec estar = *T.unit();
  std::vector<SparseVec> eps_t;  // refined idempotents in truncation coordinates
  for (std::size_t i = 0; i < cells; ++i) {
    eps_t.push_back(r.refine.e_prime[i]);
    estar -= eps_t.back();
  }
  std::vector<HeredityCell> new_cells;
  for (std::size_t i = 0; i < cells; ++i) {
    const std::size_t sub_i = r.by_e->sub_cell[i];
    if (sub_i == Truncation::npos) {
      r.problems.push_back("cell " + vh.poset().label(i) + " vanished from the truncation");
      return r;
    }
    const HeredityCell& tc = tvh.data().cell(sub_i);
    // eps_t is indexed by parent cell; reindex along the subposet.
    std::vector<SparseVec> eps_sub;
    for (std::size_t s = 0; s < r.by_e->parent_cell.size(); ++s) {
      eps_sub.push_back(eps_t[r.by_e->parent_cell[s]]);
    }
    const auto xs =
        cornered_family(T, tvh, sub_i, eps_sub, estar, tc.X, true, r.problems);
    const auto ys =
        cornered_family(T, tvh, sub_i, eps_sub, estar, tc.Y, false, r.problems);
    if (xs.empty() || ys.empty()) return r;

    HeredityCell nc{SparseVec(A.field()), {}, {}, 0, 0};
    nc.e = r.e_prime[i];
    for (const auto& x : xs) nc.X.push_back(embed_from_truncation(A, *r.by_e, x));
    for (const auto& y : ys) nc.Y.push_back(embed_from_truncation(A, *r.by_e, y));
    const HeredityCell& pc = vh.data().cell(i);
    for (std::size_t x = 0; x < pc.X.size(); ++x) {
      if (!cls_e.x_keep[i][x]) nc.X.push_back(A.multiply(pc.X[x], r.e_prime[i]));
    }
    for (std::size_t y = 0; y < pc.Y.size(); ++y) {
      if (!cls_e.y_keep[i][y]) nc.Y.push_back(A.multiply(r.e_prime[i], pc.Y[y]));
    }
    new_cells.push_back(std::move(nc));
  }
  HeredityData hd_new(vh.poset(), std::move(new_cells));
  HeredityReport hr = verify_heredity(A, hd_new);
  if (!hr.ok) {
    r.problems.push_back("rebuilt heredity data with primitive initials failed verification");
    for (const auto& fl : hr.failures) r.problems.push_back(fl.check + ": " + fl.detail);
    return r;
  }
  r.new_data.emplace(std::move(hd_new));
  r.new_vh = std::move(hr.verified);

  const AdaptedIdempotent cls_f = classify_idempotent(A, *r.new_vh, r.f);
  r.f_strongly_adapted = cls_f.strongly_adapted;
  if (!r.f_strongly_adapted) {
    r.problems.push_back("sum of refined idempotents is not strongly adapted");
    return r;
  }
  r.by_f.emplace(truncate(A, *r.new_vh, cls_f));
  if (!r.by_f->verified) {
    r.problems.push_back("truncation by the refined sum carries no verified heredity data");
    return r;
  }

  // The even subalgebra must come back unchanged under the new data.
  r.conf_new = conformity_check(A, *r.new_vh);
  if (!r.conf_new.ok()) {
    r.problems.push_back("new data is not conforming");
    return r;
  }
  {
    const ConformityReport conf_old = conformity_check(A, vh);
    RowSpace span(A.field(), A.dim());
    for (const auto& v : conf_old.basis_in_parent) span.add(v.dense(A.dim()));
    bool same = span.dim() == r.conf_new.basis_in_parent.size();
    for (const auto& v : r.conf_new.basis_in_parent) {
      if (!same) break;
      same = span.contains(v.dense(A.dim()));
    }
    r.same_subalgebra = same;
    if (!same) r.problems.push_back("new data spans a different even subalgebra");
  }

  // f a f and its simple dimensions.
  const SuperAlgebra& SA = *r.conf_new.algebra;
  const VerifiedHeredity& svh = *r.conf_new.verified;
  const SparseVec f_sub = restrict_to_subalgebra(A, *r.new_vh, r.conf_new, r.f);
  const AdaptedIdempotent cls_fa = classify_idempotent(SA, svh, f_sub);
  if (!cls_fa.strongly_adapted) {
    r.problems.push_back("refined sum is not strongly adapted inside the even subalgebra");
    return r;
  }
  r.suba_by_f.emplace(truncate(SA, svh, cls_fa));
  if (!r.suba_by_f->verified) {
    r.problems.push_back("f a f carries no verified heredity data");
    return r;
  }
  r.suba_basic = true;
  for (std::size_t s = 0; s < r.suba_by_f->parent_cell.size(); ++s) {
    const auto rs = radical_and_simple(*r.suba_by_f->algebra, *r.suba_by_f->verified, s);
    if (rs.simple.rep.dim() != 1) {
      r.suba_basic = false;
      r.problems.push_back("f a f has a simple module of dimension " +
                           std::to_string(rs.simple.rep.dim()));
    }
  }

  r.radical = jacobson_radical(A, vh);
  {
    RowSpace rad(A.field(), A.dim());
    for (const auto& v : r.radical.basis) rad.add(v.dense(A.dim()));
    r.odd_in_radical = true;
    for (std::size_t k = 0; k < A.dim(); ++k) {
      if (A.deg(k).parity == 0) continue;
      Vec unit(A.dim(), Scalar::zero(A.field()));
      unit[k] = Scalar::one(A.field());
      if (!rad.contains(unit)) {
        r.odd_in_radical = false;
        break;
      }
    }
  }
  if (r.odd_in_radical) {
    bool basic = true;
    for (std::size_t s = 0; s < r.by_f->parent_cell.size(); ++s) {
      if (radical_and_simple(*r.by_f->algebra, *r.by_f->verified, s).simple.rep.dim() != 1) {
        basic = false;
      }
    }
    r.truncated_basic = basic;
    if (!basic) r.problems.push_back("odd part lies in the radical but f A f is not basic");
  }

  r.audit = functor_audit(A, vh, r);
  if (!r.audit.ok) {
    r.problems.insert(r.problems.end(), r.audit.problems.begin(), r.audit.problems.end());
  }
  r.ok = r.problems.empty() && r.suba_basic && r.audit.ok;
  return r;
}

FunctorAudit functor_audit(const SuperAlgebra& A, const VerifiedHeredity& vh,
                           const BasicizationResult& r) {
  FunctorAudit audit;
  if (!r.by_f || !r.by_f->verified || !r.new_vh) {
    audit.problems.push_back("basicization did not reach a verified truncation");
    return audit;
  }
  const SuperAlgebra& T = *r.by_f->algebra;
  const VerifiedHeredity& tvh = *r.by_f->verified;

  bool rows_ok = true;
  for (std::size_t i = 0; i < vh.cell_count(); ++i) {
    const std::size_t sub_i = r.by_f->sub_cell[i];
    if (sub_i == Truncation::npos) {
      audit.problems.push_back("cell " + vh.poset().label(i) + " missing from f A f");
      rows_ok = false;
      continue;
    }
    FunctorAuditRow row;
    row.cell = i;
    const StandardModule delta = build_standard_module(A, vh, i, Side::left);
    const StandardModule delta_new = build_standard_module(A, *r.new_vh, i, Side::left);
    if (!(delta.rep.graded_dimension() == delta_new.rep.graded_dimension())) {
      audit.problems.push_back("standard module at cell " + vh.poset().label(i) +
                               " changed between the two data");
      rows_ok = false;
    }
    row.f_delta = idempotent_weight_gdim(A, delta.rep, r.f);
    row.delta_trunc =
        build_standard_module(T, tvh, sub_i, Side::left).rep.graded_dimension();
    row.delta_ok = row.f_delta == row.delta_trunc;

    const auto simple = radical_and_simple(A, vh, i);
    row.f_simple = idempotent_weight_gdim(A, simple.simple.rep, r.f);
    row.simple_trunc = radical_and_simple(T, tvh, sub_i).simple.rep.graded_dimension();
    row.simple_ok = row.f_simple == row.simple_trunc;

    if (!row.ok()) {
      audit.problems.push_back("module dimensions at cell " + vh.poset().label(i) +
                               " do not match across the truncation");
      rows_ok = false;
    }
    audit.rows.push_back(std::move(row));
  }

  const DecompositionMatrix dm_a = decomposition_matrix(A, vh);
  const DecompositionMatrix dm_t = decomposition_matrix(T, tvh);
  audit.decomposition_equal = dm_a.ok() && dm_t.ok();
  for (std::size_t i = 0; i < vh.cell_count() && audit.decomposition_equal; ++i) {
    for (std::size_t j = 0; j < vh.cell_count(); ++j) {
      const std::size_t si = r.by_f->sub_cell[i];
      const std::size_t sj = r.by_f->sub_cell[j];
      if (!(dm_a.d[i][j] == dm_t.d[si][sj])) {
        audit.decomposition_equal = false;
        audit.problems.push_back("decomposition matrices differ at (" + vh.poset().label(i) +
                                 ", " + vh.poset().label(j) + ")");
        break;
      }
    }
  }
  audit.ok = rows_ok && audit.decomposition_equal;
  return audit;
}

}  // namespace bqh
