#include "bqh/standard_modules.hpp"

#include <algorithm>
#include <map>

namespace bqh {

namespace {

void mask_out(Vec& v, const std::vector<bool>& mask) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (mask[k]) v[k] = Scalar::zero(v[k].field());
  }
}

// Degree blocks of a module basis, in increasing (n, parity) order.
std::map<std::pair<int, int>, std::vector<std::size_t>> degree_blocks(
    const std::vector<Deg>& degrees) {
  std::map<std::pair<int, int>, std::vector<std::size_t>> blocks;
  for (std::size_t k = 0; k < degrees.size(); ++k) {
    blocks[{degrees[k].n, degrees[k].parity}].push_back(k);
  }
  return blocks;
}

}  // namespace

GradedDim ModuleRep::graded_dimension() const {
  GradedDim g;
  for (const Deg& d : degrees) g += GradedDim::term(d.n, d.parity, 1);
  return g;
}

Matrix ModuleRep::act(const SuperAlgebra& A, const SparseVec& v) const {
  if (action.size() != A.dim()) throw Error("module has the wrong number of action matrices");
  Matrix m(A.field(), dim(), dim());
  for (const auto& [a, c] : v.entries()) {
    for (std::size_t r = 0; r < dim(); ++r) {
      for (std::size_t s = 0; s < dim(); ++s) {
        if (!action[a].at(r, s).is_zero()) m.at(r, s) += action[a].at(r, s) * c;
      }
    }
  }
  return m;
}

StandardModule build_standard_module(
    const SuperAlgebra& A, const VerifiedHeredity& vh, std::size_t i, Side side,
    const std::optional<std::pair<std::vector<bool>, std::vector<bool>>>& upper_pair) {
  A.require_validated();
  if (i >= vh.cell_count()) throw Error("cell index out of range");
  const HeredityCell& c = vh.data().cell(i);
  const std::size_t n = A.dim();
  const bool left = (side == Side::left);
  const std::size_t md = left ? c.X.size() : c.Y.size();

  StandardModule sm;
  sm.cell = i;
  sm.rep.side = side;
  for (std::size_t k = 0; k < md; ++k) {
    sm.rep.degrees.push_back(left ? vh.x_deg(i, k) : vh.y_deg(i, k));
  }
  for (std::size_t a = 0; a < n; ++a) {
    sm.rep.action.push_back(left ? vh.l_tensor(i, a) : vh.r_tensor(i, a));
  }

  // With an explicit upper-set pair the coefficients are recomputed against
  // those ideals and must agree with the stored tensors.
  if (upper_pair) {
    const auto& [op, om] = *upper_pair;
    const Poset& poset = vh.poset();
    if (!poset.is_upper_set(op) || !poset.is_upper_set(om)) {
      throw Error("upper-set pair is not upward closed");
    }
    for (std::size_t j = 0; j < poset.size(); ++j) {
      const bool expect = (j == i) ? true : false;
      const bool in_diff = op[j] && !om[j];
      if (in_diff != expect || (om[j] && !op[j])) {
        throw Error("upper-set pair difference is not exactly the requested cell");
      }
    }
    const std::vector<bool> zm = vh.z_mask(om);
    const auto& fam = left ? c.X : c.Y;
    std::vector<Vec> res;
    for (const auto& g : fam) {
      Vec w = vh.to_b(g);
      mask_out(w, zm);
      res.push_back(std::move(w));
    }
    const Matrix mat = Matrix::from_cols(A.field(), res, n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t k = 0; k < md; ++k) {
        const SparseVec prod =
            left ? A.multiply(A.basis_element(a), fam[k]) : A.multiply(fam[k], A.basis_element(a));
        Vec w = vh.to_b(prod);
        mask_out(w, zm);
        const auto sol = solve(mat, w);
        if (!sol) throw Error("standard module action escapes the family modulo the ideal");
        for (std::size_t kp = 0; kp < md; ++kp) {
          if ((*sol)[kp] != sm.rep.action[a].at(kp, k)) {
            throw Error("standard module depends on the upper-set choice");
          }
        }
      }
    }
  }

  // The representation respects products and the grading.
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      Matrix expect(A.field(), md, md);
      for (const auto& [k, s] : A.product(a, b).entries()) {
        for (std::size_t r = 0; r < md; ++r) {
          for (std::size_t t = 0; t < md; ++t) {
            if (!sm.rep.action[k].at(r, t).is_zero()) {
              expect.at(r, t) += sm.rep.action[k].at(r, t) * s;
            }
          }
        }
      }
      const Matrix got = left ? sm.rep.action[a] * sm.rep.action[b]
                              : sm.rep.action[b] * sm.rep.action[a];
      if (got != expect) {
        throw Error("standard module action is not multiplicative on (" + A.label(a) + ", " +
                    A.label(b) + ")");
      }
    }
    for (std::size_t r = 0; r < md; ++r) {
      for (std::size_t t = 0; t < md; ++t) {
        if (sm.rep.action[a].at(r, t).is_zero()) continue;
        if (!(sm.rep.degrees[r] == sm.rep.degrees[t] + A.deg(a))) {
          throw Error("standard module action violates the grading at " + A.label(a));
        }
      }
    }
  }

  // Initial-element behavior on the generator.
  const std::size_t gen = left ? c.e_in_X : c.e_in_Y;
  const Matrix egen = sm.rep.act(A, c.e);
  for (std::size_t k = 0; k < md; ++k) {
    const bool expect_one = (k == gen);
    if (!(egen.at(k, gen) == (expect_one ? Scalar::one(A.field()) : Scalar::zero(A.field())))) {
      throw Error("initial element does not fix the cyclic generator");
    }
  }
  const auto& fam = left ? c.X : c.Y;
  for (std::size_t k = 0; k < md; ++k) {
    const Matrix fk = sm.rep.act(A, fam[k]);
    for (std::size_t r = 0; r < md; ++r) {
      const Scalar expect =
          (r == k) ? Scalar::one(A.field()) : Scalar::zero(A.field());
      if (!(fk.at(r, gen) == expect)) {
        throw Error("family element does not send the generator to its own basis vector");
      }
    }
  }
  return sm;
}

PairingReport pairing_check(const SuperAlgebra& A, const VerifiedHeredity& vh, std::size_t i) {
  A.require_validated();
  PairingReport rep;
  rep.cell = i;
  rep.gram = gram_form(A, vh, i);
  const HeredityCell& c = vh.data().cell(i);
  const Matrix& G = rep.gram.m;

  rep.normalized = G.at(c.e_in_Y, c.e_in_X).is_one();
  if (!rep.normalized) rep.witness = "f(e, e) != 1";

  rep.degree_vanishing = true;
  for (std::size_t y = 0; y < c.Y.size() && rep.degree_vanishing; ++y) {
    for (std::size_t x = 0; x < c.X.size(); ++x) {
      if (G.at(y, x).is_zero()) continue;
      const Deg sum = vh.x_deg(i, x) + vh.y_deg(i, y);
      if (!(sum == Deg{0, 0})) {
        rep.degree_vanishing = false;
        if (rep.witness.empty()) {
          rep.witness = "f(Y[" + std::to_string(y) + "], X[" + std::to_string(x) +
                        "]) is nonzero in non-complementary degrees";
        }
        break;
      }
    }
  }

  // Contravariance: G l(a) = r(a)^T G for every ambient basis element.
  rep.adjoint = true;
  for (std::size_t a = 0; a < A.dim(); ++a) {
    const Matrix lhs = G * vh.l_tensor(i, a);
    const Matrix rhs = vh.r_tensor(i, a).transpose() * G;
    if (lhs != rhs) {
      rep.adjoint = false;
      if (rep.witness.empty()) {
        rep.witness = "pairing is not contravariant for " + A.label(a);
      }
      break;
    }
  }
  return rep;
}

RadicalSimpleResult radical_and_simple(const SuperAlgebra& A, const VerifiedHeredity& vh,
                                       std::size_t i) {
  A.require_validated();
  RadicalSimpleResult res;
  res.cell = i;
  const GramForm g = gram_form(A, vh, i);
  const HeredityCell& c = vh.data().cell(i);
  const std::size_t xs = c.X.size();
  const RrefResult r = rref(g.m);

  res.radical = kernel_basis(g.m);
  for (const Vec& k : res.radical) {
    // Kernel vectors are homogeneous; their degree shows at any support index.
    std::optional<Deg> d;
    for (std::size_t t = 0; t < xs; ++t) {
      if (k[t].is_zero()) continue;
      if (!d) {
        d = vh.x_deg(i, t);
      } else if (!(*d == vh.x_deg(i, t))) {
        throw Error("radical basis vector is not homogeneous");
      }
    }
    res.radical_gdim += GradedDim::term(d->n, d->parity, 1);
  }

  SimpleModule& sm = res.simple;
  sm.cell = i;
  sm.pivot_x = r.pivot_cols;
  const std::size_t ld = sm.pivot_x.size();
  if (ld == 0) throw Error("standard module has zero head; the Gram form vanishes");

  // Projection onto the pivot classes: the first rank rows of the reduced
  // Gram matrix send v_x to its class in the head.
  Matrix P(A.field(), ld, xs);
  for (std::size_t p = 0; p < ld; ++p) {
    for (std::size_t x = 0; x < xs; ++x) P.at(p, x) = r.reduced.at(p, x);
  }
  Matrix E(A.field(), xs, ld);
  for (std::size_t p = 0; p < ld; ++p) E.at(sm.pivot_x[p], p) = Scalar::one(A.field());

  sm.rep.side = Side::left;
  for (std::size_t p = 0; p < ld; ++p) sm.rep.degrees.push_back(vh.x_deg(i, sm.pivot_x[p]));
  for (std::size_t a = 0; a < A.dim(); ++a) {
    sm.rep.action.push_back(P * vh.l_tensor(i, a) * E);
  }

  // The radical is stable: projected action kills every kernel vector.
  for (std::size_t a = 0; a < A.dim(); ++a) {
    const Matrix pa = P * vh.l_tensor(i, a);
    for (const Vec& k : res.radical) {
      for (const Scalar& s : pa.apply(k)) {
        if (!s.is_zero()) throw Error("radical is not stable under the action");
      }
    }
  }
  return res;
}

GradedDim idempotent_weight_gdim(const SuperAlgebra& A, const ModuleRep& rep,
                                 const SparseVec& f) {
  A.require_validated();
  const Matrix m = rep.act(A, f);
  if (!(m * m == m)) throw Error("idempotent does not act idempotently on the module");
  for (std::size_t r = 0; r < rep.dim(); ++r) {
    for (std::size_t s = 0; s < rep.dim(); ++s) {
      if (!m.at(r, s).is_zero() && !(rep.degrees[r] == rep.degrees[s])) {
        throw Error("degree-zero idempotent mixes degree blocks");
      }
    }
  }
  GradedDim g;
  for (const auto& [key, idx] : degree_blocks(rep.degrees)) {
    Matrix block(A.field(), idx.size(), idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
      for (std::size_t s = 0; s < idx.size(); ++s) block.at(r, s) = m.at(idx[r], idx[s]);
    }
    const std::size_t rk = rank(block);
    if (rk > 0) {
      g += GradedDim::term(key.first, key.second, static_cast<long long>(rk));
    }
  }
  return g;
}

GradedDim e_weight_graded_dim(const SuperAlgebra& A, const VerifiedHeredity& vh, std::size_t j,
                              const ModuleRep& rep) {
  if (j >= vh.cell_count()) throw Error("cell index out of range");
  return idempotent_weight_gdim(A, rep, vh.data().cell(j).e);
}

DecompositionMatrix decomposition_matrix(const SuperAlgebra& A, const VerifiedHeredity& vh) {
  A.require_validated();
  const std::size_t cells = vh.cell_count();
  DecompositionMatrix dm;
  dm.order = vh.linear_extension();
  std::vector<std::size_t> pos(cells, 0);
  for (std::size_t p = 0; p < cells; ++p) pos[dm.order[p]] = p;

  std::vector<ModuleRep> simples;
  std::vector<ModuleRep> standards;
  for (std::size_t i = 0; i < cells; ++i) {
    simples.push_back(radical_and_simple(A, vh, i).simple.rep);
    standards.push_back(build_standard_module(A, vh, i, Side::left).rep);
  }

  // e-weight tables; N is unitriangular along the poset.
  std::vector<std::vector<GradedDim>> N(cells, std::vector<GradedDim>(cells));
  std::vector<std::vector<GradedDim>> E(cells, std::vector<GradedDim>(cells));
  for (std::size_t k = 0; k < cells; ++k) {
    for (std::size_t j = 0; j < cells; ++j) {
      N[k][j] = e_weight_graded_dim(A, vh, k, simples[j]);
      E[k][j] = e_weight_graded_dim(A, vh, k, standards[j]);
      if (!N[k][j].is_zero() && !vh.poset().leq(k, j)) {
        throw Error("simple module has weight support outside the lower interval");
      }
    }
    if (!(N[k][k] == GradedDim::one())) {
      throw Error("simple module head does not have e-weight 1 at its own cell");
    }
  }

  dm.d.assign(cells, std::vector<GradedDim>(cells));
  for (std::size_t i = 0; i < cells; ++i) {
    for (std::size_t p = cells; p-- > 0;) {
      const std::size_t k = dm.order[p];
      GradedDim acc = E[k][i];
      for (std::size_t q = p + 1; q < cells; ++q) {
        const std::size_t j = dm.order[q];
        if (!dm.d[i][j].is_zero() && !N[k][j].is_zero()) {
          acc -= dm.d[i][j] * N[k][j];
        }
      }
      dm.d[i][k] = acc;
    }
  }

  dm.diagonal_one = true;
  dm.triangular = true;
  dm.entries_nonneg = true;
  for (std::size_t i = 0; i < cells; ++i) {
    if (!(dm.d[i][i] == GradedDim::one())) dm.diagonal_one = false;
    for (std::size_t j = 0; j < cells; ++j) {
      if (!dm.d[i][j].is_zero() && !vh.poset().leq(j, i)) dm.triangular = false;
      if (!dm.d[i][j].all_coeffs_nonnegative()) dm.entries_nonneg = false;
    }
  }
  return dm;
}

StructuralReport structural_checks(const SuperAlgebra& A, const VerifiedHeredity& vh) {
  A.require_validated();
  StructuralReport rep;
  rep.ok = true;
  const Field f = A.field();
  GradedDim total;

  for (std::size_t i = 0; i < vh.cell_count(); ++i) {
    StructuralCellReport cr;
    cr.cell = i;
    const StandardModule delta = build_standard_module(A, vh, i, Side::left);
    const StandardModule delta_op = build_standard_module(A, vh, i, Side::right);
    const std::size_t xs = vh.x_count(i);
    const std::size_t ys = vh.y_count(i);

    // End(Delta) = commutant of the action matrices.
    {
      RowSpace constraints(f, xs * xs);
      for (std::size_t a = 0; a < A.dim(); ++a) {
        const Matrix& op = delta.rep.action[a];
        if (op.is_zero()) continue;
        for (std::size_t r = 0; r < xs; ++r) {
          for (std::size_t s = 0; s < xs; ++s) {
            Vec row(xs * xs, Scalar::zero(f));
            for (std::size_t t = 0; t < xs; ++t) {
              row[r * xs + t] += op.at(t, s);
              row[t * xs + s] -= op.at(r, t);
            }
            constraints.add(std::move(row));
          }
        }
      }
      cr.end_dim_one = (xs * xs - constraints.dim() == 1);
      if (!cr.end_dim_one && rep.witness.empty()) {
        rep.witness = "End of the standard module at cell " + vh.poset().label(i) +
                      " has dimension " + std::to_string(xs * xs - constraints.dim());
      }
    }

    // The cell layer is the outer product of the two standard modules:
    // left action = l tensor identity, right action = identity tensor r,
    // in B coordinates of the layer, after reduction mod higher cells.
    {
      const std::vector<bool> above = vh.z_mask(vh.poset().strictly_above(i));
      cr.layer_tensor_match = true;
      for (std::size_t a = 0; a < A.dim() && cr.layer_tensor_match; ++a) {
        for (std::size_t x = 0; x < xs && cr.layer_tensor_match; ++x) {
          for (std::size_t y = 0; y < ys; ++y) {
            const std::size_t p = vh.b_pos(i, x, y);
            Vec wl = vh.to_b(A.multiply(A.basis_element(a), vh.b_element(p)));
            Vec wr = vh.to_b(A.multiply(vh.b_element(p), A.basis_element(a)));
            mask_out(wl, above);
            mask_out(wr, above);
            bool match = true;
            for (std::size_t k = 0; k < vh.dim() && match; ++k) {
              const BIndex& t = vh.b()[k];
              const Scalar el =
                  (t.cell == i && t.y == y) ? vh.l_tensor(i, a).at(t.x, x) : Scalar::zero(f);
              const Scalar er =
                  (t.cell == i && t.x == x) ? vh.r_tensor(i, a).at(t.y, y) : Scalar::zero(f);
              if (wl[k] != el || wr[k] != er) match = false;
            }
            if (!match) {
              cr.layer_tensor_match = false;
              if (rep.witness.empty()) {
                rep.witness = "cell layer at " + vh.poset().label(i) +
                              " does not act as the module outer product under " + A.label(a);
              }
              break;
            }
          }
        }
      }
    }

    // Layer graded dimension from the actual product degrees.
    {
      GradedDim layer;
      for (std::size_t x = 0; x < xs; ++x) {
        for (std::size_t y = 0; y < ys; ++y) {
          const auto d = A.homogeneous_degree(vh.b_element(vh.b_pos(i, x, y)));
          if (!d) throw Error("heredity basis element is not homogeneous");
          layer += GradedDim::term(d->n, d->parity, 1);
        }
      }
      const GradedDim expect =
          delta.rep.graded_dimension() * delta_op.rep.graded_dimension();
      cr.layer_gdim_ok = (layer == expect);
      if (!cr.layer_gdim_ok && rep.witness.empty()) {
        rep.witness = "layer graded dimension mismatch at cell " + vh.poset().label(i);
      }
      total += layer;
    }

    rep.ok = rep.ok && cr.end_dim_one && cr.layer_tensor_match && cr.layer_gdim_ok;
    rep.cells.push_back(cr);
  }

  rep.total_gdim_ok = (total == A.graded_dimension());
  if (!rep.total_gdim_ok) {
    rep.ok = false;
    if (rep.witness.empty()) rep.witness = "cell layers do not add up to the algebra";
  }
  return rep;
}

}  // namespace bqh
