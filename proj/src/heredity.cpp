#include "bqh/heredity.hpp"

#include <algorithm>

namespace bqh {

namespace {

void mask_out(Vec& v, const std::vector<bool>& mask) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (mask[k]) v[k] = Scalar::zero(v[k].field());
  }
}

bool support_within(const Vec& v, const std::vector<bool>& allowed) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k].is_zero() && !allowed[k]) return false;
  }
  return true;
}

}  // namespace

HeredityData::HeredityData(Poset poset, std::vector<HeredityCell> cells)
    : poset_(std::move(poset)), cells_(std::move(cells)) {
  if (cells_.size() != poset_.size()) {
    throw Error("cell count does not match the poset size");
  }
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    HeredityCell& c = cells_[i];
    const std::string where = " in cell " + poset_.label(i);
    if (c.X.empty() || c.Y.empty()) throw Error("empty X or Y family" + where);
    if (c.e.is_zero()) throw Error("zero initial element" + where);
    for (const auto& x : c.X) {
      if (x.is_zero()) throw Error("zero element of X" + where);
    }
    for (const auto& y : c.Y) {
      if (y.is_zero()) throw Error("zero element of Y" + where);
    }
    const auto find = [&](const std::vector<SparseVec>& fam) -> std::optional<std::size_t> {
      for (std::size_t k = 0; k < fam.size(); ++k) {
        if (fam[k] == c.e) return k;
      }
      return std::nullopt;
    };
    const auto ex = find(c.X);
    const auto ey = find(c.Y);
    if (!ex || !ey) throw Error("initial element missing from X or Y" + where);
    c.e_in_X = *ex;
    c.e_in_Y = *ey;
  }
}

std::size_t VerifiedHeredity::b_pos(std::size_t cell, std::size_t x, std::size_t y) const {
  return offset_[cell] + x * y_count(cell) + y;
}

Vec VerifiedHeredity::to_b(const SparseVec& v) const {
  return b_inv_.apply(v.dense(dim()));
}

SparseVec VerifiedHeredity::from_b(const Vec& b_coords) const {
  return SparseVec::from_dense(b_cols_.field(), b_cols_.apply(b_coords));
}

SparseVec VerifiedHeredity::b_element(std::size_t k) const {
  if (k >= dim()) throw Error("heredity basis index out of range");
  return SparseVec::from_dense(b_cols_.field(), b_cols_.col(k));
}

std::vector<bool> VerifiedHeredity::z_mask(const std::vector<bool>& cell_mask) const {
  if (cell_mask.size() != cell_count()) throw Error("cell mask has wrong length");
  std::vector<bool> mask(dim(), false);
  for (std::size_t k = 0; k < b_.size(); ++k) mask[k] = cell_mask[b_[k].cell];
  return mask;
}

struct HeredityVerifier {
  static HeredityReport run(const SuperAlgebra& A, const HeredityData& data) {
    A.require_validated();
    HeredityReport rep;
    const auto fail = [&](std::string check, std::string detail) {
      rep.failures.push_back({std::move(check), std::move(detail)});
    };
    const Poset& poset = data.poset();
    const std::size_t n = A.dim();
    const std::size_t cells = data.cell_count();
    const Field f = A.field();

    // Preliminaries: homogeneity and the (0, 0) degree of initial elements.
    for (std::size_t i = 0; i < cells; ++i) {
      const HeredityCell& c = data.cell(i);
      const std::string lab = poset.label(i);
      const auto edeg = A.homogeneous_degree(c.e);
      if (!edeg || !(*edeg == Deg{0, 0})) {
        fail("preliminary", "initial element of cell " + lab +
                                " is not homogeneous of degree (0, 0)");
      }
      for (std::size_t k = 0; k < c.X.size(); ++k) {
        if (!A.homogeneous_degree(c.X[k])) {
          fail("preliminary", "X[" + std::to_string(k) + "] of cell " + lab +
                                  " is not nonzero homogeneous");
        }
      }
      for (std::size_t k = 0; k < c.Y.size(); ++k) {
        if (!A.homogeneous_degree(c.Y[k])) {
          fail("preliminary", "Y[" + std::to_string(k) + "] of cell " + lab +
                                  " is not nonzero homogeneous");
        }
      }
    }

    // Axiom (a): the products x y enumerate a basis.
    std::size_t total = 0;
    for (std::size_t i = 0; i < cells; ++i) {
      total += data.cell(i).X.size() * data.cell(i).Y.size();
    }
    bool have_coords = false;
    VerifiedHeredity vh{data};
    if (total != n) {
      fail("a", "product count " + std::to_string(total) + " does not match the dimension " +
                    std::to_string(n));
    } else {
      std::vector<Vec> cols;
      cols.reserve(n);
      bool products_ok = true;
      for (std::size_t i = 0; i < cells; ++i) {
        const HeredityCell& c = data.cell(i);
        vh.offset_.push_back(vh.b_.size());
        for (std::size_t x = 0; x < c.X.size(); ++x) {
          for (std::size_t y = 0; y < c.Y.size(); ++y) {
            const SparseVec prod = A.multiply(c.X[x], c.Y[y]);
            if (prod.is_zero()) {
              fail("a", "product X[" + std::to_string(x) + "] * Y[" + std::to_string(y) +
                            "] of cell " + poset.label(i) + " is zero");
              products_ok = false;
            }
            vh.b_.push_back({i, x, y});
            cols.push_back(prod.dense(n));
          }
        }
      }
      if (products_ok) {
        vh.b_cols_ = Matrix::from_cols(f, cols, n);
        auto inv = inverse(vh.b_cols_);
        if (!inv) {
          fail("a", "the products x y are linearly dependent");
        } else {
          vh.b_inv_ = std::move(*inv);
          have_coords = true;
        }
      }
    }

    // Axiom (b): triangular action with coefficients independent of the
    // second factor.  Also extracts the l/r tensors.
    if (have_coords) {
      vh.l_.assign(cells, {});
      vh.r_.assign(cells, {});
      for (std::size_t i = 0; i < cells; ++i) {
        const HeredityCell& c = data.cell(i);
        const std::vector<bool> above = vh.z_mask(poset.strictly_above(i));
        const auto masked_coords = [&](const SparseVec& v) {
          Vec w = vh.to_b(v);
          mask_out(w, above);
          return w;
        };
        std::vector<Vec> xres, yres;
        for (const auto& x : c.X) xres.push_back(masked_coords(x));
        for (const auto& y : c.Y) yres.push_back(masked_coords(y));
        const Matrix xmat = Matrix::from_cols(f, xres, n);
        const Matrix ymat = Matrix::from_cols(f, yres, n);
        vh.l_[i].assign(n, Matrix(f, c.X.size(), c.X.size()));
        vh.r_[i].assign(n, Matrix(f, c.Y.size(), c.Y.size()));
        for (std::size_t a = 0; a < n && rep.failures.size() < 64; ++a) {
          const SparseVec av = A.basis_element(a);
          for (std::size_t x = 0; x < c.X.size(); ++x) {
            const Vec w = masked_coords(A.multiply(av, c.X[x]));
            const auto sol = solve(xmat, w);
            if (!sol) {
              fail("b", "left action of " + A.label(a) + " on X[" + std::to_string(x) +
                            "] of cell " + poset.label(i) +
                            " leaves the span of X modulo the higher ideal");
              continue;
            }
            for (std::size_t xp = 0; xp < c.X.size(); ++xp) {
              vh.l_[i][a].at(xp, x) = (*sol)[xp];
            }
          }
          for (std::size_t y = 0; y < c.Y.size(); ++y) {
            const Vec w = masked_coords(A.multiply(c.Y[y], av));
            const auto sol = solve(ymat, w);
            if (!sol) {
              fail("b", "right action of " + A.label(a) + " on Y[" + std::to_string(y) +
                            "] of cell " + poset.label(i) +
                            " leaves the span of Y modulo the higher ideal");
              continue;
            }
            for (std::size_t yp = 0; yp < c.Y.size(); ++yp) {
              vh.r_[i][a].at(yp, y) = (*sol)[yp];
            }
          }
        }
      }
    }

    // Axiom (c): initial-element product identities.
    for (std::size_t i = 0; i < cells; ++i) {
      const HeredityCell& c = data.cell(i);
      const std::string lab = poset.label(i);
      for (std::size_t x = 0; x < c.X.size(); ++x) {
        if (A.multiply(c.X[x], c.e) != c.X[x]) {
          fail("c", "x e != x for X[" + std::to_string(x) + "] of cell " + lab);
        }
        const SparseVec ex = A.multiply(c.e, c.X[x]);
        const SparseVec expect = (x == c.e_in_X) ? c.X[x] : A.zero_element();
        if (ex != expect) {
          fail("c", "e x != [x = e] x for X[" + std::to_string(x) + "] of cell " + lab);
        }
      }
      for (std::size_t y = 0; y < c.Y.size(); ++y) {
        if (A.multiply(c.e, c.Y[y]) != c.Y[y]) {
          fail("c", "e y != y for Y[" + std::to_string(y) + "] of cell " + lab);
        }
        const SparseVec ye = A.multiply(c.Y[y], c.e);
        const SparseVec expect = (y == c.e_in_Y) ? c.Y[y] : A.zero_element();
        if (ye != expect) {
          fail("c", "y e != [y = e] y for Y[" + std::to_string(y) + "] of cell " + lab);
        }
      }
      // Other initial elements act on each x and y as identity or zero.
      for (std::size_t j = 0; j < cells; ++j) {
        const SparseVec& ej = data.cell(j).e;
        for (std::size_t x = 0; x < c.X.size(); ++x) {
          const SparseVec p = A.multiply(ej, c.X[x]);
          if (!p.is_zero() && p != c.X[x]) {
            fail("c", "e_" + poset.label(j) + " X[" + std::to_string(x) + "] of cell " + lab +
                          " is neither the element nor zero");
          }
        }
        for (std::size_t y = 0; y < c.Y.size(); ++y) {
          const SparseVec p = A.multiply(c.Y[y], ej);
          if (!p.is_zero() && p != c.Y[y]) {
            fail("c", "Y[" + std::to_string(y) + "] e_" + poset.label(j) + " of cell " + lab +
                          " is neither the element nor zero");
          }
        }
      }
    }

    rep.ok = rep.failures.empty();
    if (rep.ok) {
      for (std::size_t i = 0; i < cells; ++i) {
        const HeredityCell& c = data.cell(i);
        std::vector<Deg> dx, dy;
        for (const auto& x : c.X) dx.push_back(*A.homogeneous_degree(x));
        for (const auto& y : c.Y) dy.push_back(*A.homogeneous_degree(y));
        vh.x_deg_.push_back(std::move(dx));
        vh.y_deg_.push_back(std::move(dy));
      }
      vh.linext_ = poset.linear_extension();
      rep.verified = std::move(vh);
    }
    return rep;
  }
};

HeredityReport verify_heredity(const SuperAlgebra& A, const HeredityData& data) {
  return HeredityVerifier::run(A, data);
}

CellIdealResult cell_ideal(const SuperAlgebra& A, const VerifiedHeredity& vh,
                           const std::vector<std::size_t>& generators) {
  A.require_validated();
  CellIdealResult res;
  const Poset& poset = vh.poset();
  const UpperSet u = poset.upper_closure(generators);
  res.omega = u.mask;
  res.closure_changed = u.closure_changed;
  const std::vector<bool> zmask = vh.z_mask(res.omega);
  for (std::size_t k = 0; k < vh.dim(); ++k) {
    if (zmask[k]) res.b_members.push_back(k);
  }

  // The span is an ideal iff multiplying members by ambient basis elements
  // stays inside the masked coordinates.
  res.span_is_ideal = true;
  for (std::size_t k : res.b_members) {
    const SparseVec bk = vh.b_element(k);
    for (std::size_t a = 0; a < A.dim() && res.span_is_ideal; ++a) {
      const SparseVec av = A.basis_element(a);
      if (!support_within(vh.to_b(A.multiply(av, bk)), zmask)) {
        res.span_is_ideal = false;
        res.witness = "left multiple " + A.label(a) + " * B[" + std::to_string(k) +
                      "] leaves the span";
      } else if (!support_within(vh.to_b(A.multiply(bk, av)), zmask)) {
        res.span_is_ideal = false;
        res.witness = "right multiple B[" + std::to_string(k) + "] * " + A.label(a) +
                      " leaves the span";
      }
    }
    if (!res.span_is_ideal) break;
  }

  // Two-sided ideal generated by the initial elements of omega, by closure.
  RowSpace gen(A.field(), A.dim());
  std::vector<SparseVec> work;
  for (std::size_t i = 0; i < poset.size(); ++i) {
    if (!res.omega[i]) continue;
    const SparseVec& e = vh.data().cell(i).e;
    if (gen.add(e.dense(A.dim()))) work.push_back(e);
  }
  while (!work.empty()) {
    const SparseVec v = work.back();
    work.pop_back();
    for (std::size_t a = 0; a < A.dim(); ++a) {
      const SparseVec av = A.basis_element(a);
      for (const SparseVec& p : {A.multiply(av, v), A.multiply(v, av)}) {
        if (!p.is_zero() && gen.add(p.dense(A.dim()))) work.push_back(p);
      }
    }
  }
  res.matches_generated_ideal = (gen.dim() == res.b_members.size());
  if (res.matches_generated_ideal) {
    for (std::size_t k : res.b_members) {
      if (!gen.contains(vh.b_element(k).dense(A.dim()))) {
        res.matches_generated_ideal = false;
        break;
      }
    }
  }
  if (!res.matches_generated_ideal && res.witness.empty()) {
    res.witness = "span, dimension " + std::to_string(res.b_members.size()) +
                  ", differs from the ideal generated by the initial elements, dimension " +
                  std::to_string(gen.dim());
  }
  return res;
}

Vec reduce_mod_ideal(const SuperAlgebra& A, const VerifiedHeredity& vh, const SparseVec& v,
                     const std::vector<bool>& omega) {
  A.require_validated();
  if (!vh.poset().is_upper_set(omega)) {
    throw Error("reduce_mod_ideal needs an upward-closed cell mask");
  }
  Vec w = vh.to_b(v);
  mask_out(w, vh.z_mask(omega));
  return w;
}

GramForm gram_form(const SuperAlgebra& A, const VerifiedHeredity& vh, std::size_t i) {
  A.require_validated();
  if (i >= vh.cell_count()) throw Error("cell index out of range");
  const HeredityCell& c = vh.data().cell(i);
  const std::vector<bool> above = vh.z_mask(vh.poset().strictly_above(i));
  const std::size_t epos = vh.b_pos(i, c.e_in_X, c.e_in_Y);
  GramForm g{i, Matrix(A.field(), c.Y.size(), c.X.size())};
  for (std::size_t y = 0; y < c.Y.size(); ++y) {
    for (std::size_t x = 0; x < c.X.size(); ++x) {
      Vec w = vh.to_b(A.multiply(c.Y[y], c.X[x]));
      mask_out(w, above);
      for (std::size_t k = 0; k < w.size(); ++k) {
        if (k != epos && !w[k].is_zero()) {
          throw Error("corrupt heredity data: y x residue of cell " + vh.poset().label(i) +
                      " lies outside the initial element's span");
        }
      }
      g.m.at(y, x) = w[epos];
    }
  }
  return g;
}

InvolutionReport verify_anti_involution(const SuperAlgebra& A, const VerifiedHeredity& vh,
                                        const std::vector<SparseVec>& images) {
  A.require_validated();
  if (images.size() != A.dim()) throw Error("involution needs one image per basis element");
  InvolutionReport rep;
  const auto tau = [&](const SparseVec& v) {
    SparseVec out(A.field());
    for (const auto& [i, c] : v.entries()) out.add_scaled(images[i], c);
    return out;
  };

  rep.anti_multiplicative = true;
  for (std::size_t i = 0; i < A.dim() && rep.anti_multiplicative; ++i) {
    for (std::size_t j = 0; j < A.dim(); ++j) {
      if (tau(A.product(i, j)) != A.multiply(images[j], images[i])) {
        rep.anti_multiplicative = false;
        rep.witness = "tau(" + A.label(i) + " * " + A.label(j) + ") != tau(" + A.label(j) +
                      ") * tau(" + A.label(i) + ")";
        break;
      }
    }
  }

  rep.involutive = true;
  for (std::size_t i = 0; i < A.dim(); ++i) {
    if (tau(images[i]) != A.basis_element(i)) {
      rep.involutive = false;
      if (rep.witness.empty()) rep.witness = "tau^2 moves " + A.label(i);
      break;
    }
  }

  rep.degree_preserving = true;
  for (std::size_t i = 0; i < A.dim(); ++i) {
    const auto d = A.homogeneous_degree(images[i]);
    if (!d || !(*d == A.deg(i))) {
      rep.degree_preserving = false;
      if (rep.witness.empty()) rep.witness = "tau does not preserve the degree of " + A.label(i);
      break;
    }
  }

  rep.standard = true;
  rep.x_to_y.assign(vh.cell_count(), {});
  for (std::size_t i = 0; i < vh.cell_count() && rep.standard; ++i) {
    const HeredityCell& c = vh.data().cell(i);
    if (tau(c.e) != c.e) {
      rep.standard = false;
      if (rep.witness.empty()) {
        rep.witness = "tau moves the initial element of cell " + vh.poset().label(i);
      }
      break;
    }
    if (c.X.size() != c.Y.size()) {
      rep.standard = false;
      if (rep.witness.empty()) {
        rep.witness = "cell " + vh.poset().label(i) + " has |X| != |Y|";
      }
      break;
    }
    std::vector<bool> used(c.Y.size(), false);
    for (std::size_t x = 0; x < c.X.size(); ++x) {
      const SparseVec tx = tau(c.X[x]);
      bool found = false;
      for (std::size_t y = 0; y < c.Y.size(); ++y) {
        if (!used[y] && tx == c.Y[y]) {
          rep.x_to_y[i].push_back(y);
          used[y] = true;
          found = true;
          break;
        }
      }
      if (!found) {
        rep.standard = false;
        if (rep.witness.empty()) {
          rep.witness = "tau of X[" + std::to_string(x) + "] in cell " + vh.poset().label(i) +
                        " is not an unused element of Y";
        }
        break;
      }
    }
  }
  if (!rep.standard) rep.x_to_y.clear();
  return rep;
}

StandardlyBasedReport check_standardly_based(const SuperAlgebra& A,
                                             const StandardBasisCandidate& cand) {
  A.require_validated();
  StandardlyBasedReport rep;
  const Poset& poset = cand.poset;
  const std::size_t n = A.dim();
  const auto note = [&](std::string msg) {
    if (rep.problems.size() < 32) rep.problems.push_back(std::move(msg));
  };
  if (cand.b.size() != poset.size()) {
    note("candidate has " + std::to_string(cand.b.size()) + " cells for a poset of size " +
         std::to_string(poset.size()));
    return rep;
  }

  std::vector<BIndex> flat;
  std::vector<std::size_t> offset;
  std::size_t total = 0;
  for (std::size_t i = 0; i < cand.b.size(); ++i) {
    offset.push_back(total);
    const auto& cell = cand.b[i];
    if (cell.empty() || cell[0].empty()) {
      note("cell " + poset.label(i) + " has no elements");
      return rep;
    }
    const std::size_t ys = cell[0].size();
    for (std::size_t x = 0; x < cell.size(); ++x) {
      if (cell[x].size() != ys) {
        note("ragged y-family in cell " + poset.label(i));
        return rep;
      }
      for (std::size_t y = 0; y < ys; ++y) {
        if (!A.homogeneous_degree(cell[x][y])) {
          note("element (" + std::to_string(x) + ", " + std::to_string(y) + ") of cell " +
               poset.label(i) + " is not nonzero homogeneous");
        }
        flat.push_back({i, x, y});
        ++total;
      }
    }
  }
  if (!rep.problems.empty()) return rep;
  if (total != n) {
    note("candidate size " + std::to_string(total) + " does not match the dimension " +
         std::to_string(n));
    return rep;
  }

  std::vector<Vec> cols;
  cols.reserve(total);
  for (const BIndex& t : flat) cols.push_back(cand.b[t.cell][t.x][t.y].dense(n));
  const Matrix m = Matrix::from_cols(A.field(), cols, n);
  const auto minv = inverse(m);
  if (!minv) {
    note("candidate elements are linearly dependent");
    return rep;
  }
  const auto coords = [&](const SparseVec& v) { return minv->apply(v.dense(n)); };

  for (std::size_t i = 0; i < cand.b.size(); ++i) {
    const std::size_t xs = cand.b[i].size();
    const std::size_t ys = cand.b[i][0].size();
    std::vector<bool> above(total, false);
    for (std::size_t k = 0; k < total; ++k) {
      above[k] = poset.less(i, flat[k].cell);
    }
    for (std::size_t a = 0; a < n; ++a) {
      const SparseVec av = A.basis_element(a);
      // Left: coefficients along the x-family must not depend on y.
      for (std::size_t x = 0; x < xs; ++x) {
        std::optional<Vec> first;
        for (std::size_t y = 0; y < ys; ++y) {
          Vec w = coords(A.multiply(av, cand.b[i][x][y]));
          mask_out(w, above);
          Vec coeffs(xs, Scalar::zero(A.field()));
          bool clean = true;
          for (std::size_t k = 0; k < total && clean; ++k) {
            if (w[k].is_zero()) continue;
            if (flat[k].cell != i || flat[k].y != y) {
              clean = false;
            } else {
              coeffs[flat[k].x] = w[k];
            }
          }
          if (!clean) {
            note("left action of " + A.label(a) + " on cell " + poset.label(i) + " element (" +
                 std::to_string(x) + ", " + std::to_string(y) +
                 ") leaves its x-slice modulo higher cells");
            break;
          }
          if (!first) {
            first = coeffs;
          } else if (*first != coeffs) {
            note("left coefficients of " + A.label(a) + " on cell " + poset.label(i) +
                 " depend on the y-index");
            break;
          }
        }
        if (rep.problems.size() >= 32) return rep;
      }
      // Right: coefficients along the y-family must not depend on x.
      for (std::size_t y = 0; y < ys; ++y) {
        std::optional<Vec> first;
        for (std::size_t x = 0; x < xs; ++x) {
          Vec w = coords(A.multiply(cand.b[i][x][y], av));
          mask_out(w, above);
          Vec coeffs(ys, Scalar::zero(A.field()));
          bool clean = true;
          for (std::size_t k = 0; k < total && clean; ++k) {
            if (w[k].is_zero()) continue;
            if (flat[k].cell != i || flat[k].x != x) {
              clean = false;
            } else {
              coeffs[flat[k].y] = w[k];
            }
          }
          if (!clean) {
            note("right action of " + A.label(a) + " on cell " + poset.label(i) + " element (" +
                 std::to_string(x) + ", " + std::to_string(y) +
                 ") leaves its y-slice modulo higher cells");
            break;
          }
          if (!first) {
            first = coeffs;
          } else if (*first != coeffs) {
            note("right coefficients of " + A.label(a) + " on cell " + poset.label(i) +
                 " depend on the x-index");
            break;
          }
        }
        if (rep.problems.size() >= 32) return rep;
      }
    }
  }
  rep.ok = rep.problems.empty();
  return rep;
}

CellularReport check_cellular(const SuperAlgebra& A, const StandardBasisCandidate& cand,
                              const std::vector<SparseVec>& tau_images) {
  A.require_validated();
  if (tau_images.size() != A.dim()) throw Error("involution needs one image per basis element");
  CellularReport rep;
  const StandardlyBasedReport sb = check_standardly_based(A, cand);
  rep.standardly_based = sb.ok;
  if (!sb.ok) {
    rep.witness = sb.problems.empty() ? "not standardly based" : sb.problems.front();
    return rep;
  }
  const auto tau = [&](const SparseVec& v) {
    SparseVec out(A.field());
    for (const auto& [i, c] : v.entries()) out.add_scaled(tau_images[i], c);
    return out;
  };
  for (std::size_t i = 0; i < A.dim(); ++i) {
    for (std::size_t j = 0; j < A.dim(); ++j) {
      if (tau(A.product(i, j)) != A.multiply(tau_images[j], tau_images[i])) {
        rep.witness = "tau is not anti-multiplicative on (" + A.label(i) + ", " + A.label(j) + ")";
        return rep;
      }
    }
    if (tau(tau_images[i]) != A.basis_element(i)) {
      rep.witness = "tau is not an involution on " + A.label(i);
      return rep;
    }
  }
  rep.involution_compatible = true;

  rep.square_cells = true;
  for (std::size_t i = 0; i < cand.b.size(); ++i) {
    if (cand.b[i].size() != cand.b[i][0].size()) {
      rep.square_cells = false;
      rep.witness = "cell " + cand.poset.label(i) + " is not square";
      return rep;
    }
  }
  for (std::size_t i = 0; i < cand.b.size(); ++i) {
    for (std::size_t s = 0; s < cand.b[i].size(); ++s) {
      for (std::size_t t = 0; t < cand.b[i].size(); ++t) {
        if (tau(cand.b[i][s][t]) != cand.b[i][t][s]) {
          rep.witness = "tau(b[" + std::to_string(s) + "][" + std::to_string(t) + "]) != b[" +
                        std::to_string(t) + "][" + std::to_string(s) + "] in cell " +
                        cand.poset.label(i);
          return rep;
        }
      }
    }
  }
  rep.ok = true;
  return rep;
}

SplitChainReport check_split_heredity_chain(const SuperAlgebra& A, const VerifiedHeredity& vh) {
  A.require_validated();
  if (!A.unit()) throw Error("split heredity chain requires a unital algebra");
  SplitChainReport rep;
  rep.chain = vh.linear_extension();
  const std::size_t n = A.dim();
  const Field f = A.field();
  rep.ok = true;

  for (std::size_t step = 0; step < rep.chain.size(); ++step) {
    const std::size_t i = rep.chain[step];
    SplitChainStep st;
    st.cell = i;
    // Cells remaining after this step form the upper set to quotient out.
    std::vector<bool> rest(vh.cell_count(), false);
    for (std::size_t k = step + 1; k < rep.chain.size(); ++k) rest[rep.chain[k]] = true;
    const std::vector<bool> quot_mask = vh.z_mask(rest);
    std::vector<bool> cell_only(vh.cell_count(), false);
    cell_only[i] = true;
    const std::vector<bool> layer_mask = vh.z_mask(cell_only);
    std::vector<std::size_t> layer;
    for (std::size_t k = 0; k < n; ++k) {
      if (layer_mask[k]) layer.push_back(k);
    }
    const std::size_t m = layer.size();
    const std::size_t xs = vh.x_count(i);
    const std::size_t ys = vh.y_count(i);
    st.dim_ok = (m == xs * ys);

    const auto layer_coords = [&](const SparseVec& v) -> std::optional<Vec> {
      Vec w = vh.to_b(v);
      mask_out(w, quot_mask);
      Vec out(m, Scalar::zero(f));
      for (std::size_t k = 0; k < n; ++k) {
        if (w[k].is_zero()) continue;
        if (!layer_mask[k]) return std::nullopt;
        for (std::size_t t = 0; t < m; ++t) {
          if (layer[t] == k) out[t] = w[k];
        }
      }
      return out;
    };

    // J^2 = J in the quotient.
    RowSpace sq(f, m);
    bool inside = true;
    for (std::size_t p : layer) {
      for (std::size_t q : layer) {
        const auto w = layer_coords(A.multiply(vh.b_element(p), vh.b_element(q)));
        if (!w) {
          inside = false;
          rep.witness = "a product of layer elements leaves the layer at cell " +
                        vh.poset().label(i);
          break;
        }
        sq.add(*w);
      }
      if (!inside) break;
    }
    st.ideal_idempotent = inside && sq.dim() == m;

    // Commutants of the one-sided multiplication operators.
    std::vector<Matrix> lops, rops;
    bool ops_ok = true;
    for (std::size_t a = 0; a < n && ops_ok; ++a) {
      const SparseVec av = A.basis_element(a);
      Matrix la(f, m, m), ra(f, m, m);
      for (std::size_t t = 0; t < m; ++t) {
        const SparseVec bt = vh.b_element(layer[t]);
        const auto wl = layer_coords(A.multiply(av, bt));
        const auto wr = layer_coords(A.multiply(bt, av));
        if (!wl || !wr) {
          ops_ok = false;
          rep.witness = "the layer at cell " + vh.poset().label(i) +
                        " is not stable in the quotient";
          break;
        }
        for (std::size_t s = 0; s < m; ++s) {
          la.at(s, t) = (*wl)[s];
          ra.at(s, t) = (*wr)[s];
        }
      }
      if (ops_ok) {
        if (!la.is_zero()) lops.push_back(std::move(la));
        if (!ra.is_zero()) rops.push_back(std::move(ra));
      }
    }

    if (ops_ok) {
      const auto commutant_dim = [&](const std::vector<Matrix>& ops) {
        RowSpace constraints(f, m * m);
        for (const Matrix& op : ops) {
          for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t s = 0; s < m; ++s) {
              // Row of the equation (T op - op T)_{r,s} = 0 in the unknowns T_{u,v}.
              Vec row(m * m, Scalar::zero(f));
              for (std::size_t t = 0; t < m; ++t) {
                row[r * m + t] += op.at(t, s);
                row[t * m + s] -= op.at(r, t);
              }
              constraints.add(std::move(row));
            }
          }
        }
        return m * m - constraints.dim();
      };
      st.end_left_dim = commutant_dim(lops);
      st.end_right_dim = commutant_dim(rops);
      st.end_left_ok = (st.end_left_dim == ys * ys);
      st.end_right_ok = (st.end_right_dim == xs * xs);
    }

    if (!st.ok()) {
      rep.ok = false;
      if (rep.witness.empty()) {
        rep.witness = "split heredity conditions fail at cell " + vh.poset().label(i);
      }
    }
    rep.steps.push_back(st);
  }
  return rep;
}

IdealIdempotenceReport check_ideal_idempotent(const SuperAlgebra& A,
                                              const std::vector<SparseVec>& span) {
  A.require_validated();
  IdealIdempotenceReport rep;
  const std::size_t n = A.dim();
  RowSpace s(A.field(), n);
  for (const auto& v : span) s.add(v.dense(n));

  rep.is_ideal = true;
  for (const auto& v : span) {
    for (std::size_t a = 0; a < n; ++a) {
      const SparseVec av = A.basis_element(a);
      if (!s.contains(A.multiply(av, v).dense(n)) || !s.contains(A.multiply(v, av).dense(n))) {
        rep.is_ideal = false;
        rep.witness = "span is not stable under multiplication by " + A.label(a);
        break;
      }
    }
    if (!rep.is_ideal) break;
  }

  RowSpace sq(A.field(), n);
  for (const auto& v : span) {
    for (const auto& w : span) {
      sq.add(A.multiply(v, w).dense(n));
    }
  }
  rep.idempotent = (sq.dim() == s.dim());
  if (!rep.idempotent && rep.witness.empty()) {
    rep.witness = "J^2 has dimension " + std::to_string(sq.dim()) + " inside J of dimension " +
                  std::to_string(s.dim());
  }
  return rep;
}

}  // namespace bqh
