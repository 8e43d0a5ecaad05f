#include "bqh/catalog.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace bqh {

namespace {

std::string num(std::size_t n) { return std::to_string(n); }

void require_valid(SuperAlgebra& A, const char* what) {
  const ValidationReport rep = A.validate();
  if (!rep.ok) {
    throw Error(std::string(what) + " failed validation: " +
                (rep.problems.empty() ? "unknown problem" : rep.problems.front()));
  }
}

HeredityData verified_data(const SuperAlgebra& A, HeredityData data, const char* what) {
  const HeredityReport rep = verify_heredity(A, data);
  if (!rep.ok) {
    std::string detail = rep.failures.empty()
                             ? std::string("unknown failure")
                             : rep.failures.front().check + ": " + rep.failures.front().detail;
    throw Error(std::string(what) + " failed its heredity self-check (" + detail + ")");
  }
  return data;
}

SparseVec shifted(const SparseVec& v, std::size_t offset) {
  SparseVec r(v.field());
  for (const auto& [k, s] : v.entries()) r.set(k + offset, s);
  return r;
}

}  // namespace

CatalogAlgebra extended_zigzag(std::size_t l, const Field& field) {
  if (l < 1) throw Error("extended zigzag requires l >= 1");

  const auto e_lab = [](std::size_t i) { return "e" + num(i); };
  const auto a_lab = [](std::size_t t, std::size_t s) { return "a" + num(t) + "_" + num(s); };
  const auto c_lab = [](std::size_t j) { return "c" + num(j); };

  // Basis: vertices, then the two arrows of each rung, then the loops.
  std::vector<BasisInfo> infos;
  for (std::size_t i = 0; i <= l; ++i) infos.push_back({e_lab(i), Deg{0, 0}});
  for (std::size_t i = 0; i < l; ++i) {
    infos.push_back({a_lab(i + 1, i), Deg{1, 1}});
    infos.push_back({a_lab(i, i + 1), Deg{1, 1}});
  }
  for (std::size_t j = 0; j < l; ++j) infos.push_back({c_lab(j), Deg{2, 0}});

  SuperAlgebra A(field, infos);
  const Scalar one = Scalar::one(field);
  const std::size_t dim = A.dim();

  // Walk data per basis index: kind 0 vertex / 1 arrow / 2 loop, source and
  // target vertex of the underlying path.
  std::vector<int> kind(dim);
  std::vector<std::size_t> src(dim), dst(dim);
  for (std::size_t i = 0; i <= l; ++i) {
    const std::size_t k = *A.index_of(e_lab(i));
    kind[k] = 0;
    src[k] = dst[k] = i;
  }
  for (std::size_t i = 0; i < l; ++i) {
    std::size_t k = *A.index_of(a_lab(i + 1, i));
    kind[k] = 1;
    src[k] = i;
    dst[k] = i + 1;
    k = *A.index_of(a_lab(i, i + 1));
    kind[k] = 1;
    src[k] = i + 1;
    dst[k] = i;
  }
  for (std::size_t j = 0; j < l; ++j) {
    const std::size_t k = *A.index_of(c_lab(j));
    kind[k] = 2;
    src[k] = dst[k] = j;
  }

  const auto single = [&](const std::string& label) {
    SparseVec v(field);
    v.set(*A.index_of(label), one);
    return v;
  };

  // Left factor applied after the right one: composable iff src(a) = dst(b).
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      if (src[a] != dst[b]) continue;
      if (kind[a] == 0 && kind[b] == 0) {
        A.set_product(a, b, A.basis_element(a));
      } else if (kind[a] == 0 || kind[b] == 0) {
        const std::size_t other = kind[a] == 0 ? b : a;
        A.set_product(a, b, A.basis_element(other));
      } else if (kind[a] == 1 && kind[b] == 1 && src[b] == dst[a]) {
        // A two-cycle at t := dst(a); both cycles there agree, and the one
        // at the top vertex vanishes.
        const std::size_t t = dst[a];
        const std::size_t through = src[a];
        if (through == t + 1 || (t > 0 && through == t - 1 && t < l)) {
          A.set_product(a, b, single(c_lab(t)));
        }
        // through == t - 1 with t == l: zero, leave the entry absent.
      }
      // Non-cycle length-two walks and anything longer are zero.
    }
  }

  std::map<std::string, Scalar> unit_coeffs;
  for (std::size_t i = 0; i <= l; ++i) unit_coeffs[e_lab(i)] = one;
  A.set_unit(A.element_from_labels(unit_coeffs));
  require_valid(A, "extended zigzag");

  std::vector<std::string> poset_labels;
  std::vector<std::pair<std::string, std::string>> leq;
  for (std::size_t i = 0; i <= l; ++i) poset_labels.push_back(num(i));
  for (std::size_t i = 0; i < l; ++i) leq.emplace_back(num(i), num(i + 1));
  Poset poset(poset_labels, leq);

  std::vector<HeredityCell> cells;
  for (std::size_t i = 0; i <= l; ++i) {
    HeredityCell cell{single(e_lab(i)), {}, {}, 0, 0};
    cell.X.push_back(single(e_lab(i)));
    cell.Y.push_back(single(e_lab(i)));
    if (i > 0) {
      cell.X.push_back(single(a_lab(i - 1, i)));
      cell.Y.push_back(single(a_lab(i, i - 1)));
    }
    cells.push_back(std::move(cell));
  }
  HeredityData data = verified_data(A, HeredityData(std::move(poset), std::move(cells)),
                                    "extended zigzag");

  std::vector<SparseVec> tau;
  for (std::size_t k = 0; k < dim; ++k) {
    tau.push_back(kind[k] == 1 ? single(a_lab(src[k], dst[k])) : A.basis_element(k));
  }

  return CatalogAlgebra{std::move(A), std::move(data), std::move(tau)};
}

CatalogAlgebra matrix_superalgebra(std::size_t n, std::size_t m, const Field& field) {
  if (n < 1) throw Error("matrix superalgebra requires n >= 1");
  const std::size_t N = n + m;

  const auto lab = [](std::size_t r, std::size_t s) {
    return "E" + num(r) + "_" + num(s);
  };
  const auto par = [n](std::size_t t) { return t <= n ? 0 : 1; };
  const auto idx = [N](std::size_t r, std::size_t s) { return (r - 1) * N + (s - 1); };

  std::vector<BasisInfo> infos;
  for (std::size_t r = 1; r <= N; ++r) {
    for (std::size_t s = 1; s <= N; ++s) {
      infos.push_back({lab(r, s), Deg{static_cast<int>(r) - static_cast<int>(s),
                                      (par(r) + par(s)) & 1}});
    }
  }

  SuperAlgebra A(field, infos);
  const Scalar one = Scalar::one(field);
  for (std::size_t r = 1; r <= N; ++r) {
    for (std::size_t s = 1; s <= N; ++s) {
      for (std::size_t u = 1; u <= N; ++u) {
        SparseVec v(field);
        v.set(idx(r, u), one);
        A.set_product(idx(r, s), idx(s, u), std::move(v));
      }
    }
  }
  std::map<std::string, Scalar> unit_coeffs;
  for (std::size_t t = 1; t <= N; ++t) unit_coeffs[lab(t, t)] = one;
  A.set_unit(A.element_from_labels(unit_coeffs));
  require_valid(A, "matrix superalgebra");

  Poset poset({"*"}, {});
  HeredityCell cell{A.basis_element(idx(1, 1)), {}, {}, 0, 0};
  for (std::size_t r = 1; r <= N; ++r) cell.X.push_back(A.basis_element(idx(r, 1)));
  for (std::size_t s = 1; s <= N; ++s) cell.Y.push_back(A.basis_element(idx(1, s)));
  HeredityData data = verified_data(A, HeredityData(std::move(poset), {std::move(cell)}),
                                    "matrix superalgebra");

  return CatalogAlgebra{std::move(A), std::move(data), {}};
}

TruncatedZigzag truncated_zigzag(std::size_t l, const Field& field) {
  CatalogAlgebra parent = extended_zigzag(l, field);
  HeredityReport rep = verify_heredity(parent.algebra, parent.data);
  if (!rep.ok || !rep.verified) {
    throw Error("extended zigzag failed its heredity self-check");
  }
  std::map<std::string, Scalar> coeffs;
  for (std::size_t i = 0; i < l; ++i) coeffs["e" + num(i)] = Scalar::one(field);
  const SparseVec e = parent.algebra.element_from_labels(coeffs);
  const AdaptedIdempotent cls = classify_idempotent(parent.algebra, *rep.verified, e);
  Truncation t = truncate(parent.algebra, *rep.verified, cls, &parent.involution);
  return TruncatedZigzag{std::move(parent), std::move(t)};
}

// ---- quiver presentations ----

std::string PathWord::str() const {
  if (arrows.empty()) return source;
  std::string out;
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    if (k) out += '*';
    out += arrows[k];
  }
  return out;
}

namespace {

struct ArrowInfo {
  std::string label;
  std::size_t source = 0;
  std::size_t target = 0;
  Deg deg;
};

// A path of fixed length: arrow indices in product order.
struct EnumPath {
  std::vector<std::size_t> arrows;
  std::size_t source = 0;
  std::size_t target = 0;
  Deg deg;
};

std::string path_str(const std::vector<ArrowInfo>& arrows, const EnumPath& p,
                     const std::vector<std::string>& vertices) {
  PathWord w{vertices[p.source], {}};
  for (const std::size_t a : p.arrows) w.arrows.push_back(arrows[a].label);
  return w.str();
}

}  // namespace

PathAlgebraResult path_algebra_quotient(const QuiverPresentation& q, const Field& field) {
  if (q.vertices.empty()) throw ParseError("path algebra requires at least one vertex");
  if (q.path_length_cap > 24) {
    throw ParseError("path length cap exceeds 24; refusing the enumeration");
  }

  std::map<std::string, std::size_t> vert_index;
  for (std::size_t v = 0; v < q.vertices.size(); ++v) {
    const std::string& lab = q.vertices[v];
    if (lab.empty() || lab.find('*') != std::string::npos) {
      throw ParseError("vertex label is empty or contains '*': \"" + lab + "\"");
    }
    if (!vert_index.emplace(lab, v).second) {
      throw ParseError("duplicate vertex label: " + lab);
    }
  }
  std::vector<ArrowInfo> arrows;
  std::map<std::string, std::size_t> arrow_index;
  for (const QuiverArrow& a : q.arrows) {
    if (a.label.empty() || a.label.find('*') != std::string::npos) {
      throw ParseError("arrow label is empty or contains '*': \"" + a.label + "\"");
    }
    if (vert_index.count(a.label)) {
      throw ParseError("arrow label collides with a vertex: " + a.label);
    }
    const auto s = vert_index.find(a.source);
    const auto t = vert_index.find(a.target);
    if (s == vert_index.end() || t == vert_index.end()) {
      throw ParseError("arrow " + a.label + " has an unknown endpoint");
    }
    if (!arrow_index.emplace(a.label, arrows.size()).second) {
      throw ParseError("duplicate arrow label: " + a.label);
    }
    arrows.push_back({a.label, s->second, t->second, a.deg});
  }

  // Enumerate paths by length up to cap + 1; the extra layer carries the
  // finiteness check.
  const std::size_t top = q.path_length_cap + 1;
  std::vector<std::vector<EnumPath>> paths(top + 1);
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> path_index(top + 1);
  std::size_t total = 0;
  // Length-zero paths are keyed by their vertex, not their (empty) word;
  // path_index starts at length one.
  for (std::size_t v = 0; v < q.vertices.size(); ++v) {
    paths[0].push_back({{}, v, v, Deg{0, 0}});
    ++total;
  }
  for (std::size_t d = 1; d <= top; ++d) {
    for (const EnumPath& p : paths[d - 1]) {
      for (std::size_t a = 0; a < arrows.size(); ++a) {
        if (arrows[a].source != p.target) continue;
        EnumPath ext;
        ext.arrows.reserve(d);
        ext.arrows.push_back(a);
        ext.arrows.insert(ext.arrows.end(), p.arrows.begin(), p.arrows.end());
        ext.source = p.source;
        ext.target = arrows[a].target;
        ext.deg = arrows[a].deg + p.deg;
        path_index[d].emplace(ext.arrows, paths[d].size());
        paths[d].push_back(std::move(ext));
        if (++total > 20000) {
          throw Error("path enumeration exceeded 20000 paths; tighten the length cap");
        }
      }
    }
  }

  // Resolve relations into dense vectors over the paths of their length.
  struct ResolvedRelation {
    std::size_t length = 0;
    Vec coords;
  };
  std::vector<ResolvedRelation> resolved;
  for (const QuiverRelation& rel : q.relations) {
    bool have_shape = false;
    std::size_t length = 0, source = 0, target = 0;
    Deg deg;
    Vec coords;
    for (const auto& [coeff, word] : rel.terms) {
      if (coeff.field() != field) {
        throw ParseError("relation coefficient over the wrong field");
      }
      if (coeff.is_zero()) continue;
      if (word.empty()) {
        throw ParseError("relation terms must be paths of length at least one");
      }
      std::vector<std::size_t> idxs;
      for (const std::string& lab : word) {
        const auto it = arrow_index.find(lab);
        if (it == arrow_index.end()) {
          throw ParseError("unknown arrow label in relation: " + lab);
        }
        idxs.push_back(it->second);
      }
      for (std::size_t k = 0; k + 1 < idxs.size(); ++k) {
        if (arrows[idxs[k]].source != arrows[idxs[k + 1]].target) {
          throw ParseError("relation term is not a composable path at " + word[k]);
        }
      }
      const std::size_t len = idxs.size();
      const std::size_t s = arrows[idxs.back()].source;
      const std::size_t t = arrows[idxs.front()].target;
      Deg dg{0, 0};
      for (const std::size_t a : idxs) dg = dg + arrows[a].deg;
      if (!have_shape) {
        have_shape = true;
        length = len;
        source = s;
        target = t;
        deg = dg;
        if (length > top) {
          throw ParseError("relation is longer than the length cap allows");
        }
        coords.assign(paths[length].size(), Scalar::zero(field));
      } else if (len != length || s != source || t != target || dg != deg) {
        throw ParseError(
            "relation terms must be parallel paths of equal length and degree");
      }
      coords[path_index[length].at(idxs)] += coeff;
    }
    if (have_shape) resolved.push_back({length, std::move(coords)});
  }

  // Two-sided ideal spans, length by length: seed with the relations of that
  // length, then close the previous layer under one arrow on either side.
  std::vector<RowSpace> ideal;
  std::vector<std::vector<Vec>> gens(top + 1);
  for (std::size_t d = 0; d <= top; ++d) ideal.emplace_back(field, paths[d].size());
  for (const ResolvedRelation& r : resolved) {
    if (ideal[r.length].add(r.coords)) gens[r.length].push_back(r.coords);
  }
  for (std::size_t d = 1; d <= top; ++d) {
    for (const Vec& v : gens[d - 1]) {
      for (std::size_t a = 0; a < arrows.size(); ++a) {
        Vec left(paths[d].size(), Scalar::zero(field));
        Vec right(paths[d].size(), Scalar::zero(field));
        bool any_left = false, any_right = false;
        for (std::size_t k = 0; k < v.size(); ++k) {
          if (v[k].is_zero()) continue;
          const EnumPath& p = paths[d - 1][k];
          if (arrows[a].source == p.target) {
            std::vector<std::size_t> word;
            word.reserve(d);
            word.push_back(a);
            word.insert(word.end(), p.arrows.begin(), p.arrows.end());
            left[path_index[d].at(word)] += v[k];
            any_left = true;
          }
          if (arrows[a].target == p.source) {
            std::vector<std::size_t> word(p.arrows);
            word.push_back(a);
            right[path_index[d].at(word)] += v[k];
            any_right = true;
          }
        }
        if (any_left && ideal[d].add(left)) gens[d].push_back(std::move(left));
        if (any_right && ideal[d].add(right)) gens[d].push_back(std::move(right));
      }
    }
  }

  // Finite within the cap iff every path of length cap + 1 dies.
  if (ideal[top].dim() != paths[top].size()) {
    for (std::size_t k = 0; k < paths[top].size(); ++k) {
      Vec unit(paths[top].size(), Scalar::zero(field));
      unit[k] = Scalar::one(field);
      if (!ideal[top].contains(unit)) {
        throw Error("path algebra quotient is not finite-dimensional within the "
                    "length cap: path " +
                    path_str(arrows, paths[top][k], q.vertices) + " does not vanish");
      }
    }
  }

  // Monomial representatives: the non-pivot paths of each layer.
  std::vector<PathWord> monomials;
  std::vector<BasisInfo> infos;
  // (length, path index) -> basis index, for reduction results.
  std::vector<std::map<std::size_t, std::size_t>> monomial_at(top);
  for (std::size_t d = 0; d <= q.path_length_cap; ++d) {
    std::set<std::size_t> leads(ideal[d].lead_columns().begin(),
                                ideal[d].lead_columns().end());
    for (std::size_t k = 0; k < paths[d].size(); ++k) {
      if (leads.count(k)) continue;
      const EnumPath& p = paths[d][k];
      PathWord w{q.vertices[p.source], {}};
      for (const std::size_t a : p.arrows) w.arrows.push_back(arrows[a].label);
      monomial_at[d].emplace(k, monomials.size());
      infos.push_back({w.str(), p.deg});
      monomials.push_back(std::move(w));
    }
  }
  {
    std::set<std::string> seen;
    for (const BasisInfo& info : infos) {
      if (!seen.insert(info.label).second) {
        throw ParseError("monomial labels collide at " + info.label);
      }
    }
  }

  SuperAlgebra A(field, infos);
  // Basis index -> (length, path index); layers were appended in basis order.
  std::vector<std::pair<std::size_t, std::size_t>> origin;
  for (std::size_t d = 0; d < monomial_at.size(); ++d) {
    for (const auto& [k, b] : monomial_at[d]) {
      (void)b;
      origin.emplace_back(d, k);
    }
  }

  for (std::size_t i = 0; i < A.dim(); ++i) {
    const auto [di, ki] = origin[i];
    const EnumPath& pi = paths[di][ki];
    for (std::size_t j = 0; j < A.dim(); ++j) {
      const auto [dj, kj] = origin[j];
      const EnumPath& pj = paths[dj][kj];
      if (pi.source != pj.target) continue;
      const std::size_t d = di + dj;
      if (d > q.path_length_cap) continue;  // contains a vanishing subpath
      std::size_t target_path;
      if (d == 0) {
        target_path = pi.source;  // both factors are the same lazy path
      } else {
        std::vector<std::size_t> word(pi.arrows);
        word.insert(word.end(), pj.arrows.begin(), pj.arrows.end());
        target_path = path_index[d].at(word);
      }
      Vec unit(paths[d].size(), Scalar::zero(field));
      unit[target_path] = Scalar::one(field);
      const Vec res = ideal[d].residue(std::move(unit));
      SparseVec value(field);
      for (std::size_t k = 0; k < res.size(); ++k) {
        if (!res[k].is_zero()) value.set(monomial_at[d].at(k), res[k]);
      }
      if (!value.is_zero()) A.set_product(i, j, std::move(value));
    }
  }

  SparseVec unit(field);
  for (std::size_t v = 0; v < q.vertices.size(); ++v) {
    unit.set(monomial_at[0].at(v), Scalar::one(field));
  }
  A.set_unit(std::move(unit));
  require_valid(A, "path algebra quotient");
  return PathAlgebraResult{std::move(A), std::move(monomials)};
}

QuiverPresentation zigzag_presentation(std::size_t l, const Field& field) {
  if (l < 1) throw Error("extended zigzag requires l >= 1");
  const auto a_lab = [](std::size_t t, std::size_t s) { return "a" + num(t) + "_" + num(s); };
  const Scalar one = Scalar::one(field);

  QuiverPresentation q;
  q.path_length_cap = 2;
  for (std::size_t i = 0; i <= l; ++i) q.vertices.push_back(num(i));
  for (std::size_t i = 0; i < l; ++i) {
    q.arrows.push_back({a_lab(i + 1, i), num(i), num(i + 1), Deg{1, 1}});
    q.arrows.push_back({a_lab(i, i + 1), num(i + 1), num(i), Deg{1, 1}});
  }

  // Non-cycle length-two walks vanish.
  for (const QuiverArrow& f : q.arrows) {
    for (const QuiverArrow& g : q.arrows) {
      if (f.source != g.target || f.target == g.source) continue;
      q.relations.push_back({{{one, {f.label, g.label}}}});
    }
  }
  // The two cycles at an interior vertex agree.
  for (std::size_t j = 1; j < l; ++j) {
    q.relations.push_back({{{one, {a_lab(j, j + 1), a_lab(j + 1, j)}},
                            {-one, {a_lab(j, j - 1), a_lab(j - 1, j)}}}});
  }
  // The cycle at the top vertex vanishes.
  q.relations.push_back({{{one, {a_lab(l, l - 1), a_lab(l - 1, l)}}}});
  return q;
}

CatalogAlgebra direct_sum(const CatalogAlgebra& a, const CatalogAlgebra& b) {
  const SuperAlgebra& A = a.algebra;
  const SuperAlgebra& B = b.algebra;
  if (A.field() != B.field()) throw Error("direct sum requires matching fields");
  if (!A.unit() || !B.unit()) throw Error("direct sum requires unital summands");

  bool collide = false;
  {
    std::set<std::string> labels;
    for (const BasisInfo& info : A.basis()) labels.insert(info.label);
    for (std::size_t i = 0; i < a.data.poset().size(); ++i) {
      labels.insert(a.data.poset().label(i));
    }
    for (const BasisInfo& info : B.basis()) collide |= labels.count(info.label) > 0;
    for (std::size_t i = 0; i < b.data.poset().size(); ++i) {
      collide |= labels.count(b.data.poset().label(i)) > 0;
    }
  }
  const std::string pa = collide ? "L:" : "";
  const std::string pb = collide ? "R:" : "";

  std::vector<BasisInfo> infos;
  for (const BasisInfo& info : A.basis()) infos.push_back({pa + info.label, info.deg});
  for (const BasisInfo& info : B.basis()) infos.push_back({pb + info.label, info.deg});
  const std::size_t off = A.dim();

  SuperAlgebra S(A.field(), infos);
  for (std::size_t i = 0; i < A.dim(); ++i) {
    for (std::size_t j = 0; j < A.dim(); ++j) {
      const SparseVec& p = A.product(i, j);
      if (!p.is_zero()) S.set_product(i, j, p);
    }
  }
  for (std::size_t i = 0; i < B.dim(); ++i) {
    for (std::size_t j = 0; j < B.dim(); ++j) {
      const SparseVec& p = B.product(i, j);
      if (!p.is_zero()) S.set_product(off + i, off + j, shifted(p, off));
    }
  }
  S.set_unit(*A.unit() + shifted(*B.unit(), off));
  require_valid(S, "direct sum");

  std::vector<std::string> poset_labels;
  std::vector<std::pair<std::string, std::string>> leq;
  const Poset& PA = a.data.poset();
  const Poset& PB = b.data.poset();
  for (std::size_t i = 0; i < PA.size(); ++i) poset_labels.push_back(pa + PA.label(i));
  for (std::size_t i = 0; i < PB.size(); ++i) poset_labels.push_back(pb + PB.label(i));
  for (std::size_t i = 0; i < PA.size(); ++i) {
    for (std::size_t j = 0; j < PA.size(); ++j) {
      if (i != j && PA.leq(i, j)) leq.emplace_back(pa + PA.label(i), pa + PA.label(j));
    }
  }
  for (std::size_t i = 0; i < PB.size(); ++i) {
    for (std::size_t j = 0; j < PB.size(); ++j) {
      if (i != j && PB.leq(i, j)) leq.emplace_back(pb + PB.label(i), pb + PB.label(j));
    }
  }
  Poset poset(poset_labels, leq);

  std::vector<HeredityCell> cells;
  for (std::size_t i = 0; i < a.data.cell_count(); ++i) cells.push_back(a.data.cell(i));
  for (std::size_t i = 0; i < b.data.cell_count(); ++i) {
    const HeredityCell& c = b.data.cell(i);
    HeredityCell moved{shifted(c.e, off), {}, {}, c.e_in_X, c.e_in_Y};
    for (const SparseVec& x : c.X) moved.X.push_back(shifted(x, off));
    for (const SparseVec& y : c.Y) moved.Y.push_back(shifted(y, off));
    cells.push_back(std::move(moved));
  }
  HeredityData data = verified_data(S, HeredityData(std::move(poset), std::move(cells)),
                                    "direct sum");

  std::vector<SparseVec> tau;
  if (!a.involution.empty() && !b.involution.empty()) {
    for (const SparseVec& img : a.involution) tau.push_back(img);
    for (const SparseVec& img : b.involution) tau.push_back(shifted(img, off));
  }
  return CatalogAlgebra{std::move(S), std::move(data), std::move(tau)};
}

}  // namespace bqh
