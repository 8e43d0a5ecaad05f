#include "bqh/io.hpp"

#include <nlohmann/json.hpp>

#include <exception>
#include <map>
#include <utility>

namespace bqh {

namespace {

using nlohmann::json;

constexpr const char* kFormat = "bqh-algebra-1";

json sparse_to_json(const SuperAlgebra& A, const SparseVec& v) {
  json o = json::object();
  for (const auto& [k, s] : v.entries()) o[A.label(k)] = s.str();
  return o;
}

json deg_to_json(Deg d) { return json::array({d.n, d.parity}); }

struct Reader {
  const SuperAlgebra* A = nullptr;
  Field field;

  std::size_t index(const json& j, const char* where) const {
    if (!j.is_string()) throw ParseError(std::string(where) + ": label must be a string");
    const auto idx = A->index_of(j.get<std::string>());
    if (!idx) {
      throw ParseError(std::string(where) + ": unknown basis label " + j.dump());
    }
    return *idx;
  }

  SparseVec sparse(const json& j, const char* where) const {
    if (!j.is_object()) {
      throw ParseError(std::string(where) + ": expected an object of label -> scalar");
    }
    SparseVec v(field);
    for (const auto& [lab, val] : j.items()) {
      const auto idx = A->index_of(lab);
      if (!idx) throw ParseError(std::string(where) + ": unknown basis label \"" + lab + "\"");
      if (!val.is_string()) {
        throw ParseError(std::string(where) + ": scalar must be a string at \"" + lab + "\"");
      }
      v.set(*idx, Scalar::parse(field, val.get<std::string>()));
    }
    return v;
  }
};

Deg deg_from_json(const json& j, const char* where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
      !j[1].is_number_integer()) {
    throw ParseError(std::string(where) + ": degree must be [q-degree, parity]");
  }
  const int parity = j[1].get<int>();
  if (parity != 0 && parity != 1) {
    throw ParseError(std::string(where) + ": parity must be 0 or 1");
  }
  return Deg{j[0].get<int>(), parity};
}

}  // namespace

std::string serialize_algebra(const AlgebraBundle& bundle) {
  const SuperAlgebra& A = bundle.algebra;
  json doc;
  doc["format"] = kFormat;
  doc["field"] = A.field().str();

  json basis = json::array();
  for (const BasisInfo& info : A.basis()) {
    basis.push_back(json{{"label", info.label}, {"degree", deg_to_json(info.deg)}});
  }
  doc["basis"] = std::move(basis);

  json products = json::object();
  for (std::size_t i = 0; i < A.dim(); ++i) {
    json row = json::object();
    for (std::size_t j = 0; j < A.dim(); ++j) {
      const SparseVec& p = A.product(i, j);
      if (!p.is_zero()) row[A.label(j)] = sparse_to_json(A, p);
    }
    if (!row.empty()) products[A.label(i)] = std::move(row);
  }
  doc["products"] = std::move(products);

  if (A.unit()) doc["unit"] = sparse_to_json(A, *A.unit());

  if (bundle.heredity) {
    const HeredityData& h = *bundle.heredity;
    const Poset& p = h.poset();
    json labels = json::array();
    for (std::size_t i = 0; i < p.size(); ++i) labels.push_back(p.label(i));
    json leq = json::array();
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = 0; j < p.size(); ++j) {
        if (i != j && p.leq(i, j)) leq.push_back(json::array({p.label(i), p.label(j)}));
      }
    }
    json cells = json::array();
    for (std::size_t i = 0; i < h.cell_count(); ++i) {
      const HeredityCell& c = h.cell(i);
      json x = json::array(), y = json::array();
      for (const SparseVec& v : c.X) x.push_back(sparse_to_json(A, v));
      for (const SparseVec& v : c.Y) y.push_back(sparse_to_json(A, v));
      cells.push_back(json{{"cell", p.label(i)},
                           {"e", sparse_to_json(A, c.e)},
                           {"X", std::move(x)},
                           {"Y", std::move(y)}});
    }
    doc["heredity"] = json{{"poset", json{{"labels", std::move(labels)},
                                          {"less_or_equal", std::move(leq)}}},
                           {"cells", std::move(cells)}};
  }

  if (!bundle.involution.empty()) {
    json tau = json::object();
    for (std::size_t k = 0; k < A.dim(); ++k) {
      tau[A.label(k)] = sparse_to_json(A, bundle.involution[k]);
    }
    doc["involution"] = std::move(tau);
  }

  if (bundle.bigrading) {
    json big = json::object();
    for (std::size_t k = 0; k < A.dim(); ++k) {
      const Bigrade& g = (*bundle.bigrading)[k];
      big[A.label(k)] = json::array({g.eps, g.delta});
    }
    doc["bigrading"] = std::move(big);
  }

  return doc.dump(2) + "\n";
}

AlgebraBundle parse_algebra(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }

  try {
    if (!doc.is_object()) throw ParseError("document must be a JSON object");
    if (!doc.contains("format") || !doc["format"].is_string() ||
        doc["format"].get<std::string>() != kFormat) {
      throw ParseError(std::string("unsupported format; expected \"") + kFormat + "\"");
    }
    if (!doc.contains("field") || !doc["field"].is_string()) {
      throw ParseError("missing field descriptor");
    }
    const Field field = Field::parse(doc["field"].get<std::string>());

    if (!doc.contains("basis") || !doc["basis"].is_array() || doc["basis"].empty()) {
      throw ParseError("basis must be a nonempty array");
    }
    std::vector<BasisInfo> infos;
    for (const json& entry : doc["basis"]) {
      if (!entry.is_object() || !entry.contains("label") || !entry["label"].is_string() ||
          !entry.contains("degree")) {
        throw ParseError("each basis entry needs a label and a degree");
      }
      infos.push_back({entry["label"].get<std::string>(),
                       deg_from_json(entry["degree"], "basis")});
    }

    SuperAlgebraOptions opts;
    SuperAlgebra A(field, std::move(infos), opts);
    Reader rd{&A, field};

    if (doc.contains("products")) {
      const json& products = doc["products"];
      if (!products.is_object()) throw ParseError("products must be an object");
      for (const auto& [li, row] : products.items()) {
        const auto i = A.index_of(li);
        if (!i) throw ParseError("products: unknown basis label \"" + li + "\"");
        if (!row.is_object()) throw ParseError("products row must be an object");
        for (const auto& [lj, val] : row.items()) {
          const auto j = A.index_of(lj);
          if (!j) throw ParseError("products: unknown basis label \"" + lj + "\"");
          A.set_product(*i, *j, rd.sparse(val, "products"));
        }
      }
    }
    if (doc.contains("unit")) A.set_unit(rd.sparse(doc["unit"], "unit"));

    AlgebraBundle bundle{std::move(A), std::nullopt, {}, std::nullopt};
    const SuperAlgebra& AA = bundle.algebra;
    rd.A = &AA;

    if (doc.contains("heredity")) {
      const json& h = doc["heredity"];
      if (!h.is_object() || !h.contains("poset") || !h.contains("cells")) {
        throw ParseError("heredity needs poset and cells");
      }
      const json& pj = h["poset"];
      if (!pj.is_object() || !pj.contains("labels") || !pj["labels"].is_array()) {
        throw ParseError("heredity poset needs a labels array");
      }
      std::vector<std::string> labels;
      for (const json& lab : pj["labels"]) {
        if (!lab.is_string()) throw ParseError("poset labels must be strings");
        labels.push_back(lab.get<std::string>());
      }
      std::vector<std::pair<std::string, std::string>> leq;
      if (pj.contains("less_or_equal")) {
        if (!pj["less_or_equal"].is_array()) {
          throw ParseError("less_or_equal must be an array of pairs");
        }
        for (const json& pair : pj["less_or_equal"]) {
          if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
              !pair[1].is_string()) {
            throw ParseError("less_or_equal entries must be [lower, upper] labels");
          }
          leq.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
        }
      }
      Poset poset(labels, leq);

      if (!h["cells"].is_array() || h["cells"].size() != poset.size()) {
        throw ParseError("heredity needs exactly one cell per poset element");
      }
      std::vector<std::optional<HeredityCell>> slots(poset.size());
      for (const json& cj : h["cells"]) {
        if (!cj.is_object() || !cj.contains("cell") || !cj["cell"].is_string() ||
            !cj.contains("e") || !cj.contains("X") || !cj.contains("Y")) {
          throw ParseError("each cell needs cell, e, X, and Y");
        }
        const auto at = poset.index_of(cj["cell"].get<std::string>());
        if (!at) {
          throw ParseError("cell label " + cj["cell"].dump() + " is not in the poset");
        }
        if (slots[*at]) {
          throw ParseError("duplicate cell " + cj["cell"].dump());
        }
        HeredityCell cell{rd.sparse(cj["e"], "cell e"), {}, {}, 0, 0};
        if (!cj["X"].is_array() || !cj["Y"].is_array()) {
          throw ParseError("cell X and Y must be arrays");
        }
        for (const json& v : cj["X"]) cell.X.push_back(rd.sparse(v, "cell X"));
        for (const json& v : cj["Y"]) cell.Y.push_back(rd.sparse(v, "cell Y"));
        slots[*at] = std::move(cell);
      }
      std::vector<HeredityCell> cells;
      for (auto& slot : slots) cells.push_back(std::move(*slot));
      bundle.heredity.emplace(std::move(poset), std::move(cells));
    }

    if (doc.contains("involution")) {
      const json& tau = doc["involution"];
      if (!tau.is_object() || tau.size() != AA.dim()) {
        throw ParseError("involution must give an image for every basis element");
      }
      std::vector<SparseVec> images(AA.dim(), SparseVec(field));
      for (const auto& [lab, val] : tau.items()) {
        const auto idx = AA.index_of(lab);
        if (!idx) throw ParseError("involution: unknown basis label \"" + lab + "\"");
        images[*idx] = rd.sparse(val, "involution");
      }
      bundle.involution = std::move(images);
    }

    if (doc.contains("bigrading")) {
      const json& big = doc["bigrading"];
      if (!big.is_object() || big.size() != AA.dim()) {
        throw ParseError("bigrading must give a bigrade for every basis element");
      }
      std::vector<Bigrade> grades(AA.dim());
      for (const auto& [lab, val] : big.items()) {
        const auto idx = AA.index_of(lab);
        if (!idx) throw ParseError("bigrading: unknown basis label \"" + lab + "\"");
        if (!val.is_array() || val.size() != 2 || !val[0].is_number_integer() ||
            !val[1].is_number_integer()) {
          throw ParseError("bigrading: expected [eps, delta] at \"" + lab + "\"");
        }
        const int eps = val[0].get<int>();
        const int delta = val[1].get<int>();
        if ((eps != 0 && eps != 1) || (delta != 0 && delta != 1)) {
          throw ParseError("bigrading: components must be 0 or 1 at \"" + lab + "\"");
        }
        grades[*idx] = Bigrade{eps, delta};
      }
      bundle.bigrading = std::move(grades);
    }

    return bundle;
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    // Structural constructors signal malformed input here.
    throw ParseError(e.what());
  } catch (const std::exception& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
}

}  // namespace bqh
