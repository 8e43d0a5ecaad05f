// Command-line surface: validation, heredity verification, Gram forms,
// decomposition tables, truncation, conformity, Morita reduction, and the
// built-in generators, over the canonical description format.
//
// Exit codes: 0 all checks pass, 1 a verification failed, 2 malformed input
// (unreadable file, bad document, unknown flags or labels).

#include "bqh/basicize.hpp"
#include "bqh/catalog.hpp"
#include "bqh/io.hpp"
#include "bqh/standard_modules.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace bqh;

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path);
  ss << in.rdbuf();
  return ss.str();
}

AlgebraBundle load(const std::string& path) { return parse_algebra(read_input(path)); }

std::string show(const SuperAlgebra& A, const SparseVec& v) {
  if (v.is_zero()) return "0";
  std::string out;
  for (const auto& [k, s] : v.entries()) {
    if (!out.empty()) out += " + ";
    if (s.is_one()) {
      out += A.label(k);
    } else {
      out += s.str() + "*" + A.label(k);
    }
  }
  return out;
}

bool print_validation(const SuperAlgebra& A) {
  const ValidationReport rep = A.validate();
  std::cout << "valid: " << (rep.ok ? "yes" : "no") << "\n";
  for (const std::string& p : rep.problems) std::cout << "problem: " << p << "\n";
  return rep.ok;
}

// Validates the algebra and verifies the heredity block, printing failures;
// disengaged on any failure.
std::optional<VerifiedHeredity> get_verified(const AlgebraBundle& b) {
  if (!b.heredity) throw ParseError("description has no heredity block");
  if (!print_validation(b.algebra)) return std::nullopt;
  HeredityReport rep = verify_heredity(b.algebra, *b.heredity);
  std::cout << "heredity: " << (rep.ok ? "ok" : "failed") << "\n";
  for (const HeredityFailure& f : rep.failures) {
    std::cout << "failure[" << f.check << "]: " << f.detail << "\n";
  }
  return std::move(rep.verified);
}

SparseVec parse_element_expr(const SuperAlgebra& A, const std::string& expr) {
  SparseVec v(A.field());
  std::size_t pos = 0;
  while (pos <= expr.size()) {
    std::size_t next = expr.find('+', pos);
    if (next == std::string::npos) next = expr.size();
    std::string term = expr.substr(pos, next - pos);
    term.erase(std::remove_if(term.begin(), term.end(),
                              [](unsigned char c) { return std::isspace(c); }),
               term.end());
    if (term.empty()) throw ParseError("empty term in element expression");
    Scalar coeff = Scalar::one(A.field());
    std::string label = term;
    const std::size_t star = term.find('*');
    if (star != std::string::npos) {
      // "<scalar>*<label>" when the prefix parses; otherwise the whole term
      // is a label (path monomial labels contain '*' themselves).
      try {
        coeff = Scalar::parse(A.field(), term.substr(0, star));
        label = term.substr(star + 1);
      } catch (const ParseError&) {
      }
    }
    const auto idx = A.index_of(label);
    if (!idx) throw ParseError("unknown basis label in expression: \"" + label + "\"");
    v.add(*idx, coeff);
    if (next == expr.size()) break;
    pos = next + 1;
  }
  return v;
}

Field parse_field_flag(const std::string& text) {
  std::string low;
  for (const char c : text) low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (low == "q") return Field::rationals();
  if (low.rfind("gf:", 0) == 0) {
    try {
      return Field::gf(static_cast<std::uint32_t>(std::stoul(low.substr(3))));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError("bad field flag: " + text);
    }
  }
  return Field::parse(text);
}

void print_bundle(const AlgebraBundle& b) { std::cout << serialize_algebra(b); }

int run_validate(const std::string& file) {
  const AlgebraBundle b = load(file);
  std::cout << "field: " << b.algebra.field().str() << "\n";
  std::cout << "dimension: " << b.algebra.dim() << "\n";
  return print_validation(b.algebra) ? 0 : 1;
}

int run_verify(const std::string& file) {
  const AlgebraBundle b = load(file);
  const auto vh = get_verified(b);
  if (!vh) return 1;
  std::cout << "cells: " << vh->cell_count() << "\n";
  if (!b.involution.empty()) {
    const InvolutionReport rep = verify_anti_involution(b.algebra, *vh, b.involution);
    std::cout << "involution: " << (rep.ok() ? "standard" : "not standard") << "\n";
    if (!rep.witness.empty()) std::cout << "involution witness: " << rep.witness << "\n";
    if (!rep.ok()) return 1;
  }
  return 0;
}

int run_gram(const std::string& file, const std::string& cell) {
  const AlgebraBundle b = load(file);
  const auto vh = get_verified(b);
  if (!vh) return 1;
  auto idx = vh->poset().index_of(cell);
  if (!idx) {
    try {
      const std::size_t k = std::stoul(cell);
      if (k < vh->cell_count()) idx = k;
    } catch (const std::exception&) {
    }
  }
  if (!idx) throw ParseError("unknown cell: " + cell);
  const GramForm g = gram_form(b.algebra, *vh, *idx);
  std::cout << "cell: " << vh->poset().label(*idx) << "\n";
  for (std::size_t r = 0; r < g.m.rows(); ++r) {
    std::cout << "[";
    for (std::size_t c = 0; c < g.m.cols(); ++c) {
      if (c) std::cout << ", ";
      std::cout << g.m.at(r, c).str();
    }
    std::cout << "]\n";
  }
  std::cout << "rank: " << rank(g.m) << "\n";
  return 0;
}

int run_decomp(const std::string& file) {
  const AlgebraBundle b = load(file);
  const auto vh = get_verified(b);
  if (!vh) return 1;
  const DecompositionMatrix dm = decomposition_matrix(b.algebra, *vh);
  std::cout << "order:";
  for (const std::size_t i : dm.order) std::cout << " " << vh->poset().label(i);
  std::cout << "\n";
  for (const std::size_t i : dm.order) {
    std::cout << "[";
    bool first = true;
    for (const std::size_t j : dm.order) {
      if (!first) std::cout << ", ";
      first = false;
      std::cout << dm.d[i][j].str();
    }
    std::cout << "]\n";
  }
  std::cout << "unitriangular: " << (dm.diagonal_one && dm.triangular ? "yes" : "no")
            << "\n";
  std::cout << "nonnegative: " << (dm.entries_nonneg ? "yes" : "no") << "\n";
  return dm.ok() ? 0 : 1;
}

int run_info(const std::string& file) {
  const AlgebraBundle b = load(file);
  const SuperAlgebra& A = b.algebra;
  std::cout << "field: " << A.field().str() << "\n";
  std::cout << "dimension: " << A.dim() << "\n";
  std::cout << "unital: " << (A.unit() ? "yes" : "no") << "\n";
  const bool valid = print_validation(A);
  if (valid) {
    std::cout << "graded dimension: " << A.graded_dimension().str() << "\n";
  }
  if (b.heredity) {
    const Poset& p = b.heredity->poset();
    std::cout << "cells:";
    for (std::size_t i = 0; i < p.size(); ++i) {
      std::cout << " " << p.label(i) << "(|X|=" << b.heredity->cell(i).X.size()
                << ",|Y|=" << b.heredity->cell(i).Y.size() << ")";
    }
    std::cout << "\n";
  } else {
    std::cout << "cells: none\n";
  }
  std::cout << "involution: " << (b.involution.empty() ? "absent" : "present") << "\n";
  std::cout << "bigrading: " << (b.bigrading ? "present" : "absent") << "\n";
  return 0;
}

int run_truncate(const std::string& file, const std::string& expr, bool use_involution) {
  const AlgebraBundle b = load(file);
  const auto vh = get_verified(b);
  if (!vh) return 1;
  if (use_involution && b.involution.empty()) {
    throw ParseError("description has no involution block");
  }
  const SparseVec e = parse_element_expr(b.algebra, expr);
  const AdaptedIdempotent cls = classify_idempotent(b.algebra, *vh, e);
  std::cout << "adapted: " << (cls.adapted ? "yes" : "no") << "\n";
  std::cout << "strongly adapted: " << (cls.strongly_adapted ? "yes" : "no") << "\n";
  for (const std::string& p : cls.problems) std::cout << "problem: " << p << "\n";
  if (!cls.adapted) return 1;
  std::cout << "surviving cells:";
  for (std::size_t i = 0; i < cls.ibar.size(); ++i) {
    if (cls.ibar[i]) std::cout << " " << vh->poset().label(i);
  }
  std::cout << "\n";
  const Truncation t =
      truncate(b.algebra, *vh, cls, use_involution ? &b.involution : nullptr);
  if (!t.algebra) return 1;
  std::cout << "truncated dimension: " << t.algebra->dim() << "\n";
  std::cout << "standardly based: " << (t.standardly_based ? "yes" : "no") << "\n";
  for (const std::string& p : t.standard_basis_problems) {
    std::cout << "problem: " << p << "\n";
  }
  if (cls.strongly_adapted) {
    std::cout << "induced heredity: " << (t.verified ? "ok" : "failed") << "\n";
  }
  for (const std::string& n : t.heredity_notes) std::cout << "note: " << n << "\n";
  if (t.cellular) {
    std::cout << "cellular: " << (*t.cellular ? "yes" : "no") << "\n";
  }
  for (const std::string& n : t.cellular_notes) std::cout << "note: " << n << "\n";
  std::cout << "surviving simples:";
  for (const std::size_t i : surviving_simples(b.algebra, *vh, cls)) {
    std::cout << " " << vh->poset().label(i);
  }
  std::cout << "\n";
  AlgebraBundle out{*t.algebra, t.heredity, {}, std::nullopt};
  print_bundle(out);
  bool ok = t.standardly_based;
  if (cls.strongly_adapted) ok = ok && t.verified.has_value();
  if (use_involution) ok = ok && t.cellular && *t.cellular;
  return ok ? 0 : 1;
}

int run_conform(const std::string& file) {
  const AlgebraBundle b = load(file);
  const auto vh = get_verified(b);
  if (!vh) return 1;
  const ConformityReport cr = conformity_check(b.algebra, *vh);
  std::cout << "even subalgebra closed: " << (cr.closed ? "yes" : "no") << "\n";
  if (cr.algebra) {
    std::cout << "even subalgebra dimension: " << cr.algebra->dim() << "\n";
  }
  std::cout << "even subalgebra unital: " << (cr.unital ? "yes" : "no") << "\n";
  std::cout << "conforming: " << (cr.ok() ? "yes" : "no") << "\n";
  for (const std::string& p : cr.problems) std::cout << "problem: " << p << "\n";
  bool ok = cr.ok();
  if (b.bigrading) {
    const Z2Z2Report z = z2z2_check(b.algebra, *b.bigrading, *vh);
    std::cout << "bigrading multiplicative: " << (z.multiplicative ? "yes" : "no") << "\n";
    std::cout << "bigrading refines parity: " << (z.refines_parity ? "yes" : "no") << "\n";
    std::cout << "families placed: " << (z.families_placed ? "yes" : "no") << "\n";
    std::cout << "bigrading conforming: " << (z.ok() ? "yes" : "no") << "\n";
    std::cout << "cross validated: " << (z.cross_validated ? "yes" : "no") << "\n";
    for (const std::string& p : z.problems) std::cout << "problem: " << p << "\n";
    ok = ok && z.ok() && z.cross_validated;
  }
  return ok ? 0 : 1;
}

int run_basicize(const std::string& file) {
  const AlgebraBundle b = load(file);
  const auto vh = get_verified(b);
  if (!vh) return 1;
  const BasicizationResult r = basicize(b.algebra, *vh);
  std::cout << "basicize: " << (r.ok ? "ok" : "failed") << "\n";
  for (const std::string& p : r.problems) std::cout << "problem: " << p << "\n";
  const Poset& poset = vh->poset();
  for (std::size_t i = 0; i < r.e_prime.size(); ++i) {
    std::cout << "e'[" << poset.label(i) << "] = " << show(b.algebra, r.e_prime[i])
              << "\n";
  }
  std::cout << "f = " << show(b.algebra, r.f) << "\n";
  std::cout << "f strongly adapted: " << (r.f_strongly_adapted ? "yes" : "no") << "\n";
  std::cout << "even subalgebra unchanged: " << (r.same_subalgebra ? "yes" : "no") << "\n";
  std::cout << "reduced even subalgebra basic: " << (r.suba_basic ? "yes" : "no") << "\n";
  std::cout << "odd part in radical: " << (r.odd_in_radical ? "yes" : "no") << "\n";
  if (r.truncated_basic) {
    std::cout << "reduced algebra basic: " << (*r.truncated_basic ? "yes" : "no") << "\n";
  }
  for (const FunctorAuditRow& row : r.audit.rows) {
    std::cout << "audit " << poset.label(row.cell)
              << ": standard " << (row.delta_ok ? "ok" : "mismatch")
              << " (" << row.f_delta.str() << ")"
              << ", simple " << (row.simple_ok ? "ok" : "mismatch")
              << " (" << row.f_simple.str() << ")\n";
  }
  std::cout << "decomposition matrices equal: "
            << (r.audit.decomposition_equal ? "yes" : "no") << "\n";
  if (r.by_f && r.by_f->algebra) {
    std::cout << "reduced dimension: " << r.by_f->algebra->dim() << "\n";
    AlgebraBundle out{*r.by_f->algebra, r.by_f->heredity, {}, std::nullopt};
    print_bundle(out);
  }
  return r.ok ? 0 : 1;
}

int run_gen_zigzag(std::size_t l, const std::string& field_flag) {
  const CatalogAlgebra c = extended_zigzag(l, parse_field_flag(field_flag));
  print_bundle(AlgebraBundle{c.algebra, c.data, c.involution, std::nullopt});
  return 0;
}

int run_gen_matrix(std::size_t n, std::size_t m, const std::string& field_flag) {
  const CatalogAlgebra c = matrix_superalgebra(n, m, parse_field_flag(field_flag));
  print_bundle(AlgebraBundle{c.algebra, c.data, c.involution, std::nullopt});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact structure-constant engine for based graded superalgebras"};
  app.require_subcommand(1);
  int rc = 0;

  std::string file;
  std::string cell;
  std::string expr;
  bool use_involution = false;
  std::size_t gen_l = 1, gen_n = 1, gen_m = 0;
  std::string field_flag = "q";

  CLI::App* validate = app.add_subcommand("validate", "check the structure tables");
  validate->add_option("file", file, "description file, or - for stdin")->required();
  validate->callback([&] { rc = run_validate(file); });

  CLI::App* verify = app.add_subcommand("verify", "verify the heredity axioms");
  verify->add_option("file", file)->required();
  verify->callback([&] { rc = run_verify(file); });

  CLI::App* gram = app.add_subcommand("gram", "print a cell's Gram form");
  gram->add_option("file", file)->required();
  gram->add_option("--cell", cell, "cell label")->required();
  gram->callback([&] { rc = run_gram(file, cell); });

  CLI::App* decomp = app.add_subcommand("decomp", "graded decomposition matrix");
  decomp->add_option("file", file)->required();
  decomp->callback([&] { rc = run_decomp(file); });

  CLI::App* truncate = app.add_subcommand("truncate", "truncate by an idempotent");
  truncate->add_option("file", file)->required();
  truncate->add_option("--idempotent", expr, "sum of scaled basis labels")->required();
  truncate->add_flag("--involution", use_involution, "use the description's involution");
  truncate->callback([&] { rc = run_truncate(file, expr, use_involution); });

  CLI::App* conform = app.add_subcommand("conform", "even-even conformity check");
  conform->add_option("file", file)->required();
  conform->callback([&] { rc = run_conform(file); });

  CLI::App* basicize_cmd = app.add_subcommand("basicize", "Morita-reduce to a basic algebra");
  basicize_cmd->add_option("file", file)->required();
  basicize_cmd->callback([&] { rc = run_basicize(file); });

  CLI::App* info = app.add_subcommand("info", "summarize a description");
  info->add_option("file", file)->required();
  info->callback([&] { rc = run_info(file); });

  CLI::App* gen = app.add_subcommand("gen", "emit a built-in family");
  gen->require_subcommand(1);
  CLI::App* genz = gen->add_subcommand("zigzag", "extended zigzag algebra");
  genz->add_option("--l", gen_l, "number of rungs")->required()->check(CLI::PositiveNumber);
  genz->add_option("--field", field_flag, "q or gf:P");
  genz->callback([&] { rc = run_gen_zigzag(gen_l, field_flag); });
  CLI::App* genm = gen->add_subcommand("matrix", "matrix superalgebra");
  genm->add_option("--n", gen_n, "even size")->required()->check(CLI::PositiveNumber);
  genm->add_option("--m", gen_m, "odd size");
  genm->add_option("--field", field_flag, "q or gf:P");
  genm->callback([&] { rc = run_gen_matrix(gen_n, gen_m, field_flag); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const bqh::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const bqh::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
