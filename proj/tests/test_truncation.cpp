#include "bqh/truncation.hpp"

#include "bqh/standard_modules.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bqh;
using bqh_test::pool;
using bqh_test::PoolEntry;

namespace {

const PoolEntry& zigzag_entry(std::size_t l) {
  for (const PoolEntry& entry : pool()) {
    if (entry.is_zigzag && entry.zigzag_l == l && entry.cat.algebra.field().is_rationals()) {
      return entry;
    }
  }
  throw Error("missing zigzag pool entry");
}

// Sum of the vertex idempotents with indices below the cutoff.
SparseVec vertex_sum(const SuperAlgebra& A, std::size_t below) {
  SparseVec e(A.field());
  for (std::size_t i = 0; i < below; ++i) {
    e.add(*A.index_of("e" + std::to_string(i)), Scalar::one(A.field()));
  }
  return e;
}

// Full matrix algebra sitting entirely in degree (0, 0), for probes that
// need idempotents the graded catalog cannot host.
struct FlatMatrixTwo {
  SuperAlgebra A;
  VerifiedHeredity vh;
};

FlatMatrixTwo flat_matrix_two() {
  const Field f = Field::rationals();
  std::vector<BasisInfo> infos;
  for (int r = 1; r <= 2; ++r) {
    for (int s = 1; s <= 2; ++s) {
      infos.push_back(BasisInfo{"E" + std::to_string(r) + "_" + std::to_string(s), Deg{0, 0}});
    }
  }
  SuperAlgebra A(f, std::move(infos));
  auto idx = [&A](int r, int s) {
    return *A.index_of("E" + std::to_string(r) + "_" + std::to_string(s));
  };
  for (int r = 1; r <= 2; ++r) {
    for (int s = 1; s <= 2; ++s) {
      for (int t = 1; t <= 2; ++t) {
        for (int u = 1; u <= 2; ++u) {
          if (s != t) continue;
          SparseVec v(f);
          v.set(idx(r, u), Scalar::one(f));
          A.set_product(idx(r, s), idx(t, u), v);
        }
      }
    }
  }
  SparseVec unit(f);
  unit.set(idx(1, 1), Scalar::one(f));
  unit.set(idx(2, 2), Scalar::one(f));
  A.set_unit(unit);
  if (!A.validate().ok) throw Error("flat matrix algebra failed validation");

  SparseVec e(f);
  e.set(idx(1, 1), Scalar::one(f));
  std::vector<SparseVec> X, Y;
  for (int r = 1; r <= 2; ++r) {
    SparseVec x(f);
    x.set(idx(r, 1), Scalar::one(f));
    X.push_back(x);
  }
  for (int s = 1; s <= 2; ++s) {
    SparseVec y(f);
    y.set(idx(1, s), Scalar::one(f));
    Y.push_back(y);
  }
  HeredityData data(Poset({"*"}, {}), {HeredityCell{e, X, Y, 0, 0}});
  VerifiedHeredity vh = bqh_test::must_verify(A, data);
  return FlatMatrixTwo{std::move(A), std::move(vh)};
}

}  // namespace

TEST_SUITE("truncation") {

TEST_CASE("classification rejects elements that are not even idempotents") {
  const PoolEntry& entry = zigzag_entry(1);
  const SuperAlgebra& A = entry.cat.algebra;
  const SparseVec e0 = A.basis_element(*A.index_of("e0"));
  CHECK_THROWS_AS(classify_idempotent(A, entry.vh, e0 + e0), Error);
  const SparseVec arrow = A.basis_element(*A.index_of("a1_0"));
  CHECK_THROWS_AS(classify_idempotent(A, entry.vh, arrow), Error);
}

TEST_CASE("the truncated zigzag matches its enumeration oracle") {
  for (std::size_t l = 1; l <= 4; ++l) {
    CAPTURE(l);
    const TruncatedZigzag tz = truncated_zigzag(l, Field::rationals());
    REQUIRE(tz.truncation.algebra.has_value());

    // Oracle: monomials of the parent whose endpoints stay below the cutoff.
    bqh_test::ZigzagOracle oracle(l);
    std::size_t expect = 0;
    for (const std::string& lab : oracle.basis_labels()) {
      const auto [from, to] = oracle.endpoints(lab);
      if (from < static_cast<int>(l) && to < static_cast<int>(l)) ++expect;
    }
    CHECK(tz.truncation.algebra->dim() == expect);
    CHECK(expect == 4 * l - 2);

    CHECK(tz.truncation.cls.adapted);
    CHECK_FALSE(tz.truncation.cls.strongly_adapted);
    CHECK_FALSE(tz.truncation.cls.problems.empty());
    CHECK(tz.truncation.cls.ibar_count() == l + 1);
    CHECK(tz.truncation.unital);
    CHECK(tz.truncation.standardly_based);
    CHECK_FALSE(tz.truncation.heredity.has_value());
    REQUIRE(tz.truncation.cellular.has_value());
    CHECK(*tz.truncation.cellular);
  }
}

TEST_CASE("simple modules survive truncation exactly below the cutoff") {
  for (std::size_t l = 1; l <= 4; ++l) {
    CAPTURE(l);
    const PoolEntry& entry = zigzag_entry(l);
    const SuperAlgebra& A = entry.cat.algebra;
    const SparseVec e = vertex_sum(A, l);
    const AdaptedIdempotent cls = classify_idempotent(A, entry.vh, e);
    const std::vector<std::size_t> survivors = surviving_simples(A, entry.vh, cls);
    std::vector<std::size_t> expect;
    for (std::size_t i = 0; i < l; ++i) expect.push_back(*entry.vh.poset().index_of(
        std::to_string(i)));
    CHECK(survivors == expect);

    // Module-level restatement: the idempotent kills exactly the top head.
    for (std::size_t i = 0; i < entry.vh.cell_count(); ++i) {
      const RadicalSimpleResult rs = radical_and_simple(A, entry.vh, i);
      const GradedDim cut = idempotent_weight_gdim(A, rs.simple.rep, e);
      const bool listed = std::find(survivors.begin(), survivors.end(), i) != survivors.end();
      CHECK(cut.is_zero() == !listed);
    }
  }
}

TEST_CASE("a gappy vertex sum keeps the outer simples and drops the middle one") {
  const PoolEntry& entry = zigzag_entry(2);
  const SuperAlgebra& A = entry.cat.algebra;
  SparseVec e(A.field());
  e.add(*A.index_of("e0"), Scalar::one(A.field()));
  e.add(*A.index_of("e2"), Scalar::one(A.field()));
  const AdaptedIdempotent cls = classify_idempotent(A, entry.vh, e);
  CHECK(cls.adapted);
  CHECK_FALSE(cls.strongly_adapted);
  CHECK(cls.ibar_count() == 3);

  const Truncation t = truncate(A, entry.vh, cls);
  REQUIRE(t.algebra.has_value());
  CHECK(t.algebra->dim() == 3);
  CHECK(t.standardly_based);

  const std::vector<std::size_t> survivors = surviving_simples(A, entry.vh, cls);
  CHECK(survivors == std::vector<std::size_t>{0, 2});
}

TEST_CASE("truncating by the unit reproduces the whole algebra with its heredity") {
  const PoolEntry& entry = zigzag_entry(2);
  const SuperAlgebra& A = entry.cat.algebra;
  const AdaptedIdempotent cls = classify_idempotent(A, entry.vh, *A.unit());
  CHECK(cls.adapted);
  CHECK(cls.strongly_adapted);
  const Truncation t = truncate(A, entry.vh, cls, &entry.cat.involution);
  REQUIRE(t.algebra.has_value());
  CHECK(t.algebra->dim() == A.dim());
  CHECK(t.unital);
  REQUIRE(t.verified.has_value());
  REQUIRE(t.cellular.has_value());
  CHECK(*t.cellular);
  const DecompositionMatrix inner = decomposition_matrix(*t.algebra, *t.verified);
  CHECK(inner.ok());
  CHECK(bqh_test::zigzag_decomp_matches(*t.algebra, *t.verified, 2));
}

TEST_CASE("a diagonal corner of the matrix superalgebra is strongly adapted") {
  CatalogAlgebra cat = matrix_superalgebra(2, 1, Field::rationals());
  const VerifiedHeredity vh = bqh_test::must_verify(cat.algebra, cat.data);
  const SuperAlgebra& A = cat.algebra;
  SparseVec e(A.field());
  e.add(*A.index_of("E1_1"), Scalar::one(A.field()));
  e.add(*A.index_of("E2_2"), Scalar::one(A.field()));
  const AdaptedIdempotent cls = classify_idempotent(A, vh, e);
  CHECK(cls.adapted);
  CHECK(cls.strongly_adapted);
  const Truncation t = truncate(A, vh, cls);
  REQUIRE(t.algebra.has_value());
  CHECK(t.algebra->dim() == 4);
  REQUIRE(t.verified.has_value());
  const DecompositionMatrix dm = decomposition_matrix(*t.algebra, *t.verified);
  CHECK(dm.ok());
  CHECK(dm.d[0][0] == GradedDim::one());
}

TEST_CASE("an idempotent that shears a family is reported as non-adapted") {
  const FlatMatrixTwo fm = flat_matrix_two();
  SparseVec e(fm.A.field());
  e.add(*fm.A.index_of("E1_1"), Scalar::one(fm.A.field()));
  e.add(*fm.A.index_of("E1_2"), Scalar::one(fm.A.field()));
  CHECK(fm.A.check_idempotent(e).idempotent);
  CHECK(fm.A.check_idempotent(e).degree_zero_even);
  const AdaptedIdempotent cls = classify_idempotent(fm.A, fm.vh, e);
  CHECK_FALSE(cls.adapted);
  CHECK_FALSE(cls.problems.empty());
  CHECK_THROWS_AS(truncate(fm.A, fm.vh, cls), Error);
}

TEST_CASE("restriction and embedding are mutually inverse on the corner") {
  const TruncatedZigzag tz = truncated_zigzag(2, Field::rationals());
  const SuperAlgebra& A = tz.parent.algebra;
  const VerifiedHeredity vh = bqh_test::must_verify(tz.parent.algebra, tz.parent.data);
  const Truncation& t = tz.truncation;
  REQUIRE(t.algebra.has_value());
  bqh_test::Rng rng(60u);
  for (int round = 0; round < 50; ++round) {
    SparseVec inner(t.algebra->field());
    for (std::size_t k = 0; k < t.algebra->dim(); ++k) {
      inner.add(k, rng.scalar(t.algebra->field()));
    }
    const SparseVec ambient = embed_from_truncation(A, t, inner);
    const SparseVec back = restrict_to_truncation(A, vh, t, ambient);
    CHECK(back == inner);
  }
  // Multiplication commutes with the embedding.
  for (int round = 0; round < 50; ++round) {
    SparseVec u(t.algebra->field()), v(t.algebra->field());
    u.add(rng.below(t.algebra->dim()), rng.nonzero_scalar(t.algebra->field()));
    v.add(rng.below(t.algebra->dim()), rng.nonzero_scalar(t.algebra->field()));
    const SparseVec lhs = embed_from_truncation(A, t, t.algebra->multiply(u, v));
    const SparseVec rhs =
        A.multiply(embed_from_truncation(A, t, u), embed_from_truncation(A, t, v));
    CHECK(lhs == rhs);
  }
  const SparseVec outside = A.basis_element(*A.index_of("a2_1"));
  CHECK_THROWS_AS(restrict_to_truncation(A, vh, t, outside), Error);
}

TEST_CASE("the even-product subalgebra closes and verifies across the pool") {
  for (const PoolEntry& entry : pool()) {
    CAPTURE(entry.name);
    const ConformityReport cr = conformity_check(entry.cat.algebra, entry.vh);
    CHECK(cr.closed);
    CHECK(cr.unital);
    CHECK(cr.ok());
    if (entry.is_zigzag) {
      REQUIRE(cr.algebra.has_value());
      // Only the vertices survive the even-times-even product filter.
      CHECK(cr.algebra->dim() == entry.zigzag_l + 1);
    }
  }
  CatalogAlgebra m21 = matrix_superalgebra(2, 1, Field::rationals());
  const VerifiedHeredity vh = bqh_test::must_verify(m21.algebra, m21.data);
  const ConformityReport cr = conformity_check(m21.algebra, vh);
  REQUIRE(cr.algebra.has_value());
  CHECK(cr.algebra->dim() == 4);
}

TEST_CASE("subalgebra restriction and embedding agree on the even corner") {
  const PoolEntry& entry = zigzag_entry(1);
  const SuperAlgebra& A = entry.cat.algebra;
  const ConformityReport cr = conformity_check(A, entry.vh);
  REQUIRE(cr.ok());
  const SparseVec e0 = A.basis_element(*A.index_of("e0"));
  const SparseVec inner = restrict_to_subalgebra(A, entry.vh, cr, e0);
  CHECK(embed_from_subalgebra(A, cr, inner) == e0);
  const SparseVec odd = A.basis_element(*A.index_of("a1_0"));
  CHECK_THROWS_AS(restrict_to_subalgebra(A, entry.vh, cr, odd), Error);
}

TEST_CASE("a trivial bigrading on an even matrix algebra passes every refinement check") {
  CatalogAlgebra cat = matrix_superalgebra(2, 0, Field::rationals());
  const VerifiedHeredity vh = bqh_test::must_verify(cat.algebra, cat.data);
  const std::vector<Bigrade> trivial(cat.algebra.dim(), Bigrade{0, 0});
  const Z2Z2Report rep = z2z2_check(cat.algebra, trivial, vh);
  CHECK(rep.ok());
  CHECK(rep.multiplicative);
  CHECK(rep.refines_parity);
  CHECK(rep.families_placed);
  CHECK(rep.even_even.size() == cat.algebra.dim());
  CHECK(rep.cross_validated);
}

TEST_CASE("a difference-form bigrading can pass refinement yet misplace a family") {
  CatalogAlgebra cat = matrix_superalgebra(2, 0, Field::rationals());
  const VerifiedHeredity vh = bqh_test::must_verify(cat.algebra, cat.data);
  const SuperAlgebra& A = cat.algebra;
  std::vector<Bigrade> bg(A.dim(), Bigrade{0, 0});
  bg[*A.index_of("E1_2")] = Bigrade{1, 1};
  bg[*A.index_of("E2_1")] = Bigrade{1, 1};
  const Z2Z2Report rep = z2z2_check(A, bg, vh);
  CHECK(rep.multiplicative);
  CHECK(rep.refines_parity);
  CHECK_FALSE(rep.families_placed);
  CHECK_FALSE(rep.ok());
  CHECK_FALSE(rep.problems.empty());
}

TEST_CASE("the natural row-column bigrading of a supermatrix breaks additivity") {
  CatalogAlgebra cat = matrix_superalgebra(2, 1, Field::rationals());
  const VerifiedHeredity vh = bqh_test::must_verify(cat.algebra, cat.data);
  const SuperAlgebra& A = cat.algebra;
  std::vector<Bigrade> bg;
  for (std::size_t k = 0; k < A.dim(); ++k) {
    const std::string& lab = A.label(k);
    const auto us = lab.find('_');
    const int r = std::stoi(lab.substr(1, us - 1));
    const int s = std::stoi(lab.substr(us + 1));
    bg.push_back(Bigrade{r > 2 ? 1 : 0, s > 2 ? 1 : 0});
  }
  const Z2Z2Report rep = z2z2_check(A, bg, vh);
  // Crossing the odd block and coming back lands in the even corner while
  // the componentwise sum does not, so no such refinement can exist here.
  CHECK_FALSE(rep.multiplicative);
  CHECK(rep.refines_parity);
  CHECK(rep.families_placed);
  CHECK_FALSE(rep.ok());
  CHECK_FALSE(rep.problems.empty());
}

TEST_CASE("splitting the zigzag arrows by family direction breaks additivity on loops") {
  const PoolEntry& entry = zigzag_entry(1);
  const SuperAlgebra& A = entry.cat.algebra;
  std::vector<Bigrade> bg(A.dim(), Bigrade{0, 0});
  bg[*A.index_of("a0_1")] = Bigrade{1, 0};  // X-side arrow
  bg[*A.index_of("a1_0")] = Bigrade{0, 1};  // Y-side arrow
  const Z2Z2Report rep = z2z2_check(A, bg, entry.vh);
  CHECK_FALSE(rep.multiplicative);
  CHECK(rep.families_placed);
  CHECK_FALSE(rep.ok());
}

}  // TEST_SUITE
