#include "bqh/graded_dim.hpp"

#include "doctest.h"
#include "helpers.hpp"

using namespace bqh;

TEST_SUITE("graded_dim") {

TEST_CASE("canonical rendering sorts terms and suppresses unit factors") {
  CHECK(GradedDim::zero().str() == "0");
  CHECK(GradedDim::one().str() == "1");
  CHECK(GradedDim::term(1, 1, 1).str() == "q*pi");
  CHECK(GradedDim::term(-1, 0, 3).str() == "3*q^-1");
  const GradedDim mixed = GradedDim::term(-1, 1, 1) + GradedDim::term(0, 0, 2) +
                          GradedDim::term(1, 1, 1);
  CHECK(mixed.str() == "q^-1*pi + 2 + q*pi");
  const GradedDim poly = GradedDim::term(0, 0, 3) + GradedDim::term(1, 1, 4) +
                         GradedDim::term(2, 0, 2);
  CHECK(poly.str() == "3 + 4*q*pi + 2*q^2");
}

TEST_CASE("the parity variable squares to one") {
  // Multiplying two odd terms lands in the even part with added exponents.
  const GradedDim odd = GradedDim::term(1, 1, 1);
  CHECK(odd * odd == GradedDim::term(2, 0, 1));
  const GradedDim shifted = GradedDim::term(-2, 1, 5);
  CHECK(odd * shifted == GradedDim::term(-1, 0, 5));
}

TEST_CASE("addition and multiplication satisfy the ring laws on random values") {
  bqh_test::Rng rng(30u);
  auto random_gd = [&rng]() {
    GradedDim g = GradedDim::zero();
    const std::size_t terms = rng.below(4);
    for (std::size_t t = 0; t < terms; ++t) {
      g += GradedDim::term(static_cast<int>(rng.below(7)) - 3, rng.coin() ? 1 : 0,
                           static_cast<long long>(rng.below(9)) - 4);
    }
    return g;
  };
  for (int round = 0; round < 200; ++round) {
    const GradedDim a = random_gd();
    const GradedDim b = random_gd();
    const GradedDim c = random_gd();
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * GradedDim::one() == a);
    CHECK((a - a).is_zero());
    CHECK((a + b).eval_at_one() == a.eval_at_one() + b.eval_at_one());
    CHECK((a * b).eval_at_one() == a.eval_at_one() * b.eval_at_one());
  }
}

TEST_CASE("coefficient positivity is detected exactly") {
  CHECK(GradedDim::zero().all_coeffs_nonnegative());
  CHECK((GradedDim::term(2, 1, 3) + GradedDim::one()).all_coeffs_nonnegative());
  CHECK_FALSE((GradedDim::one() - GradedDim::term(1, 0, 2)).all_coeffs_nonnegative());
  // Cancellation removes the term entirely, so nothing negative remains.
  const GradedDim cancel = GradedDim::term(1, 0, 2) - GradedDim::term(1, 0, 2);
  CHECK(cancel.all_coeffs_nonnegative());
  CHECK(cancel.is_zero());
}

TEST_CASE("round trips through the triple listing preserve the value") {
  const GradedDim g = GradedDim::term(-2, 1, 7) + GradedDim::term(0, 0, 1) +
                      GradedDim::term(3, 1, 2);
  GradedDim back = GradedDim::zero();
  for (const auto& t : g.triples()) {
    back += GradedDim::term(static_cast<int>(t[0]), static_cast<int>(t[1]), t[2]);
  }
  CHECK(back == g);
}

}  // TEST_SUITE
