#include <doctest.h>

#include <algorithm>
#include <random>

#include "support/fock_oracle.hpp"
#include "support/wick_oracle.hpp"
#include "vlab/opalg.hpp"

using namespace vlab;

namespace {

OperatorExpr x(int i, int a = 1) { return OperatorExpr::factor(position(i, a)); }
OperatorExpr p(int i, int a = 1) { return OperatorExpr::factor(momentum(i, a)); }

OperatorExpr random_expr(std::mt19937& rng, int max_terms, int max_degree,
                         int particles = 2, int axes = 2) {
  auto pick = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  OperatorExpr e;
  int terms = pick(1, max_terms);
  for (int t = 0; t < terms; ++t) {
    FactorSeq word;
    int deg = pick(0, max_degree);
    for (int d = 0; d < deg; ++d) {
      CanonicalFactor f{pick(0, 1) ? FactorKind::Momentum : FactorKind::Position,
                        static_cast<std::uint16_t>(pick(1, particles)),
                        static_cast<std::uint8_t>(pick(1, axes))};
      word.push_back(f);
    }
    int num = pick(-6, 6);
    if (num == 0) num = 2;
    Coeff c = Coeff::rational(num, pick(1, 3));
    if (pick(0, 3) == 0) c = c * Coeff::unit_i();
    if (pick(0, 3) == 0) c = c * Coeff::hbar();
    if (pick(0, 5) == 0) c = c * Coeff::lam(pick(-2, 2));
    e += normal_order(c, std::move(word));
  }
  return e;
}

}  // namespace

TEST_CASE("canonical commutation relation from parse") {
  OperatorExpr e = parse("x[1,1]*p[1,1] - p[1,1]*x[1,1]");
  CHECK(e == OperatorExpr::identity(Coeff::i_hbar()));
}

TEST_CASE("zero times operator is the empty expression") {
  OperatorExpr e = parse("0 * p[1,1]");
  CHECK(e.is_zero());
  CHECK(e == OperatorExpr::zero());
}

TEST_CASE("single swap introduces the -i hbar term") {
  OperatorExpr e = parse("p[1,1]*x[1,1]");
  OperatorExpr expected = mul(x(1), p(1)) - OperatorExpr::identity(Coeff::i_hbar());
  CHECK(e == expected);
}

TEST_CASE("normal order p x x") {
  OperatorExpr e = normal_order(
      Coeff::one(), {momentum(1, 1), position(1, 1), position(1, 1)});
  OperatorExpr expected =
      mul(mul(x(1), x(1)), p(1)) -
      scale(Coeff::i_hbar() * Coeff::integer(2), x(1));
  CHECK(e == expected);
}

TEST_CASE("distinct particles and axes commute freely") {
  CHECK(normal_order(Coeff::one(), {momentum(2, 1), position(1, 1)}) ==
        mul(x(1), p(2)));
  CHECK(normal_order(Coeff::one(), {momentum(1, 2), position(1, 1)}) ==
        mul(x(1), p(1, 2)));
  // unchanged content, already canonical
  CHECK(parse("x[1,1]*p[2,1]") == mul(x(1), p(2)));
}

TEST_CASE("ring operation examples") {
  CHECK(add(x(1), -x(1)).is_zero());
  CHECK(mul(x(1), p(1)) == parse("x[1,1]*p[1,1]"));
  CHECK(scale(Coeff::i_hbar(), OperatorExpr::identity()) ==
        OperatorExpr::identity(Coeff::i_hbar()));
}

TEST_CASE("commutator examples") {
  CHECK(commutator(p(1), mul(x(1), x(1))) ==
        scale(Coeff::i_hbar() * Coeff::integer(-2), x(1)));
  CHECK(commutator(x(1), mul(p(1), p(1))) ==
        scale(Coeff::i_hbar() * Coeff::integer(2), p(1)));
  std::mt19937 rng(7);
  for (int k = 0; k < 20; ++k) {
    OperatorExpr a = random_expr(rng, 3, 4);
    CHECK(commutator(a, a).is_zero());
  }
}

TEST_CASE("commutator is antisymmetric and bilinear") {
  std::mt19937 rng(11);
  for (int k = 0; k < 20; ++k) {
    OperatorExpr a = random_expr(rng, 3, 3);
    OperatorExpr b = random_expr(rng, 3, 3);
    OperatorExpr c = random_expr(rng, 2, 3);
    CHECK(commutator(a, b) == -commutator(b, a));
    CHECK(commutator(a + c, b) == add(commutator(a, b), commutator(c, b)));
  }
}

TEST_CASE("adjoint examples") {
  OperatorExpr xp = mul(x(1), p(1));
  CHECK(adjoint(xp) == xp - OperatorExpr::identity(Coeff::i_hbar()));
  CHECK(adjoint(OperatorExpr::identity(Coeff::i_hbar())) ==
        OperatorExpr::identity(Coeff::i_hbar().negated()));
  std::mt19937 rng(13);
  for (int k = 0; k < 20; ++k) {
    OperatorExpr a = random_expr(rng, 3, 4);
    CHECK(adjoint(adjoint(a)) == a);
    OperatorExpr b = random_expr(rng, 3, 3);
    CHECK(adjoint(commutator(a, b)) == commutator(adjoint(b), adjoint(a)));
  }
}

TEST_CASE("equality is decidable and exact") {
  CHECK(equals(commutator(x(1), p(1)), OperatorExpr::identity(Coeff::i_hbar())));
  CHECK(equals(parse("0"), OperatorExpr::zero()));
  CHECK(!equals(mul(x(1), p(1)), normal_order(Coeff::one(),
                                              {momentum(1, 1), position(1, 1)})));
}

TEST_CASE("jacobi identity holds exactly") {
  std::mt19937 rng(17);
  for (int k = 0; k < 15; ++k) {
    OperatorExpr a = random_expr(rng, 2, 4);
    OperatorExpr b = random_expr(rng, 2, 4);
    OperatorExpr c = random_expr(rng, 2, 4);
    OperatorExpr jac = commutator(a, commutator(b, c));
    jac += commutator(b, commutator(c, a));
    jac += commutator(c, commutator(a, b));
    CHECK(jac.is_zero());
  }
}

TEST_CASE("leibniz rule holds exactly") {
  std::mt19937 rng(19);
  for (int k = 0; k < 15; ++k) {
    OperatorExpr a = random_expr(rng, 2, 3);
    OperatorExpr b = random_expr(rng, 2, 3);
    OperatorExpr c = random_expr(rng, 2, 3);
    CHECK(commutator(a, mul(b, c)) ==
          add(mul(commutator(a, b), c), mul(b, commutator(a, c))));
  }
}

TEST_CASE("product association (confluence of rewriting)") {
  std::mt19937 rng(23);
  for (int k = 0; k < 25; ++k) {
    OperatorExpr a = random_expr(rng, 2, 4);
    OperatorExpr b = random_expr(rng, 2, 4);
    OperatorExpr c = random_expr(rng, 2, 4);
    CHECK(mul(a, mul(b, c)) == mul(mul(a, b), c));
  }
}

TEST_CASE("normal ordering matches the swap-enumeration oracle") {
  // every product of <= 4 factors over two particles (acceptance runs <= 5)
  for (const auto& word : testing::all_words(2, 4)) {
    OperatorExpr engine = normal_order(Coeff::one(), word);
    OperatorExpr oracle = testing::wick_normal_order(Coeff::one(), word);
    REQUIRE(engine == oracle);
  }
}

TEST_CASE("normal ordering matches the truncated oscillator oracle") {
  testing::FockSpace space{{{1, 1}, {2, 1}}, 12};
  std::mt19937 rng(29);
  auto pick = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  for (int trial = 0; trial < 60; ++trial) {
    FactorSeq word;
    int len = pick(0, 5);
    for (int k = 0; k < len; ++k) {
      word.push_back({pick(0, 1) ? FactorKind::Momentum : FactorKind::Position,
                      static_cast<std::uint16_t>(pick(1, 2)), 1});
    }
    OperatorExpr e = normal_order(Coeff::one(), word);
    double dev = testing::word_vs_expr_deviation(space, Coeff::one(), word, e, 4);
    CHECK(dev < 1e-10);
  }
}

TEST_CASE("print round trips through parse") {
  std::mt19937 rng(31);
  for (int k = 0; k < 60; ++k) {
    OperatorExpr e = random_expr(rng, 4, 4);
    CAPTURE(print(e));
    CHECK(parse(print(e)) == e);
  }
  CHECK(print(OperatorExpr::zero()) == "0");
  CHECK(parse(print(parse("1/2*x[1,1]^2 - i*hbar + lam^-1*p[2,3]"))) ==
        parse("1/2*x[1,1]^2 - i*hbar + lam^-1*p[2,3]"));
}

TEST_CASE("parser reports byte offsets on malformed input") {
  CHECK_THROWS_AS(parse("x[1,1] + "), SyntaxError);
  CHECK_THROWS_AS(parse("x[1 1]"), SyntaxError);
  CHECK_THROWS_AS(parse("q[1,1]"), SyntaxError);
  CHECK_THROWS_AS(parse("x[1,1] ^ x"), SyntaxError);
  CHECK_THROWS_AS(parse("3/0"), SyntaxError);
  CHECK_THROWS_AS(parse("hbar^-1"), SyntaxError);
  try {
    parse("x[1,1] @ 2");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 7);
  }
}

TEST_CASE("parser rejects out-of-range indices") {
  CHECK_THROWS_AS(parse("x[0,1]"), IndexError);
  CHECK_THROWS_AS(parse("x[1,4]"), IndexError);
  CHECK_THROWS_AS(parse("p[1,0]"), IndexError);
  ParseLimits limits;
  limits.max_particles = 2;
  CHECK_THROWS_AS(parse("x[3,1]", limits), IndexError);
  CHECK_NOTHROW(parse("x[2,3]", limits));
}

TEST_CASE("blowup cap raises instead of truncating") {
  FactorSeq word;
  for (int k = 0; k < 8; ++k) word.push_back(momentum(1, 1));
  for (int k = 0; k < 8; ++k) word.push_back(position(1, 1));
  CHECK_THROWS_AS(normal_order(Coeff::one(), word, /*cap=*/10), ExpressionBlowup);
  CHECK_NOTHROW(normal_order(Coeff::one(), word));
}

TEST_CASE("mixed hbar powers on one factor sequence stay exact") {
  // (1 + x p)(x p) puts coefficients 1 and -i hbar on the same word
  OperatorExpr xp = mul(x(1), p(1));
  OperatorExpr e = mul(OperatorExpr::identity() + xp, xp);
  OperatorExpr expected = xp + mul(xp, xp);
  CHECK(e == expected);
  CHECK(parse(print(e)) == e);
}

TEST_CASE("deep random words terminate and land in canonical form") {
  std::mt19937 rng(37);
  auto pick = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  for (int trial = 0; trial < 30; ++trial) {
    FactorSeq word;
    int len = pick(8, 16);
    for (int k = 0; k < len; ++k) {
      word.push_back({pick(0, 1) ? FactorKind::Momentum : FactorKind::Position,
                      static_cast<std::uint16_t>(pick(1, 2)),
                      static_cast<std::uint8_t>(pick(1, 2))});
    }
    OperatorExpr e = normal_order(Coeff::one(), word);
    // every emitted word is sorted, and re-normalizing is the identity
    OperatorExpr again;
    for (const auto& [fs, c] : e.terms()) {
      REQUIRE(std::is_sorted(fs.begin(), fs.end()));
      again += normal_order(c, fs);
    }
    CHECK(again == e);
  }
}
