#include <doctest.h>

#include <random>

#include "vlab/dilation.hpp"

using namespace vlab;

namespace {

OperatorExpr momentum_poly(std::mt19937& rng, int particles, int dims, int max_deg) {
  auto pick = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  OperatorExpr e;
  int terms = pick(1, 4);
  for (int t = 0; t < terms; ++t) {
    FactorSeq word;
    int deg = pick(0, max_deg);
    for (int d = 0; d < deg; ++d) {
      word.push_back(momentum(pick(1, particles), pick(1, dims)));
    }
    int num = pick(-5, 5);
    e += normal_order(Coeff::rational(num == 0 ? 3 : num, pick(1, 3)), std::move(word));
  }
  return e;
}

}  // namespace

TEST_CASE("generator normal form") {
  // one particle, one dimension: x p - i hbar / 2
  OperatorExpr g1 = dilation_generator({1, 1});
  OperatorExpr expected1 =
      mul(OperatorExpr::factor(position(1, 1)), OperatorExpr::factor(momentum(1, 1))) -
      OperatorExpr::identity(Coeff(RationalComplex(mpq_class(0), mpq_class(1, 2)), 1));
  CHECK(g1 == expected1);

  // one particle, three dimensions: sum_a x_a p_a - (3/2) i hbar
  OperatorExpr g3 = dilation_generator({1, 3});
  OperatorExpr expected3;
  for (int a = 1; a <= 3; ++a) {
    expected3 += mul(OperatorExpr::factor(position(1, a)),
                     OperatorExpr::factor(momentum(1, a)));
  }
  expected3 -=
      OperatorExpr::identity(Coeff(RationalComplex(mpq_class(0), mpq_class(3, 2)), 1));
  CHECK(g3 == expected3);
}

TEST_CASE("generator is hermitian") {
  for (int n : {1, 2, 3}) {
    for (int dims : {1, 3}) {
      OperatorExpr g = dilation_generator({n, dims});
      CHECK(adjoint(g) == g);
    }
  }
}

TEST_CASE("angular momentum commutators") {
  for (int n : {1, 2}) {
    GeneratorSpec spec{n, 3};
    OperatorExpr lz = angular_momentum_z(spec);
    CHECK(commutator(dilation_generator(spec), lz).is_zero());
    CHECK(commutator(lz, total_momentum(spec, 3)).is_zero());
    CHECK(commutator(lz, total_momentum(spec, 1)) ==
          scale(Coeff::i_hbar(), total_momentum(spec, 2)));
  }
  CHECK_THROWS_AS(angular_momentum_z({1, 1}), DimsError);
}

TEST_CASE("all angular momentum components commute with G") {
  // Lx = sum (y p_z - z p_y), Ly = sum (z p_x - x p_z)
  for (int n : {1, 2}) {
    GeneratorSpec spec{n, 3};
    OperatorExpr g = dilation_generator(spec);
    OperatorExpr lx, ly;
    for (int k = 1; k <= n; ++k) {
      lx += mul(OperatorExpr::factor(position(k, 2)),
                OperatorExpr::factor(momentum(k, 3)));
      lx -= mul(OperatorExpr::factor(position(k, 3)),
                OperatorExpr::factor(momentum(k, 2)));
      ly += mul(OperatorExpr::factor(position(k, 3)),
                OperatorExpr::factor(momentum(k, 1)));
      ly -= mul(OperatorExpr::factor(position(k, 1)),
                OperatorExpr::factor(momentum(k, 3)));
    }
    CHECK(commutator(g, lx).is_zero());
    CHECK(commutator(g, ly).is_zero());
  }
}

TEST_CASE("directional derivative acts term-wise by degree") {
  OperatorExpr p2 = mul(OperatorExpr::factor(momentum(1, 1)),
                        OperatorExpr::factor(momentum(1, 1)));
  CHECK(directional_derivative(p2, FactorKind::Momentum) ==
        scale(Coeff::integer(2), p2));

  OperatorExpr xx = mul(OperatorExpr::factor(position(1, 1)),
                        OperatorExpr::factor(position(2, 1)));
  CHECK(directional_derivative(xx, FactorKind::Position) ==
        scale(Coeff::integer(2), xx));

  CHECK_THROWS_AS(
      directional_derivative(xx + p2, FactorKind::Position), MixedKindError);
}

TEST_CASE("euler commutator identity for momentum polynomials") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + trial % 3;
    int dims = trial % 2 ? 1 : 3;
    GeneratorSpec spec{n, dims};
    OperatorExpr f = momentum_poly(rng, n, dims, 6);
    CHECK(commutator(dilation_generator(spec), f) ==
          scale(Coeff::i_hbar(), directional_derivative(f, FactorKind::Momentum)));
  }
}

TEST_CASE("dilate scales positions and momenta oppositely") {
  OperatorExpr x1 = OperatorExpr::factor(position(1, 1));
  OperatorExpr p1 = OperatorExpr::factor(momentum(1, 1));
  CHECK(dilate(x1) == scale(Coeff::lam(1), x1));
  CHECK(dilate(p1) == scale(Coeff::lam(-1), p1));
  CHECK(dilate(mul(x1, p1)) == mul(x1, p1));

  // group law: applying the map twice doubles every lam exponent
  std::mt19937 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    OperatorExpr f = momentum_poly(rng, 2, 3, 4);
    OperatorExpr once = dilate(f);
    OperatorExpr twice = dilate(once);
    for (const auto& [word, coeff] : twice.terms()) {
      const Coeff& base = once.terms().at(word);
      REQUIRE(base.terms().size() == coeff.terms().size());
      for (std::size_t k = 0; k < coeff.terms().size(); ++k) {
        CHECK(coeff.terms()[k].lambda_power == 2 * base.terms()[k].lambda_power);
      }
    }
  }
}

TEST_CASE("euler degree classifies homogeneity") {
  OperatorExpr v1 = parse("x[1,1]^2 + x[2,1]^2");
  CHECK(euler_degree(v1) == 2);
  OperatorExpr v2 = parse("x[1,1]^2 + x[1,1]");
  CHECK(!euler_degree(v2).has_value());
  OperatorExpr v3 = parse("x[1,1]*x[2,1]^3");
  CHECK(euler_degree(v3) == 4);
  CHECK_THROWS_AS(euler_degree(parse("p[1,1]^2")), MixedKindError);

  // brute-force degree scan agreement on random homogeneous polynomials
  std::mt19937 rng(21);
  auto pick = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  for (int trial = 0; trial < 30; ++trial) {
    int deg = pick(0, 6);
    OperatorExpr v;
    for (int t = 0; t < 3; ++t) {
      FactorSeq word;
      for (int d = 0; d < deg; ++d) word.push_back(position(pick(1, 3), pick(1, 3)));
      v += normal_order(Coeff::integer(pick(1, 5)), std::move(word));
    }
    auto result = euler_degree(v);
    int scan = max_degree(v);
    if (!v.is_zero()) CHECK(result == scan);
  }
}

TEST_CASE("virial commutator examples") {
  // T = p^2/2, V = x^2/2 in one dimension
  HamiltonianSpec h;
  h.kinetic = parse("1/2*p[1,1]^2");
  h.potential = parse("1/2*x[1,1]^2");
  h.constant = Coeff::zero();
  OperatorExpr expected = scale(Coeff::i_hbar(), parse("p[1,1]^2 - x[1,1]^2"));
  CHECK(virial_commutator(h) == expected);

  // the constant drops out
  HamiltonianSpec h2;
  h2.kinetic = parse("p[1,1]^4 + 2*p[2,1]^2");
  h2.potential = OperatorExpr::zero();
  h2.constant = Coeff::rational(7, 3);
  CHECK(virial_commutator(h2) ==
        scale(Coeff::i_hbar(),
              directional_derivative(h2.kinetic, FactorKind::Momentum)));

  HamiltonianSpec bad;
  bad.kinetic = parse("x[1,1]");
  CHECK_THROWS_AS(virial_commutator(bad), MixedKindError);
}

TEST_CASE("virial commutator equals the generator commutator") {
  std::mt19937 rng(33);
  auto pick = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  for (int trial = 0; trial < 25; ++trial) {
    int n = pick(1, 3);
    int dims = pick(0, 1) ? 3 : 1;
    GeneratorSpec spec{n, dims};
    HamiltonianSpec h;
    h.kinetic = momentum_poly(rng, n, dims, 5);
    OperatorExpr v;
    for (int t = 0; t < 3; ++t) {
      FactorSeq word;
      int deg = pick(0, 5);
      for (int d = 0; d < deg; ++d) word.push_back(position(pick(1, n), pick(1, dims)));
      v += normal_order(Coeff::rational(pick(-4, 4) * 2 + 1, pick(1, 3)),
                        std::move(word));
    }
    h.potential = v;
    h.constant = Coeff::rational(pick(-3, 3), 2);
    OperatorExpr full =
        add(add(h.kinetic, h.potential), OperatorExpr::identity(h.constant));
    CHECK(virial_commutator(h) == commutator(dilation_generator(spec), full));
  }
}

TEST_CASE("total momentum monomial commutators") {
  GeneratorSpec spec{2, 3};
  OperatorExpr px = total_momentum(spec, 1);
  OperatorExpr py = total_momentum(spec, 2);

  CHECK(momentum_monomial_commutator(spec, {1}) == scale(Coeff::i_hbar(), px));
  CHECK(momentum_monomial_commutator(spec, {1, 2}) ==
        scale(Coeff::i_hbar() * Coeff::integer(2), mul(px, py)));

  // r = 3 against a brute-force expansion of P_x^3 into plain momentum words
  OperatorExpr px3_expanded;
  for (int k1 = 1; k1 <= 2; ++k1) {
    for (int k2 = 1; k2 <= 2; ++k2) {
      for (int k3 = 1; k3 <= 2; ++k3) {
        px3_expanded += normal_order(
            Coeff::one(), {momentum(k1, 1), momentum(k2, 1), momentum(k3, 1)});
      }
    }
  }
  OperatorExpr lhs = momentum_monomial_commutator(spec, {1, 1, 1});
  CHECK(lhs == scale(Coeff::i_hbar() * Coeff::integer(3), px3_expanded));
}
