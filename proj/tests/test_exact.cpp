#include <catch2/catch_amalgamated.hpp>

#include "xrank/algebraic.hpp"
#include "xrank/matrix.hpp"
#include "xrank/poly.hpp"
#include "xrank/rational.hpp"
#include "xrank/rng.hpp"
#include "xrank/roots.hpp"

using namespace xrank;

namespace {

Poly<Rat> P(std::initializer_list<long> coeffs) {
  std::vector<Rat> c;
  for (long x : coeffs) c.emplace_back(x);
  return Poly<Rat>(std::move(c));
}

std::vector<Rat> V(std::initializer_list<long> xs) {
  std::vector<Rat> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST_CASE("rational parsing and canonical form") {
  CHECK(Rat::parse("3/6") == Rat(1, 2));
  CHECK(Rat::parse("-4/2") == Rat(-2));
  CHECK(Rat(2, -4) == Rat(-1, 2));
  CHECK(Rat(1, 2).str() == "1/2");
  CHECK(Rat(-7).str() == "-7");
  CHECK_THROWS(Rat(1, 0));
  CHECK_THROWS(Rat::parse("abc"));
}

TEST_CASE("matrix rank on pinned examples") {
  CHECK(matrix_rank(Matrix<Rat>::identity(3)) == 3);
  CHECK(matrix_rank(Matrix<Rat>(2, 3)) == 0);
  auto hankel = Matrix<Rat>::from_rows({V({1, 0, 0}), V({0, 0, 1})});
  CHECK(matrix_rank(hankel) == 2);
}

TEST_CASE("kernel basis is the canonical echelon kernel") {
  CHECK(kernel_basis(Matrix<Rat>::identity(3)).empty());
  auto k = kernel_basis(Matrix<Rat>::from_rows({V({1, 1, 1})}));
  REQUIRE(k.size() == 2);
  CHECK(k[0] == V({-1, 1, 0}));
  CHECK(k[1] == V({-1, 0, 1}));
}

TEST_CASE("span membership") {
  std::vector<std::vector<Rat>> basis = {V({1, 0, 0}), V({0, 1, 0})};
  CHECK(span_contains(basis, V({1, 1, 0})));
  CHECK_FALSE(span_contains({V({1, 0, 0})}, V({0, 1, 0})));
  // generic points of a rational normal quartic are in general position
  std::vector<std::vector<Rat>> pts;
  for (long t : {0, 1, -1}) {
    std::vector<Rat> p;
    Rat tp(1);
    for (int i = 0; i <= 4; ++i) {
      p.push_back(binomial(4, i) * tp);
      tp *= Rat(t);
    }
    pts.push_back(p);
  }
  std::vector<Rat> fourth;
  {
    Rat tp(1);
    for (int i = 0; i <= 4; ++i) {
      fourth.push_back(binomial(4, i) * tp);
      tp *= Rat(2);
    }
  }
  CHECK_FALSE(span_contains(pts, fourth));
}

TEST_CASE("rank-nullity on random matrices") {
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    size_t r = 1 + rng.below(5), c = 1 + rng.below(5);
    Matrix<Rat> m(r, c);
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < c; ++j) m(i, j) = Rat(rng.range(-4, 4));
    CHECK(matrix_rank(m) + kernel_basis(m).size() == c);
  }
}

TEST_CASE("span_contains invariant under scaling") {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<Rat>> b(2, std::vector<Rat>(4));
    std::vector<Rat> v(4);
    for (auto& row : b)
      for (auto& x : row) x = Rat(rng.range(-5, 5));
    for (auto& x : v) x = Rat(rng.range(-5, 5));
    bool base = span_contains(b, v);
    auto b2 = b;
    for (auto& x : b2[0]) x = x * Rat(3);
    auto v2 = v;
    bool vz = true;
    for (auto& x : v) vz = vz && x.is_zero();
    for (auto& x : v2) x = x * Rat(-7, 2);
    CHECK(span_contains(b2, v) == base);
    if (!vz) CHECK(span_contains(b, v2) == base);
  }
}

TEST_CASE("squarefree decisions") {
  CHECK(is_squarefree(P({-1, 0, 1})));  // x^2 - 1
  Poly<Rat> sq = P({1, -2, 1});          // (x-1)^2
  CHECK_FALSE(is_squarefree(sq));
  CHECK(squarefree_part(sq) == P({-1, 1}));
  Poly<Rat> p = P({2, -3, 0, 1});  // (x-1)^2 (x+2)
  CHECK_FALSE(is_squarefree(p));
  CHECK(squarefree_part(p) == P({-2, 1, 1}));  // (x-1)(x+2), monic
  CHECK_THROWS(is_squarefree(Poly<Rat>()));
}

TEST_CASE("squarefree part is squarefree on random products") {
  Rng rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    Poly<Rat> p = Poly<Rat>::constant(Rat(1));
    int factors = 1 + int(rng.below(3));
    for (int i = 0; i < factors; ++i) {
      Poly<Rat> lin(std::vector<Rat>{Rat(rng.range(-3, 3)), Rat(1)});
      int e = 1 + int(rng.below(3));
      for (int j = 0; j < e; ++j) p = p * lin;
    }
    CHECK(is_squarefree(squarefree_part(p)));
  }
}

TEST_CASE("rational roots") {
  CHECK(rational_roots(P({-2, 0, 2})) == std::vector<Rat>{Rat(-1), Rat(1)});
  CHECK(rational_roots(P({1, 0, 1})).empty());
  auto moduli = squarefree_factor_moduli(P({1, 0, 1}));
  REQUIRE(moduli.size() == 1);
  CHECK(moduli[0] == P({1, 0, 1}));
  CHECK(rational_roots(P({0, 0, -1, 1})) == std::vector<Rat>{Rat(0), Rat(1)});
  CHECK(squarefree_factor_moduli(P({0, 0, -1, 1})).empty());
  // 6x^2 - 5x + 1 = (2x-1)(3x-1)
  CHECK(rational_roots(P({1, -5, 6})) == std::vector<Rat>{Rat(1, 3), Rat(1, 2)});
}

TEST_CASE("integer factorization utility") {
  auto f = factor_integer(mpz_class(2 * 2 * 3 * 25));
  CHECK(f[mpz_class(2)] == 2);
  CHECK(f[mpz_class(3)] == 1);
  CHECK(f[mpz_class(5)] == 2);
  auto d = divisors(f);
  CHECK(d.size() == 18);
  CHECK(d.front() == 1);
  CHECK(d.back() == 300);
}

TEST_CASE("algebraic arithmetic mod a squarefree modulus") {
  auto m = std::make_shared<const Poly<Rat>>(P({-2, 0, 1}));  // t^2 - 2
  AlgNum t = AlgNum::generator(m);
  AlgNum two = t * t;
  CHECK(two == AlgNum(Rat(2)));
  AlgNum inv = t.inverse();  // 1/sqrt(2) = t/2
  CHECK(inv * t == AlgNum(Rat(1)));
  CHECK((t - t).is_zero());
}

TEST_CASE("zero divisors split the modulus") {
  auto m = std::make_shared<const Poly<Rat>>(P({-1, 0, 1}));  // (t-1)(t+1)
  AlgNum t = AlgNum::generator(m);
  AlgNum z = t - AlgNum(Rat(1));
  bool split = false;
  try {
    (void)z.is_zero();
  } catch (const SplitEvent& s) {
    split = true;
    CHECK(s.m1 * s.m2 == P({-1, 0, 1}));
    CHECK(s.m1.degree() == 1);
    CHECK(s.m2.degree() == 1);
  }
  CHECK(split);
  CHECK_THROWS_AS(z.inverse(), SplitEvent);
}

TEST_CASE("dynamic evaluation: per-branch ranks refine the computation") {
  // Matrix with a zero-divisor pivot over Q[t]/(t^2-1): rank differs on the
  // two branches; run_on_branches must deliver both answers consistently.
  Poly<Rat> mod = P({-1, 0, 1});
  auto results = run_on_branches(mod, [&](const std::shared_ptr<const Poly<Rat>>& mp) {
    AlgNum t = AlgNum::generator(mp);
    Matrix<AlgNum> m(2, 2);
    m(0, 0) = t - AlgNum(Rat(1));
    m(1, 1) = AlgNum(Rat(1));
    return matrix_rank(m);
  });
  REQUIRE(results.size() == 2);
  for (const auto& [leaf, rank] : results) {
    REQUIRE(leaf.degree() == 1);
    Rat root = -(leaf.coeff(0) / leaf.coeff(1));
    // evaluate the same matrix at the numeric root
    Matrix<Rat> m(2, 2);
    m(0, 0) = root - Rat(1);
    m(1, 1) = Rat(1);
    CHECK(rank == matrix_rank(m));
  }
}

TEST_CASE("power sums via Newton identities") {
  // roots 1 and 2: s0=2, s1=3, s2=5, s3=9
  Poly<Rat> m = P({2, -3, 1});
  auto s = power_sums(m, 3);
  CHECK(s[0] == Rat(2));
  CHECK(s[1] == Rat(3));
  CHECK(s[2] == Rat(5));
  CHECK(s[3] == Rat(9));
  // t^2 + 1: s1 = 0, s2 = -2, s4 = 2
  auto si = power_sums(P({1, 0, 1}), 4);
  CHECK(si[1] == Rat(0));
  CHECK(si[2] == Rat(-2));
  CHECK(si[4] == Rat(2));
}

TEST_CASE("polynomial matrix rank over Q(lambda)") {
  // [[1, lambda], [lambda, lambda^2]] has generic rank 1;
  // [[1, lambda], [lambda, 1]] has generic rank 2.
  Matrix<Poly<Rat>> a(2, 2);
  a(0, 0) = P({1});
  a(0, 1) = P({0, 1});
  a(1, 0) = P({0, 1});
  a(1, 1) = P({0, 0, 1});
  CHECK(matrix_rank(a) == 1);
  a(1, 1) = P({1});
  CHECK(matrix_rank(a) == 2);
}
