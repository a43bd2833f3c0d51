#include <catch2/catch_amalgamated.hpp>

#include "xrank/binary_form.hpp"
#include "xrank/rng.hpp"
#include "xrank/sylvester.hpp"

using namespace xrank;

namespace {

BForm<Rat> F(std::initializer_list<long> coeffs) {
  std::vector<Rat> a;
  for (long x : coeffs) a.emplace_back(x);
  int deg = int(a.size()) - 1;
  return BForm<Rat>(deg, std::move(a));
}

BForm<Rat> monomial_form(int a, int b) {  // x^a y^b
  BForm<Rat> f = BForm<Rat>::zero(a + b);
  f.a[b] = Rat(1);
  return f;
}

BForm<Rat> random_form(Rng& rng, int d) {
  for (;;) {
    BForm<Rat> f = BForm<Rat>::zero(d);
    for (int i = 0; i <= d; ++i) f.a[i] = Rat(rng.range(-9, 9));
    if (!f.is_zero()) return f;
  }
}

}  // namespace

TEST_CASE("catalecticant matrices match the Hankel rule") {
  // x^3 at s=1: only c0 = 1
  auto m = catalecticant(F({1, 0, 0, 0}), 1);
  REQUIRE(m.rows() == 3);
  REQUIRE(m.cols() == 2);
  CHECK(m(0, 0) == Rat(1));
  CHECK(m(0, 1) == Rat(0));
  CHECK(m(1, 0) == Rat(0));
  CHECK(m(2, 1) == Rat(0));
  // x^2 y (a1 = 1, c1 = 1/3) at s=1: [[0,1/3],[1/3,0],[0,0]]
  auto m2 = catalecticant(F({0, 1, 0, 0}), 1);
  CHECK(m2(0, 1) == Rat(1, 3));
  CHECK(m2(1, 0) == Rat(1, 3));
  CHECK(m2(0, 0) == Rat(0));
  CHECK(m2(2, 0) == Rat(0));
  CHECK(m2(2, 1) == Rat(0));
  CHECK_THROWS(catalecticant(F({1, 0}), 2));
}

TEST_CASE("apolar kernel of x^2 y at s=2 contains the y^2 operator") {
  auto k = apolar_kernel(F({0, 1, 0, 0}), 2);
  REQUIRE(k.size() == 1);
  // kernel vector (0,0,1) = y^2
  CHECK(k[0].a[0] == Rat(0));
  CHECK(k[0].a[1] == Rat(0));
  CHECK(k[0].a[2] == Rat(1));
}

TEST_CASE("kernel vectors are exactly the annihilating operators") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    int d = 3 + int(rng.below(5));
    BForm<Rat> f = random_form(rng, d);
    for (int s = 1; s <= d; ++s) {
      auto kb = apolar_kernel(f, s);
      for (const auto& g : kb) CHECK(apolar_apply(g, f).is_zero());
      // a non-kernel form must not annihilate
      if (kb.size() < size_t(s + 1)) {
        BForm<Rat> probe = BForm<Rat>::zero(s);
        probe.a[0] = Rat(1);
        bool in_kernel = false;
        {
          std::vector<std::vector<Rat>> rows;
          for (const auto& g : kb) rows.push_back(g.a);
          in_kernel = !rows.empty() && span_contains(rows, probe.a);
          if (rows.empty()) in_kernel = false;
        }
        if (!in_kernel) CHECK_FALSE(apolar_apply(probe, f).is_zero());
      }
    }
  }
}

TEST_CASE("border rank examples") {
  CHECK(border_rank(F({1, 0, 0, 0, 0})) == 1);        // x^4
  CHECK(border_rank(F({0, 0, 0, 1, 0})) == 2);        // x y^3
  BForm<Rat> f = F({1, 0, 0, 0, 1});                   // x^4 + y^4
  BForm<Rat> g = power_form(4, CurveParam::at(Rat(1)));
  CHECK(border_rank(f + g) == 3);                      // x^4 + y^4 + (x+y)^4
}

TEST_CASE("sylvester rank on pinned forms") {
  // (2x+y)^5: a point of the curve
  BForm<Rat> p5 = power_form(5, CurveParam::at(Rat(1, 2))).scaled(Rat(32));
  CHECK(sylvester_rank(p5).rank == 1);
  // x y^n has rank n+1 = d
  for (int d : {3, 4, 5, 6}) {
    BForm<Rat> f = monomial_form(1, d - 1);
    auto c = sylvester_rank(f);
    CHECK(c.rank == d);
    CHECK(c.border_rank == 2);
  }
  // x^4 + y^4: rank 2, witness xy
  auto c = sylvester_rank(F({1, 0, 0, 0, 1}));
  CHECK(c.rank == 2);
  CHECK(c.border_rank == 2);
  CHECK(form_is_squarefree(c.witness));
  CHECK(apolar_apply(c.witness, F({1, 0, 0, 0, 1})).is_zero());
  // x^2 y: rank 3 with d=3, br=2
  auto c2 = sylvester_rank(F({0, 1, 0, 0}));
  CHECK(c2.rank == 3);
  CHECK(c2.border_rank == 2);
}

TEST_CASE("decompose x^4 + y^4") {
  auto cert = decompose(F({1, 0, 0, 0, 1}));
  REQUIRE(cert.points.has_value());
  const auto& dec = *cert.points;
  REQUIRE(dec.size() == 2);
  REQUIRE(dec.families.empty());
  REQUIRE(dec.points.size() == 2);
  bool has_x4 = false, has_y4 = false;
  for (const auto& pt : dec.points) {
    if (pt.param == CurveParam::at(Rat(0))) {
      has_x4 = true;
      CHECK(pt.coeff == Rat(1));
    }
    if (pt.param == CurveParam::infinity()) {
      has_y4 = true;
      CHECK(pt.coeff == Rat(1));
    }
  }
  CHECK(has_x4);
  CHECK(has_y4);
}

TEST_CASE("decompose (x+y)^3 + (x-y)^3") {
  BForm<Rat> f = power_form(3, CurveParam::at(Rat(1))) + power_form(3, CurveParam::at(Rat(-1)));
  auto cert = decompose(f);
  REQUIRE(cert.points.has_value());
  CHECK(cert.rank == 2);
  REQUIRE(cert.points->points.size() == 2);
  for (const auto& pt : cert.points->points) {
    CHECK((pt.param == CurveParam::at(Rat(1)) || pt.param == CurveParam::at(Rat(-1))));
    CHECK(pt.coeff == Rat(1));
  }
}

TEST_CASE("decompose x^2 y exactly") {
  BForm<Rat> f = F({0, 1, 0, 0});
  auto cert = decompose(f);
  REQUIRE(cert.points.has_value());
  CHECK(cert.rank == 3);
  CHECK(cert.points->size() == 3);
  CHECK(evaluate_decomposition(3, *cert.points) == f);
}

TEST_CASE("decompose monomials through trace families") {
  // x^2 y^2 has rank 3 but no rational 3-point decomposition; the witness
  // family over its quadratic modulus must still re-evaluate exactly.
  BForm<Rat> f = monomial_form(2, 2);
  auto cert = decompose(f);
  CHECK(cert.rank == 3);
  REQUIRE(cert.points.has_value());
  CHECK(cert.points->size() == 3);
  CHECK(evaluate_decomposition(4, *cert.points) == f);
  // apolar-only on request
  auto apolar_only = decompose(f, false);
  CHECK_FALSE(apolar_only.points.has_value());
}

TEST_CASE("witness soundness and dichotomy on a random corpus") {
  Rng rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    int d = 2 + int(rng.below(7));  // d <= 8
    BForm<Rat> f = random_form(rng, d);
    auto c = sylvester_rank(f);
    CHECK((c.rank == c.border_rank || c.rank == d - c.border_rank + 2));
    CHECK(form_is_squarefree(c.witness));
    CHECK(apolar_apply(c.witness, f).is_zero());
    auto dec = decompose(f);
    REQUIRE(dec.points.has_value());
    CHECK(dec.points->size() == c.rank);
    CHECK(evaluate_decomposition(d, *dec.points) == f);
    ++checked;
  }
  CHECK(checked == 60);
}

TEST_CASE("kernel dimensions grow monotonically and rank is the first squarefree s") {
  Rng rng(7);
  for (int trial = 0; trial < 15; ++trial) {
    int d = 3 + int(rng.below(5));
    BForm<Rat> f = random_form(rng, d);
    auto c = sylvester_rank(f);
    size_t prev = 0;
    for (int s = 1; s <= d; ++s) {
      auto kb = apolar_kernel(f, s);
      CHECK(kb.size() >= prev);
      prev = kb.size();
      if (s < c.rank) {
        auto w = find_squarefree_in_span(kb);
        CHECK_FALSE(w.has_value());
      }
    }
  }
}

TEST_CASE("GL(2) equivariance of rank and border rank") {
  Rng rng(55);
  for (int trial = 0; trial < 12; ++trial) {
    int d = 3 + int(rng.below(4));
    BForm<Rat> f = random_form(rng, d);
    Rat a(rng.range(-3, 3)), b(rng.range(-3, 3)), c(rng.range(-3, 3)), e(rng.range(-3, 3));
    if ((a * e - b * c).is_zero()) continue;
    BForm<Rat> g = substitute(f, a, b, c, e);
    CHECK(border_rank(g) == border_rank(f));
    CHECK(sylvester_rank(g).rank == sylvester_rank(f).rank);
  }
}

TEST_CASE("generic odd-degree forms have rank k+1") {
  Rng rng(101);
  int hits = 0, total = 0;
  for (int trial = 0; trial < 120; ++trial) {
    int k = 1 + int(rng.below(3));  // d = 3, 5, 7
    int d = 2 * k + 1;
    BForm<Rat> f = random_form(rng, d);
    ++total;
    if (sylvester_rank(f).rank == k + 1) ++hits;
  }
  CHECK(total >= 100);
  CHECK(hits * 100 >= total * 95);
}

TEST_CASE("osculating basis") {
  auto b0 = osculating_basis(4, CurveParam::at(Rat(0)), 0);
  REQUIRE(b0.size() == 1);
  CHECK(b0[0] == F({1, 0, 0, 0, 0}));  // x^4
  auto b1 = osculating_basis(4, CurveParam::at(Rat(0)), 1);
  REQUIRE(b1.size() == 2);
  CHECK(b1[1] == F({0, 1, 0, 0, 0}));  // x^3 y
  // t = 2: every span element outside <2Q> has rank d+1-2 = 3
  auto b2 = osculating_basis(4, CurveParam::at(Rat(0)), 2);
  REQUIRE(b2.size() == 3);
  CHECK(b2[2] == F({0, 0, 1, 0, 0}));  // x^2 y^2
  Rng rng(5);
  for (int trial = 0; trial < 8; ++trial) {
    BForm<Rat> f = b2[2].scaled(Rat(rng.range(1, 5)));
    f = f + b2[0].scaled(Rat(rng.range(-5, 5)));
    f = f + b2[1].scaled(Rat(rng.range(-5, 5)));
    CHECK(sylvester_rank(f).rank == 3);
  }
  // infinite parameter: l = y, m = x
  auto binf = osculating_basis(3, CurveParam::infinity(), 1);
  CHECK(binf[0] == F({0, 0, 0, 1}));  // y^3
  CHECK(binf[1] == F({0, 0, 1, 0}));  // x y^2
  CHECK_THROWS(osculating_basis(3, CurveParam::at(Rat(0)), 5));
}

TEST_CASE("power form convention: witness root to curve point") {
  // witness xy for x^4+y^4: root [1:0] -> x^4 (param t=0), root [0:1] -> y^4
  CHECK(power_form(4, CurveParam::at(Rat(0))) == F({1, 0, 0, 0, 0}));
  CHECK(power_form(4, CurveParam::infinity()) == F({0, 0, 0, 0, 1}));
  CHECK(power_form(2, CurveParam::at(Rat(3))) == F({1, 6, 9}));
}

TEST_CASE("sylvester over an algebraic extension") {
  // f = (x + ty)^3 over Q[t]/(t^2-2): a curve point, rank 1 per branch
  auto mod = std::make_shared<const Poly<Rat>>(Poly<Rat>(std::vector<Rat>{Rat(-2), Rat(0), Rat(1)}));
  AlgNum t = AlgNum::generator(mod);
  BForm<AlgNum> f = BForm<AlgNum>::zero(3);
  AlgNum one{Rat(1)};
  f.a[0] = one;
  f.a[1] = t * AlgNum(Rat(3));
  f.a[2] = t * t * AlgNum(Rat(3));
  f.a[3] = t * t * t;
  auto c = sylvester_rank(f);
  CHECK(c.rank == 1);
  CHECK(c.border_rank == 1);
}
