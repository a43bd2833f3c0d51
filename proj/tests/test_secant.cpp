#include <catch2/catch_amalgamated.hpp>

#include "xrank/secant.hpp"

using namespace xrank;

TEST_CASE("curve secant dimension formula") {
  CHECK(secant_dim_curve(5, 1) == 1);
  CHECK(secant_dim_curve(5, 3) == 5);
  CHECK(secant_dim_curve(9, 4) == 7);
}

TEST_CASE("curve generic rank") {
  CHECK(generic_rank_curve(4) == 3);
  CHECK(generic_rank_curve(5) == 3);
  CHECK(generic_rank_curve(1) == 1);
}

TEST_CASE("veronese expected rank formula") {
  CHECK(veronese_expected_rank(1, 5) == 3);
  CHECK(veronese_expected_rank(2, 3) == 4);
  CHECK(veronese_expected_rank(2, 4) == 5);
}

TEST_CASE("terracini probe equals the curve formula") {
  for (int r = 1; r <= 10; ++r) {
    VarietySpec y = VarietySpec::rational_normal_curve(r);
    for (int s = 1; s <= 5; ++s) {
      for (uint64_t seed : {11ULL, 22ULL, 33ULL}) {
        CHECK(terracini_dim(y, s, seed) == secant_dim_curve(r, s));
      }
    }
  }
}

TEST_CASE("terracini probe basics") {
  // sigma_1 = Y for several varieties
  CHECK(terracini_dim(VarietySpec::rational_normal_curve(7), 1, 5) == 1);
  CHECK(terracini_dim(VarietySpec::veronese(2, 2), 1, 5) == 2);
  CHECK(terracini_dim(VarietySpec::veronese(3, 2), 1, 5) == 3);
  // rational normal curve r=7, s=3: min(7, 5)
  CHECK(terracini_dim(VarietySpec::rational_normal_curve(7), 3, 9) == 5);
  // classical defective cases
  CHECK(terracini_dim(VarietySpec::veronese(2, 2), 2, 9) == 4);   // expected 5
  CHECK(terracini_dim(VarietySpec::veronese(2, 4), 5, 9) == 13);  // expected 14
}

TEST_CASE("veronese defectivity detected by the probe, not a table") {
  auto v23 = veronese_rank_probed(2, 3, 7);
  CHECK(v23.formula == 4);
  CHECK(v23.probed == 4);
  CHECK_FALSE(v23.defective);
  auto v24 = veronese_rank_probed(2, 4, 7);
  CHECK(v24.formula == 5);
  CHECK(v24.probed == 6);
  CHECK(v24.defective);
  auto v22 = veronese_rank_probed(2, 2, 7);
  CHECK(v22.formula == 2);
  CHECK(v22.probed == 3);
  CHECK(v22.defective);
}

TEST_CASE("profiles satisfy the monotonicity invariants") {
  for (int r = 2; r <= 10; r += 2) {
    auto p = secant_profile(VarietySpec::rational_normal_curve(r), 3);
    CHECK(profile_invariants_hold(p));
    CHECK(p.generic_rank == generic_rank_curve(r));
  }
  for (auto [m, d] : std::vector<std::pair<int, int>>{{1, 4}, {2, 2}, {2, 3}, {3, 2}}) {
    auto p = secant_profile(VarietySpec::veronese(m, d), 41);
    CHECK(profile_invariants_hold(p));
  }
}

TEST_CASE("b(Y,v): curve formula and probe agreement") {
  // curve in P^{n+1}: b = ceil((n+2)/2)
  for (int n = 2; n <= 8; ++n) {
    VarietySpec y = VarietySpec::rational_normal_curve(n + 1);
    CHECK(b_of_Y_v(y, n) == ceil_div(n + 2, 2));
  }
  // veronese (2,3) in P^9 with n = 7: minimal s with dim sigma_s >= 8 is 3
  CHECK(b_of_Y_v(VarietySpec::veronese(2, 3), 7, 13) == 3);
  // dim sigma_1 = 1 < n+1 for curves with n >= 2, so b >= 2
  CHECK(b_of_Y_v(VarietySpec::rational_normal_curve(5), 4) >= 2);
}

TEST_CASE("theorem bounds arithmetic") {
  auto b1 = theorem_e0_bounds(1, 6, 1, 4);
  CHECK(b1.lower == 4);
  CHECK(b1.upper == 4);
  auto b2 = theorem_e0_bounds(1, 4, 3, 4);
  CHECK(b2.lower == 3);
  CHECK(b2.upper == 3);
  auto b3 = theorem_e0_bounds(4, 4, 1, 3);
  CHECK(b3.lower == 1);
  CHECK(b3.lt_baseline == 1);
  CHECK(b3.alpha_cap == 3);
}

TEST_CASE("b lies inside the theorem sandwich for profiled varieties") {
  for (int r = 3; r <= 10; ++r) {
    for (int v = 1; v <= r - 2; ++v) {
      int n = r - v;
      VarietySpec y = VarietySpec::rational_normal_curve(r);
      int b = b_of_Y_v(y, n);
      auto tb = theorem_e0_bounds(1, n, v, generic_rank_curve(r));
      CHECK(tb.lower <= b);
      CHECK(b <= tb.upper);
    }
  }
}

TEST_CASE("improved alpha floor annotation") {
  // rnc r=4: dims 1,3,4: increment 1 <= m at s=3=b for n=2,v=2
  auto p = secant_profile(VarietySpec::rational_normal_curve(4), 3);
  auto ann = improved_alpha_floor(p, 2, 2, 3);
  REQUIRE(ann.has_value());
  CHECK(*ann == 3);
  // no small increment up to b = 2: no annotation
  auto none = improved_alpha_floor(p, 2, 2, 2);
  CHECK_FALSE(none.has_value());
}

TEST_CASE("zak range annotation") {
  CHECK(zak_range_applies(4, 2, 2, -1));
  CHECK_FALSE(zak_range_applies(1, 4, 1, -1));
}

TEST_CASE("custom monomial maps run through the probe") {
  // the cone over P^1 x P^1 embedded by bidegree (1,1): sigma_2 fills P^3
  VarietySpec seg = VarietySpec::monomial_map(
      2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}, "segre:1,1");
  CHECK(terracini_dim(seg, 1, 3) == 2);
  CHECK(terracini_dim(seg, 2, 3) == 3);
}
