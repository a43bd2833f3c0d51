#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "xrank/matrix.hpp"
#include "xrank/rational.hpp"
#include "xrank/rng.hpp"

namespace xrank {

/// ceil(a/b) for b > 0, correct for negative a.
inline long ceil_div(long a, long b) {
  if (b <= 0) throw std::invalid_argument("ceil_div: positive divisor required");
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

/// A projective variety given by a monomial parameterization of its affine
/// cone: m affine parameters, one exponent row per ambient coordinate.
struct VarietySpec {
  enum class Kind { rnc, veronese, monomial };
  Kind kind = Kind::rnc;
  int m = 1;                               // intrinsic dimension
  std::vector<std::vector<int>> exponents; // per coordinate, m entries each
  std::string name;

  int ambient_dim() const { return int(exponents.size()) - 1; }

  static VarietySpec rational_normal_curve(int r) {
    if (r < 1) throw std::invalid_argument("rnc: r >= 1");
    VarietySpec v;
    v.kind = Kind::rnc;
    v.m = 1;
    for (int i = 0; i <= r; ++i) v.exponents.push_back({i});
    v.name = "rnc:" + std::to_string(r);
    return v;
  }

  static VarietySpec veronese(int m, int d) {
    if (m < 1 || d < 1) throw std::invalid_argument("veronese: m, d >= 1");
    VarietySpec v;
    v.kind = Kind::veronese;
    v.m = m;
    std::vector<int> e(m, 0);
    // all monomials of total degree <= d, graded lexicographic
    for (int total = 0; total <= d; ++total) {
      std::function<void(int, int)> fill = [&](int pos, int left) {
        if (pos == m) {
          if (left == 0) v.exponents.push_back(e);
          return;
        }
        for (int k = 0; k <= left; ++k) {
          e[pos] = k;
          fill(pos + 1, left - k);
        }
        e[pos] = 0;
      };
      fill(0, total);
    }
    v.name = "veronese:" + std::to_string(m) + "," + std::to_string(d);
    return v;
  }

  static VarietySpec monomial_map(int m, std::vector<std::vector<int>> exps, std::string label = "") {
    VarietySpec v;
    v.kind = Kind::monomial;
    v.m = m;
    for (const auto& row : exps)
      if (int(row.size()) != m) throw std::invalid_argument("monomial_map: exponent arity");
    v.exponents = std::move(exps);
    v.name = label.empty() ? "monomial" : label;
    return v;
  }

  std::vector<Rat> eval(const std::vector<Rat>& t) const {
    std::vector<Rat> out;
    out.reserve(exponents.size());
    for (const auto& row : exponents) {
      Rat acc(1);
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < row[j]; ++k) acc *= t[j];
      out.push_back(acc);
    }
    return out;
  }

  /// Rows spanning the affine-cone tangent space at t: the point itself and
  /// the m parameter derivatives.
  std::vector<std::vector<Rat>> tangent_rows(const std::vector<Rat>& t) const {
    std::vector<std::vector<Rat>> rows(m + 1, std::vector<Rat>(exponents.size(), Rat(0)));
    for (size_t i = 0; i < exponents.size(); ++i) {
      const auto& row = exponents[i];
      Rat val(1);
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < row[j]; ++k) val *= t[j];
      rows[0][i] = val;
      for (int j = 0; j < m; ++j) {
        if (row[j] == 0) continue;
        Rat dval = Rat(long(row[j]));
        for (int jj = 0; jj < m; ++jj) {
          int e = row[jj] - (jj == j ? 1 : 0);
          for (int k = 0; k < e; ++k) dval *= t[jj];
        }
        rows[1 + j][i] = dval;
      }
    }
    return rows;
  }
};

/// dim sigma_s of a non-degenerate curve in P^r.
inline int secant_dim_curve(int r, int s) {
  if (r < 1 || s < 1) throw std::invalid_argument("secant_dim_curve: r, s >= 1");
  return std::min(r, 2 * s - 1);
}

/// Generic rank of a non-degenerate curve in P^r.
inline int generic_rank_curve(int r) {
  if (r < 1) throw std::invalid_argument("generic_rank_curve: r >= 1");
  return int(ceil_div(r + 1, 2));
}

/// Terracini probe: dim sigma_s(Y) from the span of s tangent spaces at
/// seeded random rational points. Semicontinuity makes every probe a lower
/// bound and the maximum of three independent seeds the correct value with
/// probability one.
inline int terracini_dim(const VarietySpec& y, int s, uint64_t seed) {
  if (s < 1) throw std::invalid_argument("terracini_dim: s >= 1");
  int best = -1;
  for (uint64_t attempt = 0; attempt < 3; ++attempt) {
    Rng rng(seed + attempt * 0x100000001b3ULL);
    std::vector<std::vector<Rat>> rows;
    int failures = 0;
    for (int i = 0; i < s; ++i) {
      std::vector<Rat> t(y.m);
      for (auto& x : t) x = rng.rat();
      auto tr = y.tangent_rows(t);
      if (matrix_rank(Matrix<Rat>::from_rows(tr)) < size_t(y.m + 1)) {
        if (++failures > 10) throw std::runtime_error("terracini_dim: degenerate samples");
        --i;
        continue;
      }
      for (auto& row : tr) rows.push_back(std::move(row));
    }
    int dim = int(matrix_rank(Matrix<Rat>::from_rows(rows))) - 1;
    best = std::max(best, dim);
  }
  return best;
}

struct ProfileEntry {
  int s = 0;
  int dim = 0;
  std::string method;  // "formula" or "probe"
  uint64_t seed = 0;
};

struct SecantProfile {
  VarietySpec variety;
  std::vector<ProfileEntry> entries;
  int generic_rank = 0;  // alpha_Y

  int dim_at(int s) const {
    for (const auto& e : entries)
      if (e.s == s) return e.dim;
    throw std::out_of_range("SecantProfile: s not profiled");
  }
};

/// Profile dim sigma_s for s = 1.. until the ambient space is filled.
/// Curves use the closed formula; everything else runs the probe.
inline SecantProfile secant_profile(const VarietySpec& y, uint64_t seed, int smax = -1) {
  SecantProfile p;
  p.variety = y;
  const int n_amb = y.ambient_dim();
  for (int s = 1;; ++s) {
    ProfileEntry e;
    e.s = s;
    if (y.kind == VarietySpec::Kind::rnc) {
      e.dim = secant_dim_curve(n_amb, s);
      e.method = "formula";
    } else {
      e.dim = terracini_dim(y, s, seed);
      e.method = "probe";
      e.seed = seed;
    }
    p.entries.push_back(e);
    if (e.dim >= n_amb) {
      p.generic_rank = s;
      break;
    }
    if (smax > 0 && s >= smax) break;
    if (s > n_amb + 2) throw std::logic_error("secant_profile: dimensions fail to fill");
  }
  return p;
}

/// Profile invariants: strictly increasing until the ambient dimension, then
/// stop; increments bounded by m+1 and non-increasing.
inline bool profile_invariants_hold(const SecantProfile& p) {
  const int n_amb = p.variety.ambient_dim();
  int prev_dim = -1, prev_inc = p.variety.m + 1;
  for (const auto& e : p.entries) {
    if (e.dim > n_amb) return false;
    if (prev_dim >= 0) {
      int inc = e.dim - prev_dim;
      if (prev_dim < n_amb && inc <= 0) return false;
      if (inc > prev_inc) return false;
      prev_inc = inc;
    } else {
      if (e.dim != p.variety.m) return false;  // sigma_1 = Y
      prev_inc = p.variety.m + 1;
    }
    prev_dim = e.dim;
  }
  return true;
}

struct VeroneseRank {
  int formula = 0;          // ceil(C(m+d,m)/(m+1))
  int probed = 0;           // alpha from the probe (when requested)
  bool defective = false;   // probed != formula
};

inline int veronese_expected_rank(int m, int d) {
  if (m < 1 || d < 1) throw std::invalid_argument("veronese_expected_rank: m, d >= 1");
  mpz_class nm;
  mpz_bin_uiui(nm.get_mpz_t(), unsigned(m + d), unsigned(m));
  mpz_class q = (nm + m) / (m + 1);  // ceil
  return int(q.get_si());
}

inline VeroneseRank veronese_rank_probed(int m, int d, uint64_t seed) {
  VeroneseRank out;
  out.formula = veronese_expected_rank(m, d);
  SecantProfile p = secant_profile(VarietySpec::veronese(m, d), seed);
  out.probed = p.generic_rank;
  out.defective = out.probed != out.formula;
  return out;
}

/// Minimal s with dim sigma_s(Y) >= n+1, the quantity behind the projection
/// bound; closed formula for curves, probe otherwise.
inline int b_of_Y_v(const VarietySpec& y, int n, uint64_t seed = 20260809) {
  const int r = y.ambient_dim();
  if (r <= n) throw std::invalid_argument("b_of_Y_v: ambient must exceed n");
  if (y.kind == VarietySpec::Kind::rnc) return int(ceil_div(n + 2, 2));
  for (int s = 1; s <= r + 2; ++s) {
    if (terracini_dim(y, s, seed) >= n + 1) return s;
  }
  throw std::logic_error("b_of_Y_v: no s filled the target dimension");
}

struct TheoremBounds {
  long lower = 0;       // ceil((n+1)/(m+1))
  long upper = 0;       // alpha - ceil((v-m-1)/(m+1))
  long alpha_cap = 0;   // the rank bound through a general point
  long lt_baseline = 0; // n+1-m
};

inline TheoremBounds theorem_e0_bounds(long m, long n, long v, long alpha_y) {
  if (m < 1 || n < 1 || v < 1 || alpha_y < 1)
    throw std::invalid_argument("theorem_e0_bounds: positive inputs required");
  TheoremBounds b;
  b.lower = ceil_div(n + 1, m + 1);
  b.upper = alpha_y - ceil_div(v - m - 1, m + 1);
  b.alpha_cap = alpha_y;
  b.lt_baseline = n + 1 - m;
  return b;
}

/// When some profiled increment at s <= b is at most m, the proof machinery
/// sharpens the count: alpha_Y >= ceil((n+v-a)/m) + b with a = dim sigma_b.
/// Reported alongside the headline bounds, never instead of them.
inline std::optional<long> improved_alpha_floor(const SecantProfile& p, int n, int v, int b) {
  const int m = p.variety.m;
  bool small_increment = false;
  int prev = -1;
  for (const auto& e : p.entries) {
    if (prev >= 0 && e.s >= 2 && e.s <= b && e.dim - prev <= m) small_increment = true;
    prev = e.dim;
  }
  if (!small_increment || m < 1) return std::nullopt;
  long a = p.dim_at(b);
  return ceil_div(n + v - a, m) + b;
}

/// Annotation for the high-dimension regime: with b_sing = dim Sing(Y)
/// (user-supplied, -1 for smooth), m > (2n+2v+b_sing)/3 - 1 forces alpha = 2.
inline bool zak_range_applies(long m, long n, long v, long b_sing) {
  return 3 * (m + 1) > 2 * n + 2 * v + b_sing;
}

}  // namespace xrank
