#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "xrank/binary_form.hpp"
#include "xrank/matrix.hpp"
#include "xrank/projection.hpp"
#include "xrank/roots.hpp"

namespace xrank {

/// n + 1 - m: the rank bound for a subspace disjoint from an m-dimensional
/// variety in P^n.
inline int subspace_rank_upper(int n, int m) {
  if (m < 1 || m > n - 1) throw std::invalid_argument("subspace_rank_upper: 1 <= m <= n-1");
  return n + 1 - m;
}

struct I3Bound {
  int value = 0;    // usable bound, capped at the trivial n+1
  int raw = 0;      // n + 2 - m + e
  bool clamped = false;
};

/// n + 2 - m + dim<(X cap V)_red>, with e = -1 encoding empty intersection.
inline I3Bound subspace_rank_bound_i3(int n, int m, int e) {
  if (e < -1) throw std::invalid_argument("subspace_rank_bound_i3: e >= -1");
  I3Bound b;
  b.raw = n + 2 - m + e;
  b.value = std::min(b.raw, n + 1);
  b.clamped = b.raw > n + 1;
  return b;
}

struct LinearSubspace {
  int ambient = 0;  // n
  std::vector<std::vector<Rat>> basis;  // k+1 independent rows, length n+1

  LinearSubspace(int n, std::vector<std::vector<Rat>> rows)
      : ambient(n), basis(std::move(rows)) {
    for (const auto& r : basis)
      if (int(r.size()) != n + 1) throw std::invalid_argument("LinearSubspace: row length");
    if (matrix_rank(Matrix<Rat>::from_rows(basis)) != basis.size())
      throw std::invalid_argument("LinearSubspace: dependent basis");
  }
  int dim() const { return int(basis.size()) - 1; }
};

// ---------------------------------------------------------------------------
// Sampled curve and the brute-force rank oracle.
//
// Subset searches run modulo the Mersenne prime 2^61 - 1 on primitive
// integer point vectors. Every modular hit is confirmed in exact rational
// arithmetic before it counts, modularly dependent points are pruned only
// after an exact dependence check, and paths that lose modular information
// fall back to exact leaf checks, so the reported minimum is exact.
// ---------------------------------------------------------------------------

namespace oracle {

constexpr uint64_t kPrime = 2305843009213693951ULL;  // 2^61 - 1

/// Mersenne reduction: 2^61 = 1 (mod p), so fold the high bits once.
/// Inputs must already be reduced below p.
inline uint64_t mulmod(uint64_t a, uint64_t b) {
  unsigned __int128 x = (unsigned __int128)(a)*b;
  uint64_t s = uint64_t(x & kPrime) + uint64_t(x >> 61);
  return s >= kPrime ? s - kPrime : s;
}
inline uint64_t submod(uint64_t a, uint64_t b) { return a >= b ? a - b : a + kPrime - b; }

}  // namespace oracle

/// Primitive integer representative of a rational projective point, first
/// nonzero coordinate positive.
inline std::vector<mpz_class> primitive_vector(const std::vector<Rat>& v) {
  mpz_class l(1);
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.den().get_mpz_t());
  std::vector<mpz_class> z;
  z.reserve(v.size());
  mpz_class g(0);
  for (const auto& x : v) {
    z.push_back(x.num() * (l / x.den()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.back().get_mpz_t());
  }
  if (g == 0) throw std::invalid_argument("primitive_vector: zero vector");
  for (auto& x : z) x /= g;
  for (const auto& x : z) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : z) y = -y;
    break;
  }
  return z;
}

/// Deterministic sample of the projected curve: forced extra parameters
/// first, then the point at infinity, then the grid t = p/q with |p| <= B,
/// 1 <= q <= B in increasing order, B grown until at least min_points
/// parameters exist. Projectively equal images are deduplicated, so a nodal
/// point appears once.
class CurveSample {
 public:
  CurveSample(const ProjectionCenter& center, int min_points,
              std::vector<CurveParam> extras = {}, uint64_t seed = 0)
      : center_(center), seed_(seed) {
    long bound = 1;
    while (grid_count(bound) + 1 < min_points) ++bound;
    bound_ = bound;
    std::vector<CurveParam> order;
    for (const auto& q : extras) push_unique(order, q);
    push_unique(order, CurveParam::infinity());
    std::vector<Rat> grid;
    for (long den = 1; den <= bound; ++den)
      for (long num = -bound; num <= bound; ++num) {
        if (std::gcd(std::labs(num), den) != 1) continue;
        grid.push_back(Rat(num, den));
      }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    for (const auto& t : grid) push_unique(order, CurveParam::at(t));

    for (const auto& q : order) {
      std::vector<Rat> pt = center_.curve_point(q);
      std::vector<mpz_class> z = primitive_vector(pt);
      bool dup = false;
      for (const auto& seen : zpoints_)
        if (seen == z) {
          dup = true;
          break;
        }
      if (dup) continue;
      params_.push_back(q);
      rpoints_.push_back(normalize_projective(pt));
      zpoints_.push_back(std::move(z));
    }
    for (const auto& z : zpoints_) {
      std::vector<uint64_t> row;
      row.reserve(z.size());
      for (const auto& x : z)
        row.push_back(uint64_t(mpz_fdiv_ui(x.get_mpz_t(), oracle::kPrime)));
      mpoints_.push_back(std::move(row));
    }
  }

  const ProjectionCenter& center() const { return center_; }
  size_t size() const { return params_.size(); }
  long grid_bound() const { return bound_; }
  uint64_t seed() const { return seed_; }
  const std::vector<CurveParam>& params() const { return params_; }
  const std::vector<std::vector<Rat>>& points() const { return rpoints_; }
  const std::vector<std::vector<uint64_t>>& mod_points() const { return mpoints_; }

 private:
  ProjectionCenter center_;
  uint64_t seed_ = 0;
  long bound_ = 1;
  std::vector<CurveParam> params_;
  std::vector<std::vector<Rat>> rpoints_;
  std::vector<std::vector<mpz_class>> zpoints_;
  std::vector<std::vector<uint64_t>> mpoints_;

  static void push_unique(std::vector<CurveParam>& v, const CurveParam& q) {
    for (const auto& x : v)
      if (x == q) return;
    v.push_back(q);
  }
  static long grid_count(long b) {
    long c = 0;
    for (long den = 1; den <= b; ++den)
      for (long num = -b; num <= b; ++num)
        if (std::gcd(std::labs(num), den) == 1) ++c;
    return c;
  }
};

struct OracleResult {
  bool found = false;
  int rank = 0;                // minimal subset size, valid when found
  std::vector<size_t> subset;  // witnessing sample indices
};

namespace oracle {

constexpr size_t kMaxWidth = 12;   // ambient coordinates (n+1), n <= 11
constexpr size_t kMaxTargets = 8;  // simultaneous membership targets

/// Minimal subset of sample points whose span contains all target vectors,
/// searched size by size in lexicographic order with early termination.
/// All per-node state lives in preallocated per-depth workspaces.
class SubsetSearch {
 public:
  SubsetSearch(const CurveSample& sample, std::vector<std::vector<Rat>> targets)
      : sample_(sample), rtargets_(std::move(targets)) {
    width_ = sample.mod_points().empty() ? 0 : sample.mod_points()[0].size();
    if (width_ > kMaxWidth) throw std::invalid_argument("SubsetSearch: ambient too large");
    if (rtargets_.size() > kMaxTargets) throw std::invalid_argument("SubsetSearch: too many targets");
    ntargets_ = rtargets_.size();
    for (size_t t = 0; t < ntargets_; ++t) {
      auto z = primitive_vector(rtargets_[t]);
      for (size_t i = 0; i < width_; ++i)
        base_res_[t * kMaxWidth + i] = uint64_t(mpz_fdiv_ui(z[i].get_mpz_t(), kPrime));
    }
  }

  OracleResult run(int cap) {
    if (cap > 8) throw std::invalid_argument("brute force: cap exceeds the combinatorial guard");
    for (int s = int(std::max<size_t>(1, ntargets_)); s <= cap; ++s) {
      chosen_.clear();
      ech_size_ = 0;
      for (size_t i = 0; i < ntargets_ * kMaxWidth; ++i) res_[0][i] = base_res_[i];
      if (search(0, s, 0, false)) {
        OracleResult r;
        r.found = true;
        r.rank = s;
        r.subset = found_;
        return r;
      }
    }
    return {};
  }

 private:
  const CurveSample& sample_;
  std::vector<std::vector<Rat>> rtargets_;
  size_t width_ = 0;
  size_t ntargets_ = 0;
  std::vector<size_t> chosen_;
  std::vector<size_t> found_;
  size_t ech_size_ = 0;
  uint64_t base_res_[kMaxTargets * kMaxWidth] = {};
  uint64_t res_[9][kMaxTargets * kMaxWidth];      // per depth
  uint64_t ech_[8][kMaxWidth];                    // echelon rows
  size_t piv_[8];
  uint64_t row_[9][kMaxWidth];                    // per-depth scratch row

  /// v := r[pivot]*v - v[pivot]*r over the prime field (no inversions).
  void eliminate(uint64_t* v, const uint64_t* r, size_t pivot) const {
    uint64_t vp = v[pivot];
    if (vp == 0) return;
    uint64_t rp = r[pivot];
    for (size_t i = 0; i < width_; ++i) v[i] = submod(mulmod(v[i], rp), mulmod(vp, r[i]));
  }

  bool exact_hit() const {
    std::vector<std::vector<Rat>> rows;
    rows.reserve(chosen_.size());
    for (size_t i : chosen_) rows.push_back(sample_.points()[i]);
    for (const auto& t : rtargets_)
      if (!span_contains(rows, t)) return false;
    return true;
  }

  bool residuals_zero(size_t depth) const {
    for (size_t t = 0; t < ntargets_; ++t)
      for (size_t i = 0; i < width_; ++i)
        if (res_[depth][t * kMaxWidth + i]) return false;
    return true;
  }

  bool search(size_t start, int slots, size_t depth, bool degenerate) {
    if (slots == 0) {
      if ((degenerate || residuals_zero(depth)) && exact_hit()) {
        found_ = chosen_;
        return true;
      }
      return false;
    }
    const auto& mpts = sample_.mod_points();
    for (size_t i = start; i + size_t(slots) <= mpts.size(); ++i) {
      uint64_t* row = row_[depth];
      const auto& src = mpts[i];
      for (size_t k = 0; k < width_; ++k) row[k] = src[k];
      for (size_t k = 0; k < ech_size_; ++k) eliminate(row, ech_[k], piv_[k]);
      size_t piv = 0;
      while (piv < width_ && row[piv] == 0) ++piv;
      bool child_degenerate = degenerate;
      bool added = false;
      if (piv == width_) {
        // modular dependence: prune when exact, else flag the path and rely
        // on exact checks at its leaves
        std::vector<std::vector<Rat>> rows;
        rows.reserve(chosen_.size());
        for (size_t j : chosen_) rows.push_back(sample_.points()[j]);
        if (!rows.empty() && span_contains(rows, sample_.points()[i])) continue;
        child_degenerate = true;
      } else {
        for (size_t k = 0; k < width_; ++k) ech_[ech_size_][k] = row[k];
        piv_[ech_size_] = piv;
        ++ech_size_;
        added = true;
      }
      chosen_.push_back(i);
      for (size_t t = 0; t < ntargets_; ++t) {
        uint64_t* dst = res_[depth + 1] + t * kMaxWidth;
        const uint64_t* s0 = res_[depth] + t * kMaxWidth;
        for (size_t k = 0; k < width_; ++k) dst[k] = s0[k];
        if (added) eliminate(dst, ech_[ech_size_ - 1], piv_[ech_size_ - 1]);
      }
      bool hit = search(i + 1, slots - 1, depth + 1, child_degenerate);
      chosen_.pop_back();
      if (added) --ech_size_;
      if (hit) return true;
    }
    return false;
  }
};

}  // namespace oracle

/// Minimal number of sample points whose span contains P, up to cap. An
/// upper bound for the X-rank; no result is reported as "not found", never
/// as a guessed value.
inline OracleResult brute_force_point_rank(const CurveSample& sample,
                                           const std::vector<Rat>& p, int cap) {
  oracle::SubsetSearch s(sample, {p});
  return s.run(cap);
}

/// Minimal number of sample points whose span contains the whole subspace.
inline OracleResult brute_force_subspace_rank(const CurveSample& sample,
                                              const LinearSubspace& v, int cap) {
  if (v.dim() + 1 > cap)
    throw std::invalid_argument("brute_force_subspace_rank: cap below dim(V)+1");
  oracle::SubsetSearch s(sample, v.basis);
  return s.run(cap);
}

// ---------------------------------------------------------------------------
// Line versus curve analysis.
// ---------------------------------------------------------------------------

namespace detail {

/// gcd of a list of binary forms (zero forms skipped).
inline std::optional<BForm<Rat>> forms_gcd(const std::vector<BForm<Rat>>& forms) {
  std::optional<BForm<Rat>> g;
  for (const auto& f : forms) {
    if (f.is_zero()) continue;
    g = g ? form_gcd(*g, f) : f;
    if (g->tpoly().degree() == 0 && g->inf_mult() == 0) break;
  }
  return g;
}

/// The size-(k+1) minors of [rows | pi(t)], expanded along the pi row, as
/// binary forms in the curve parameter. Their common vanishing locus is the
/// set of parameters mapping into the span of the rows.
inline std::vector<BForm<Rat>> incidence_minors(const std::vector<std::vector<Rat>>& rows,
                                                const std::vector<BForm<Rat>>& pi) {
  const size_t k = rows.size();
  const size_t n1 = pi.size();
  std::vector<size_t> cols(k + 1);
  std::vector<BForm<Rat>> out;
  std::function<void(size_t, size_t)> rec = [&](size_t start, size_t depth) {
    if (depth == k + 1) {
      BForm<Rat> minor = BForm<Rat>::zero(pi[0].deg);
      for (size_t j = 0; j <= k; ++j) {
        Matrix<Rat> sub(k, k);
        for (size_t a = 0; a < k; ++a) {
          size_t cc = 0;
          for (size_t b = 0; b <= k; ++b) {
            if (b == j) continue;
            sub(a, cc++) = rows[a][cols[b]];
          }
        }
        Rat cof = bareiss_det(sub);
        if ((k + j) % 2 == 1) cof = -cof;
        if (!cof.is_zero()) minor = minor + pi[cols[j]].scaled(cof);
      }
      out.push_back(std::move(minor));
      return;
    }
    for (size_t c = start; c < n1; ++c) {
      cols[depth] = c;
      rec(c + 1, depth + 1);
    }
  };
  rec(0, 0);
  return out;
}

inline int ord_at(const BForm<Rat>& f, const CurveParam& q) {
  if (f.is_zero()) throw std::invalid_argument("ord_at: zero form");
  if (q.infinite) return f.inf_mult();
  Poly<Rat> p = f.tpoly();
  Poly<Rat> lin(std::vector<Rat>{-q.t, Rat(1)});
  int ord = 0;
  while (!p.is_zero()) {
    auto [quo, rem] = divmod(p, lin);
    if (!rem.is_zero()) break;
    ++ord;
    p = quo;
  }
  return ord;
}

inline int ord_at_modulus(const BForm<Rat>& f, const Poly<Rat>& m) {
  Poly<Rat> p = f.tpoly();
  int ord = 0;
  while (!p.is_zero()) {
    auto [quo, rem] = divmod(p, m);
    if (!rem.is_zero()) break;
    ++ord;
    p = quo;
  }
  return ord;
}

/// Parameters of the curve mapping into the span of the rows, grouped as
/// rational values, conjugate families, and the point at infinity.
struct SpanFiber {
  int distinct = 0;
  std::vector<CurveParam> rational;
  std::vector<Poly<Rat>> moduli;
  bool has_infinity = false;
};

inline SpanFiber params_in_span(const std::vector<std::vector<Rat>>& rows,
                                const std::vector<BForm<Rat>>& pi) {
  auto g = forms_gcd(incidence_minors(rows, pi));
  if (!g) throw std::logic_error("params_in_span: degenerate span");
  SpanFiber out;
  Poly<Rat> p = g->tpoly();
  if (p.degree() >= 1) {
    for (const Rat& r : rational_roots(p)) out.rational.push_back(CurveParam::at(r));
    out.moduli = squarefree_factor_moduli(p);
  }
  out.distinct = int(out.rational.size());
  for (const auto& m : out.moduli) out.distinct += m.degree();
  if (g->inf_mult() > 0) {
    out.has_infinity = true;
    ++out.distinct;
  }
  return out;
}

/// Components of the linear projection away from the span of `rows`, pulled
/// back to the curve parameter: reduce pi against the RREF of the rows and
/// keep the complementary coordinates.
inline std::vector<BForm<Rat>> projected_components(const std::vector<std::vector<Rat>>& rows,
                                                    const std::vector<BForm<Rat>>& pi) {
  Matrix<Rat> rref = Matrix<Rat>::from_rows(rows);
  std::vector<size_t> piv = rref_in_place(rref);
  if (piv.size() != rows.size()) throw std::invalid_argument("projected_components: dependent rows");
  std::vector<bool> is_piv(pi.size(), false);
  for (size_t p : piv) is_piv[p] = true;
  std::vector<BForm<Rat>> comps;
  for (size_t i = 0; i < pi.size(); ++i) {
    if (is_piv[i]) continue;
    BForm<Rat> c = pi[i];
    for (size_t r = 0; r < piv.size(); ++r) {
      Rat f = rref(r, i);
      if (!f.is_zero()) c = c - pi[piv[r]].scaled(f);
    }
    comps.push_back(std::move(c));
  }
  return comps;
}

}  // namespace detail

struct LineIntersection {
  int length = 0;         // scheme length of L cap X
  int reduced_count = 0;  // # distinct intersection points
  std::vector<CurveParam> rational_params;   // includes infinity if present
  std::vector<Poly<Rat>> irrational_moduli;  // conjugate intersection params
  int infinity_mult = 0;
  BForm<Rat> scheme_form;  // gcd of the incidence minors, degree = length
};

/// Scheme-theoretic intersection of a line with the projected curve, read
/// off the gcd of the 3x3 incidence minors in the curve parameter.
inline LineIntersection intersect_line(const ProjectionCenter& center,
                                       const LinearSubspace& line) {
  if (line.dim() != 1) throw std::invalid_argument("intersect_line: not a line");
  if (line.ambient != center.n()) throw std::invalid_argument("intersect_line: ambient mismatch");
  auto g = detail::forms_gcd(detail::incidence_minors(line.basis, center.symbolic_coords()));
  if (!g) throw std::logic_error("intersect_line: all incidence minors vanish");
  LineIntersection out;
  out.scheme_form = *g;
  out.length = g->tpoly().degree() + g->inf_mult();
  out.infinity_mult = g->inf_mult();
  Poly<Rat> p = g->tpoly();
  if (p.degree() >= 1) {
    for (const Rat& r : rational_roots(p)) out.rational_params.push_back(CurveParam::at(r));
    out.irrational_moduli = squarefree_factor_moduli(p);
  }
  int distinct = int(out.rational_params.size());
  for (const auto& m : out.irrational_moduli) distinct += m.degree();
  if (out.infinity_mult > 0) {
    ++distinct;
    out.rational_params.push_back(CurveParam::infinity());
  }
  out.reduced_count = distinct;
  return out;
}

struct LineAnalysis {
  int n = 0, d = 0;
  LineIntersection intersection;

  int b_l = 0, deg_c_l = 0;
  bool c_l_rational_normal = false;

  bool q_side_available = false;
  std::vector<CurveParam> q_preimages;
  std::vector<Poly<Rat>> q_preimage_moduli;
  int m_x_q = 0;
  int b_q = 0, deg_c_q = 0;
  bool identity_holds = false;
  bool length_two_route_ok = false;
  bool mult_two_route_ok = false;
  bool line_in_tangent_space = false;

  enum class Conclusion { disjoint, two_points, single_point_b2, single_point_open };
  Conclusion conclusion = Conclusion::disjoint;
  bool rank_exact = false;
  int rank_value = 0;  // exact value or upper bound
  int sandwich_lo = 0, sandwich_hi = 0;
  std::string provenance;
};

/// Theorem-style line analysis: intersection scheme, projection degrees,
/// image degrees with the degree identity, the rational-normal test for the
/// image, and the rank conclusion with provenance.
inline LineAnalysis line_curve_analysis(const ProjectionCenter& center,
                                        const LinearSubspace& line) {
  LineAnalysis a;
  a.n = center.n();
  a.d = center.degree();
  if (a.n < 3) throw std::invalid_argument("line_curve_analysis: need n >= 3");
  a.intersection = intersect_line(center, line);
  const std::vector<BForm<Rat>> pi = center.symbolic_coords();

  // projection away from L: two-route length check and image data
  size_t image_span_rank = 0;
  {
    std::vector<BForm<Rat>> comps = detail::projected_components(line.basis, pi);
    auto g = detail::forms_gcd(comps);
    int glen = g ? (g->tpoly().degree() + g->inf_mult()) : -1;
    a.length_two_route_ok = (glen == a.intersection.length);
    if (a.intersection.length < a.d && g) {
      int dd = a.d - a.intersection.length;
      Matrix<Rat> coeffs(comps.size(), size_t(dd) + 1);
      for (size_t i = 0; i < comps.size(); ++i) {
        Poly<Rat> quo = comps[i].tpoly() / g->tpoly();
        for (int j = 0; j <= quo.degree(); ++j) coeffs(i, j) = quo.coeff(j);
      }
      image_span_rank = matrix_rank(coeffs);
    }
  }

  // b_L by fiber counting over three generic image points
  {
    int best = 0;
    int used = 0;
    for (long t0 = 10; used < 3; ++t0) {
      CurveParam q = CurveParam::at(Rat(t0));
      bool special = false;
      for (const auto& ip : a.intersection.rational_params) special = special || (ip == q);
      if (special) continue;
      ++used;
      std::vector<std::vector<Rat>> rows = line.basis;
      rows.push_back(center.curve_point(q));
      auto fiber = detail::params_in_span(rows, pi);
      best = std::max(best, fiber.distinct - a.intersection.reduced_count);
    }
    a.b_l = best;
  }
  if (a.b_l <= 0) throw std::logic_error("line_curve_analysis: fiber count failed");
  if ((a.d - a.intersection.length) % a.b_l != 0)
    throw std::logic_error("line_curve_analysis: degree formula is not integral");
  a.deg_c_l = (a.d - a.intersection.length) / a.b_l;
  a.c_l_rational_normal = (a.deg_c_l == a.n - 2) && (image_span_rank == size_t(a.n - 1));

  if (a.intersection.length == 0) {
    a.conclusion = LineAnalysis::Conclusion::disjoint;
    a.rank_exact = false;
    a.rank_value = a.n;
    a.provenance = "i1.1";
    return a;
  }
  if (a.intersection.reduced_count >= 2) {
    a.conclusion = LineAnalysis::Conclusion::two_points;
    a.rank_exact = true;
    a.rank_value = 2;
    a.provenance = "i1.2";
    return a;
  }

  // single reduced intersection point Q; its Q-side data needs a rational
  // representation of Q
  bool q_rational = !a.intersection.rational_params.empty();
  if (q_rational) {
    a.q_side_available = true;
    std::vector<Rat> qpt =
        normalize_projective(center.curve_point(a.intersection.rational_params.front()));
    auto pre = detail::params_in_span({qpt}, pi);
    a.q_preimages = pre.rational;
    if (pre.has_infinity) a.q_preimages.push_back(CurveParam::infinity());
    a.q_preimage_moduli = pre.moduli;

    // m_X(Q): sum over preimages of the minimal vanishing order over a basis
    // of hyperplanes through Q (the minimum over a spanning set is the
    // generic order)
    std::vector<BForm<Rat>> pulled;
    for (const auto& h : kernel_basis(Matrix<Rat>::from_rows({qpt}))) {
      BForm<Rat> f = BForm<Rat>::zero(a.d);
      for (size_t i = 0; i < pi.size(); ++i)
        if (!h[i].is_zero()) f = f + pi[i].scaled(h[i]);
      pulled.push_back(std::move(f));
    }
    int mult = 0;
    std::vector<int> branch_mults;
    for (const auto& q : a.q_preimages) {
      int mn = -1;
      for (const auto& f : pulled) {
        int o = detail::ord_at(f, q);
        mn = mn < 0 ? o : std::min(mn, o);
      }
      branch_mults.push_back(std::max(mn, 0));
      mult += std::max(mn, 0);
    }
    for (const auto& m : a.q_preimage_moduli) {
      int mn = -1;
      for (const auto& f : pulled) {
        int o = detail::ord_at_modulus(f, m);
        mn = mn < 0 ? o : std::min(mn, o);
      }
      mult += std::max(mn, 0) * m.degree();
    }
    a.m_x_q = mult;

    // two-route multiplicity check via the projection away from Q
    {
      auto comps = detail::projected_components({qpt}, pi);
      auto g = detail::forms_gcd(comps);
      int glen = g ? (g->tpoly().degree() + g->inf_mult()) : -1;
      a.mult_two_route_ok = (glen == a.m_x_q);
    }

    // b_Q by fiber counting with lines through Q
    {
      int pre_count = int(a.q_preimages.size());
      for (const auto& m : a.q_preimage_moduli) pre_count += m.degree();
      int best = 0;
      int used = 0;
      for (long t0 = 10; used < 3; ++t0) {
        CurveParam q = CurveParam::at(Rat(t0));
        bool special = false;
        for (const auto& ip : a.q_preimages) special = special || (ip == q);
        for (const auto& ip : a.intersection.rational_params) special = special || (ip == q);
        if (special) continue;
        ++used;
        std::vector<std::vector<Rat>> rows{qpt, center.curve_point(q)};
        auto fiber = detail::params_in_span(rows, pi);
        best = std::max(best, fiber.distinct - pre_count);
      }
      a.b_q = best;
      if (a.b_q > 0 && (a.d - a.m_x_q) % a.b_q == 0) a.deg_c_q = (a.d - a.m_x_q) / a.b_q;
    }
    a.identity_holds = (a.intersection.length + a.b_l * a.deg_c_l == a.d) &&
                       (a.b_q > 0 && a.m_x_q + a.b_q * a.deg_c_q == a.d);

    // tangent-space annotation: a hyperplane through Q contains the Zariski
    // tangent space T_Q(X) iff its pullback lies in the square of the maximal
    // ideal on every branch; for a smooth branch that is vanishing order >= 2
    // and for an ordinary cusp branch order >= 4. T_Q is therefore the span
    // of the branch jets below those thresholds. Conjugate preimages and
    // branches of higher multiplicity are left unannotated.
    if (a.q_preimage_moduli.empty()) {
      bool computable = true;
      std::vector<std::vector<Rat>> jets;
      for (size_t bi = 0; bi < a.q_preimages.size(); ++bi) {
        int mu = branch_mults[bi];
        int threshold = mu == 1 ? 2 : (mu == 2 ? 4 : 0);
        if (threshold == 0) {
          computable = false;
          break;
        }
        const CurveParam& q = a.q_preimages[bi];
        for (int k = 0; k < threshold; ++k) {
          std::vector<Rat> jet;
          jet.reserve(pi.size());
          Rat kfact(1);
          for (int j = 2; j <= k; ++j) kfact *= Rat(j);
          for (const auto& coord : pi) {
            Poly<Rat> p = coord.tpoly();
            if (q.infinite) {
              std::vector<Rat> rev(coord.a.rbegin(), coord.a.rend());
              p = Poly<Rat>(rev);
            }
            for (int j = 0; j < k; ++j) p = p.derivative();
            jet.push_back(p.eval(q.infinite ? Rat(0) : q.t) / kfact);
          }
          bool nz = false;
          for (const auto& x : jet) nz = nz || !x.is_zero();
          if (nz) jets.push_back(std::move(jet));
        }
      }
      if (computable) {
        bool contained = true;
        for (const auto& u : line.basis) contained = contained && span_contains(jets, u);
        a.line_in_tangent_space = contained;
      }
    }
  }

  if (a.c_l_rational_normal && a.b_l == 1) {
    a.conclusion = LineAnalysis::Conclusion::single_point_b2;
    a.rank_exact = true;
    a.rank_value = a.n + 1;
    a.provenance = "i1.b2";
  } else {
    a.conclusion = LineAnalysis::Conclusion::single_point_open;
    a.rank_exact = false;
    a.rank_value = a.n + 1;
    a.sandwich_lo = 3;
    a.sandwich_hi = a.n + 1;
    a.provenance = "i1-open";
  }
  return a;
}

}  // namespace xrank
