#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "xrank/algebraic.hpp"
#include "xrank/projection.hpp"
#include "xrank/roots.hpp"
#include "xrank/sylvester.hpp"

namespace xrank {

/*
 * Rank of a projected point P through the pencil of its lifts. Every lift of
 * P is p + lambda O; the projection maps any decomposition of any lift onto a
 * decomposition of P, so mu := min over the pencil of the curve rank is an
 * upper bound for the X-rank, and it is the exact X-rank whenever
 * mu <= R_C(O) - 1. The minimum is found exactly: the rank along the pencil
 * can only drop below its generic value where the border rank drops, and
 * those lambda are the common roots of the size-(s+1) minors of the symbolic
 * catalecticant, found by exact gcd computation. Irrational candidate lambda
 * are handled by dynamic evaluation over their squarefree moduli.
 */

struct AlgBranchOutcome {
  Poly<Rat> modulus;  // leaf modulus of the D5 run
  int rank;
};

struct PencilResult {
  int rank = 0;              // mu, the pencil minimum
  bool certified = false;    // mu <= R_C(O) - 1, so equality holds
  int center_rank = 0;       // R_C(O)
  int generic_rank = 0;      // minimum over the generic samples
  int generic_border_rank = 0;
  std::vector<Rat> generic_samples;
  std::vector<Rat> special_rational;
  std::vector<Poly<Rat>> special_moduli;
  std::vector<AlgBranchOutcome> algebraic_outcomes;

  std::optional<Rat> min_lambda;         // rational member attaining mu
  std::optional<Poly<Rat>> min_modulus;  // else: modulus of the algebraic branch
  std::optional<RankCertificate<Rat>> certificate;  // at a rational minimizer
  std::optional<Decomposition> rational_decomposition;  // when fully rational
};

namespace detail {

/// Union of the root loci where the symbolic catalecticant drops below its
/// generic rank, as one squarefree polynomial in lambda.
inline Poly<Rat> special_locus(const BForm<Poly<Rat>>& symbolic, int generic_br) {
  const int d = symbolic.deg;
  Matrix<Poly<Rat>> cat = catalecticant(symbolic, d / 2);
  Poly<Rat> product = Poly<Rat>::constant(Rat(1));
  for (int s = 1; s < generic_br; ++s) {
    const size_t k = size_t(s) + 1;
    if (cat.rows() < k || cat.cols() < k) continue;
    // gcd over all k x k minors
    std::vector<size_t> ri(k), ci(k);
    Poly<Rat> g;
    std::function<void(size_t, size_t)> rows_loop = [&](size_t start, size_t depth) {
      if (g.degree() == 0 && !g.is_zero()) return;  // gcd already constant
      if (depth == k) {
        std::function<void(size_t, size_t)> cols_loop = [&](size_t cstart, size_t cdepth) {
          if (g.degree() == 0 && !g.is_zero()) return;
          if (cdepth == k) {
            Matrix<Poly<Rat>> sub(k, k);
            for (size_t a = 0; a < k; ++a)
              for (size_t b = 0; b < k; ++b) sub(a, b) = cat(ri[a], ci[b]);
            Poly<Rat> det = bareiss_det(sub);
            if (det.is_zero()) return;
            g = g.is_zero() ? det.monic() : poly_gcd(g, det);
            return;
          }
          for (size_t c = cstart; c < cat.cols(); ++c) {
            ci[cdepth] = c;
            cols_loop(c + 1, cdepth + 1);
          }
        };
        cols_loop(0, 0);
        return;
      }
      for (size_t r = start; r < cat.rows(); ++r) {
        ri[depth] = r;
        rows_loop(r + 1, depth + 1);
      }
    };
    rows_loop(0, 0);
    if (g.is_zero())
      throw std::logic_error("special_locus: all minors vanish below the generic rank");
    if (g.degree() > 0) product = product * g;
  }
  if (product.degree() == 0) return product.monic();
  return squarefree_part(product);
}

}  // namespace detail

inline PencilResult pencil_rank(const ProjectionCenter& center, const std::vector<Rat>& point) {
  PencilLift pencil(center, point);
  PencilResult out;
  out.center_rank = sylvester_rank(center.center_form()).rank;

  // generic border rank of the pencil, with lambda a formal variable
  BForm<Poly<Rat>> sym = pencil.symbolic();
  out.generic_border_rank = int(matrix_rank(catalecticant(sym, sym.deg / 2)));

  // special lambda: where some catalecticant minor gcd vanishes
  Poly<Rat> locus = detail::special_locus(sym, out.generic_border_rank);
  if (locus.degree() > 0) {
    out.special_rational = rational_roots(locus);
    out.special_moduli = squarefree_factor_moduli(locus);
  }
  auto is_special = [&](const Rat& v) {
    for (const Rat& r : out.special_rational)
      if (r == v) return true;
    for (const Poly<Rat>& m : out.special_moduli)
      if (m.eval(v).is_zero()) return true;
    return false;
  };

  // five deterministic generic samples, skipping special values
  struct Best {
    int rank = -1;
    std::optional<Rat> lambda;
    std::optional<Poly<Rat>> modulus;
    std::optional<RankCertificate<Rat>> cert;
  } best;
  auto consider_rational = [&](const Rat& lam, const RankCertificate<Rat>& c) {
    if (best.rank < 0 || c.rank < best.rank) {
      best.rank = c.rank;
      best.lambda = lam;
      best.modulus.reset();
      best.cert = c;
    }
  };

  for (long k = 1; int(out.generic_samples.size()) < 5; ++k) {
    for (long sgn : {1L, -1L}) {
      if (int(out.generic_samples.size()) >= 5) break;
      Rat lam(sgn * k);
      if (is_special(lam)) continue;
      out.generic_samples.push_back(lam);
    }
  }
  // special rational candidates first (where the minimum can drop), then the
  // generic samples, then algebraic branches; rational members win ties so
  // the reported certificate stays rational whenever possible.
  for (const Rat& lam : out.special_rational) {
    RankCertificate<Rat> c = sylvester_rank(pencil.at(lam));
    consider_rational(lam, c);
  }
  {
    int gmin = -1;
    for (const Rat& lam : out.generic_samples) {
      RankCertificate<Rat> c = sylvester_rank(pencil.at(lam));
      if (gmin < 0 || c.rank < gmin) gmin = c.rank;
      consider_rational(lam, c);
    }
    out.generic_rank = gmin;
  }
  for (const Poly<Rat>& m : out.special_moduli) {
    auto branches = run_on_branches(m, [&](const std::shared_ptr<const Poly<Rat>>& mp) {
      return sylvester_rank(pencil.at_generator(mp)).rank;
    });
    for (const auto& [leaf, rk] : branches) {
      out.algebraic_outcomes.push_back({leaf, rk});
      if (best.rank < 0 || rk < best.rank) {
        best.rank = rk;
        best.lambda.reset();
        best.modulus = leaf;
        best.cert.reset();
      }
    }
  }

  out.rank = best.rank;
  out.min_lambda = best.lambda;
  out.min_modulus = best.modulus;
  out.certificate = best.cert;
  out.certified = out.rank <= out.center_rank - 1;

  if (best.lambda) {
    RankCertificate<Rat> full = decompose(pencil.at(*best.lambda));
    out.certificate = full;
    if (full.points && full.points->families.empty()) out.rational_decomposition = full.points;
  }
  return out;
}

namespace detail {

/// The curve parameter of a pure power c (alpha x + beta y)^d.
inline CurveParam power_parameter(const BForm<Rat>& f) {
  if (f.a[0].is_zero()) return CurveParam::infinity();
  return CurveParam::at(f.a[1] / (Rat(long(f.deg)) * f.a[0]));
}

}  // namespace detail

/// Minimum over the pencil of the border rank of a lift: the minimal apolar
/// scheme length of any lift of P. Length-1 schemes supported at a preimage
/// of the singular point are skipped (they fall outside the bound's
/// hypothesis); beyond that the singular-point condition on longer schemes
/// is not verified, so the output is a raw minimum with that caveat.
inline int min_scheme_length(const ProjectionCenter& center, const std::vector<Rat>& point) {
  PencilLift pencil(center, point);
  CurveClassification cls = classify_projection(center);
  const bool singular = cls.kind != CurveClassification::Kind::smooth;
  auto excluded_power = [&](const BForm<Rat>& member) {
    CurveParam q = detail::power_parameter(member);
    for (const CurveParam& pre : cls.preimages)
      if (pre == q) return true;
    if (cls.preimage_modulus && !q.infinite && cls.preimage_modulus->eval(q.t).is_zero())
      return true;
    return false;
  };
  BForm<Poly<Rat>> sym = pencil.symbolic();
  int generic_br = int(matrix_rank(catalecticant(sym, sym.deg / 2)));
  int best = generic_br;
  Poly<Rat> locus = detail::special_locus(sym, generic_br);
  if (locus.degree() > 0) {
    for (const Rat& lam : rational_roots(locus)) {
      int br = border_rank(pencil.at(lam));
      if (br == 1 && singular && excluded_power(pencil.at(lam))) continue;
      best = std::min(best, br);
    }
    for (const Poly<Rat>& m : squarefree_factor_moduli(locus)) {
      auto branches = run_on_branches(m, [&](const std::shared_ptr<const Poly<Rat>>& mp) {
        return border_rank(pencil.at_generator(mp));
      });
      for (const auto& [leaf, br] : branches) {
        // A pure power at an irrational lambda projects onto a point with a
        // conjugate second preimage, which is the node: excluded when singular.
        if (br == 1 && singular) continue;
        best = std::min(best, br);
      }
    }
  }
  return best;
}

struct RankStatement {
  bool exact = false;
  int value = 0;
  std::string note;
};

/// Rank statement from a minimal apolar scheme of length z: reduced schemes
/// give the rank itself, non-reduced ones the bound n+3-z.
inline RankStatement scheme_length_bound(int z, bool reduced, int n) {
  if (z < 1) throw std::invalid_argument("scheme_length_bound: z must be positive");
  if (z > n + 2) throw std::invalid_argument("scheme_length_bound: impossible scheme length");
  RankStatement s;
  if (reduced) {
    s.exact = true;
    s.value = z;
    s.note = "reduced scheme: rank equals its length";
  } else {
    s.exact = false;
    s.value = n + 3 - z;
    s.note = "non-reduced scheme: upper bound n+3-z";
  }
  return s;
}

}  // namespace xrank
