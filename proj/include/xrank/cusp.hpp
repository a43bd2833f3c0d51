#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "xrank/matrix.hpp"
#include "xrank/projection.hpp"

namespace xrank {

/// The rank strata of a cuspidal projection: E_Q(t) is the image of the
/// span of the t-th infinitesimal neighborhood of the cusp preimage Q' on
/// the curve; it has projective dimension t-1 and E_Q(1) = {Q}.
class OsculatingFlag {
 public:
  OsculatingFlag(const ProjectionCenter& center, const CurveParam& cusp_preimage)
      : center_(&center), q_(cusp_preimage) {
    const int n = center.n();
    const int d = center.degree();
    for (int t = 1; t <= n; ++t) {
      std::vector<std::vector<Rat>> rows;
      for (const BForm<Rat>& b : osculating_basis(d, q_, t)) {
        // Skip basis forms proportional to the center (the projection kills them).
        bool prop = span_contains({center.center_form().a}, b.a);
        if (prop) continue;
        rows.push_back(center.project(b));
      }
      Matrix<Rat> m = Matrix<Rat>::from_rows(rows);
      std::vector<size_t> piv = detail::rref_in_place(m);
      if (int(piv.size()) != t)
        throw std::logic_error("OsculatingFlag: stratum has wrong dimension");
      std::vector<std::vector<Rat>> basis;
      for (size_t i = 0; i < piv.size(); ++i) basis.push_back(m.row(i));
      strata_.push_back(std::move(basis));
    }
  }

  const CurveParam& cusp_preimage() const { return q_; }
  int max_t() const { return int(strata_.size()); }
  /// Canonical basis of E_Q(t) (linear dimension t), 1 <= t <= n.
  const std::vector<std::vector<Rat>>& stratum(int t) const {
    if (t < 1 || t > max_t()) throw std::invalid_argument("OsculatingFlag: t out of range");
    return strata_[t - 1];
  }

  const ProjectionCenter& center() const { return *center_; }

 private:
  const ProjectionCenter* center_;
  CurveParam q_;
  std::vector<std::vector<std::vector<Rat>>> strata_;
};

inline OsculatingFlag make_flag(const ProjectionCenter& center) {
  CurveClassification cls = classify_projection(center);
  if (cls.kind != CurveClassification::Kind::cuspidal)
    throw std::invalid_argument("make_flag: center is not cuspidal");
  return OsculatingFlag(center, cls.preimages.at(0));
}

struct CuspStratum {
  bool in_flag = false;
  int t = 0;
  int rank = 0;  // n + 2 - t
};

/// Minimal t with P in E_Q(t), and the resulting rank n+2-t. Points outside
/// E_Q(n) are reported as not in the flag (the formula stops at t = n).
inline CuspStratum cusp_stratum(const OsculatingFlag& flag, const std::vector<Rat>& p) {
  CuspStratum out;
  for (int t = 1; t <= flag.max_t(); ++t) {
    if (span_contains(flag.stratum(t), p)) {
      out.in_flag = true;
      out.t = t;
      out.rank = flag.center().n() + 2 - t;
      return out;
    }
  }
  return out;
}

}  // namespace xrank
