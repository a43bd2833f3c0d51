#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "xrank/binary_form.hpp"
#include "xrank/matrix.hpp"
#include "xrank/roots.hpp"
#include "xrank/sylvester.hpp"

namespace xrank {

/// Scales a nonzero vector so its first nonzero coordinate is 1.
inline std::vector<Rat> normalize_projective(std::vector<Rat> v) {
  for (const Rat& x : v) {
    if (!x.is_zero()) {
      Rat inv = x.inverse();
      for (Rat& y : v) y = y * inv;
      return v;
    }
  }
  throw std::invalid_argument("normalize_projective: zero vector");
}

/// Projection of P^d away from the point O (not on the curve): after
/// normalizing O's first nonzero coordinate (the pivot) to 1, the map is
/// "subtract the pivot component times O, then delete the pivot coordinate".
/// The image space P^n, n = d-1, carries the complementary coordinate frame.
class ProjectionCenter {
 public:
  explicit ProjectionCenter(const BForm<Rat>& center) : o_(center) {
    d_ = o_.deg;
    if (d_ < 3) throw std::invalid_argument("ProjectionCenter: need degree >= 3");
    if (o_.is_zero()) throw std::invalid_argument("ProjectionCenter: zero center");
    if (border_rank(o_) < 2)
      throw std::invalid_argument("ProjectionCenter: center lies on the curve");
    pivot_ = 0;
    while (o_.a[pivot_].is_zero()) ++pivot_;
    o_ = o_.scaled(o_.a[pivot_].inverse());
    for (int i = 0; i <= d_; ++i)
      if (i != int(pivot_)) frame_.push_back(size_t(i));
  }

  int degree() const { return d_; }
  int n() const { return d_ - 1; }
  size_t pivot() const { return pivot_; }
  const BForm<Rat>& center_form() const { return o_; }
  const std::vector<size_t>& frame() const { return frame_; }

  std::vector<Rat> project(const BForm<Rat>& a) const { return project(a.a); }
  std::vector<Rat> project(const std::vector<Rat>& a) const {
    if (a.size() != size_t(d_ + 1)) throw std::invalid_argument("project: length mismatch");
    std::vector<Rat> out;
    out.reserve(frame_.size());
    const Rat& piv = a[pivot_];
    bool nonzero = false;
    for (size_t i : frame_) {
      Rat v = a[i] - piv * o_.a[i];
      if (!v.is_zero()) nonzero = true;
      out.push_back(v);
    }
    if (!nonzero) throw std::invalid_argument("project: point is the projection center");
    return out;
  }

  /// The canonical lift: pivot coordinate 0, frame coordinates P.
  BForm<Rat> lift(const std::vector<Rat>& p) const {
    if (p.size() != frame_.size()) throw std::invalid_argument("lift: length mismatch");
    std::vector<Rat> a(d_ + 1, Rat(0));
    for (size_t i = 0; i < frame_.size(); ++i) a[frame_[i]] = p[i];
    return BForm<Rat>(d_, std::move(a));
  }

  std::vector<Rat> curve_point(const CurveParam& q) const { return project(power_form(d_, q)); }

  /// Coordinates of the projected curve as binary forms in the parameter.
  std::vector<BForm<Rat>> symbolic_coords() const {
    std::vector<BForm<Rat>> out;
    for (size_t i : frame_) {
      BForm<Rat> c = BForm<Rat>::zero(d_);
      c.a[i] = binomial(unsigned(d_), unsigned(i));
      c.a[pivot_] = c.a[pivot_] - o_.a[i] * binomial(unsigned(d_), unsigned(pivot_));
      out.push_back(std::move(c));
    }
    return out;
  }

 private:
  BForm<Rat> o_;
  int d_;
  size_t pivot_;
  std::vector<size_t> frame_;
};

struct CurveClassification {
  enum class Kind { smooth, nodal, cuspidal };
  Kind kind = Kind::smooth;
  std::vector<CurveParam> preimages;         // nodal: Q', Q'' (if rational); cuspidal: Q'
  std::optional<Poly<Rat>> preimage_modulus; // nodal with conjugate preimages
};

/// Smooth iff the center has border rank >= 3; otherwise the apolar quadric
/// of the center decides: squarefree = node (its roots are the two preimage
/// parameters), a square = cusp at the double root.
inline CurveClassification classify_projection(const ProjectionCenter& c) {
  CurveClassification out;
  const BForm<Rat>& o = c.center_form();
  if (border_rank(o) >= 3) {
    out.kind = CurveClassification::Kind::smooth;
    return out;
  }
  std::vector<BForm<Rat>> k = apolar_kernel(o, 2);
  if (k.size() != 1) throw std::logic_error("classify_projection: unexpected kernel dimension");
  const BForm<Rat>& g = k[0];
  if (form_is_squarefree(g)) {
    out.kind = CurveClassification::Kind::nodal;
    Poly<Rat> p = g.tpoly();
    for (const Rat& r : rational_roots(p)) out.preimages.push_back(CurveParam::at(r));
    if (g.inf_mult() > 0) out.preimages.push_back(CurveParam::infinity());
    auto moduli = squarefree_factor_moduli(p);
    if (!moduli.empty()) out.preimage_modulus = moduli[0];
  } else {
    out.kind = CurveClassification::Kind::cuspidal;
    if (g.inf_mult() == 2) {
      out.preimages.push_back(CurveParam::infinity());
    } else {
      Poly<Rat> sq = squarefree_part(g.tpoly());
      if (sq.degree() != 1) throw std::logic_error("classify_projection: malformed cusp quadric");
      out.preimages.push_back(CurveParam::at(-(sq.coeff(0) / sq.coeff(1))));
    }
  }
  return out;
}

/// Pencil of lifts of P: lambda -> lift + lambda * O. O itself is the point
/// at lambda = infinity and is never on the affine chart.
struct PencilLift {
  const ProjectionCenter* center;
  std::vector<Rat> point;
  BForm<Rat> lift;

  PencilLift(const ProjectionCenter& c, std::vector<Rat> p)
      : center(&c), point(std::move(p)), lift(c.lift(point)) {
    bool nz = false;
    for (const Rat& x : point) nz = nz || !x.is_zero();
    if (!nz) throw std::invalid_argument("PencilLift: zero point");
  }
  PencilLift(const ProjectionCenter& c, const BForm<Rat>& custom_lift)
      : center(&c), point(c.project(custom_lift)), lift(custom_lift) {}

  BForm<Rat> at(const Rat& lambda) const {
    BForm<Rat> f = lift;
    for (int i = 0; i <= f.deg; ++i) f.a[i] += lambda * center->center_form().a[i];
    return f;
  }
  /// The pencil member with coefficients in Q[t]/(m), lambda = the class of t.
  BForm<AlgNum> at_generator(const std::shared_ptr<const Poly<Rat>>& m) const {
    AlgNum lam = AlgNum::generator(m);
    BForm<AlgNum> f = BForm<AlgNum>::zero(lift.deg);
    for (int i = 0; i <= f.deg; ++i)
      f.a[i] = AlgNum(lift.a[i]) + lam * AlgNum(center->center_form().a[i]);
    return f;
  }
  /// The pencil member as a form with polynomial coefficients (lambda formal).
  BForm<Poly<Rat>> symbolic() const {
    BForm<Poly<Rat>> f = BForm<Poly<Rat>>::zero(lift.deg);
    for (int i = 0; i <= f.deg; ++i)
      f.a[i] = Poly<Rat>(std::vector<Rat>{lift.a[i], center->center_form().a[i]});
    return f;
  }
};

/// General linear projection from a subspace spanned by the given rows:
/// reduce against the RREF of the span, then delete the pivot coordinates.
class LinearProjection {
 public:
  explicit LinearProjection(const std::vector<std::vector<Rat>>& span_rows) {
    rref_ = Matrix<Rat>::from_rows(span_rows);
    pivots_ = detail::rref_in_place(rref_);
    if (pivots_.size() != span_rows.size())
      throw std::invalid_argument("LinearProjection: dependent spanning rows");
    dim_in_ = rref_.cols();
    std::vector<bool> is_p(dim_in_, false);
    for (size_t p : pivots_) is_p[p] = true;
    for (size_t i = 0; i < dim_in_; ++i)
      if (!is_p[i]) frame_.push_back(i);
  }

  size_t ambient() const { return dim_in_; }
  const std::vector<size_t>& frame() const { return frame_; }

  bool center_contains(const std::vector<Rat>& v) const {
    std::vector<Rat> red = reduce(v);
    for (const Rat& x : red)
      if (!x.is_zero()) return false;
    return true;
  }

  std::vector<Rat> apply(const std::vector<Rat>& v) const {
    std::vector<Rat> red = reduce(v);
    std::vector<Rat> out;
    out.reserve(frame_.size());
    for (size_t i : frame_) out.push_back(red[i]);
    bool nz = false;
    for (const Rat& x : out) nz = nz || !x.is_zero();
    if (!nz) throw std::invalid_argument("LinearProjection: point in the center");
    return out;
  }

 private:
  Matrix<Rat> rref_;
  std::vector<size_t> pivots_;
  std::vector<size_t> frame_;
  size_t dim_in_ = 0;

  std::vector<Rat> reduce(std::vector<Rat> v) const {
    if (v.size() != dim_in_) throw std::invalid_argument("LinearProjection: length mismatch");
    for (size_t r = 0; r < pivots_.size(); ++r) {
      Rat f = v[pivots_[r]];
      if (f.is_zero()) continue;
      for (size_t j = 0; j < dim_in_; ++j) v[j] -= f * rref_(r, j);
    }
    return v;
  }
};

struct ProjectedSet {
  std::vector<std::vector<Rat>> image;  // pairwise distinct, normalized
  int size_bound;                       // |image| <= |S|
};

/// Image of a finite point set under a linear projection, with the span
/// containment of Lemma-style arguments checked when a witness point Q in
/// <S> is supplied: its image must lie in the span of the image set.
template <class Projector>
ProjectedSet project_decomposition(const Projector& proj,
                                   const std::vector<std::vector<Rat>>& s,
                                   const std::vector<Rat>* q = nullptr) {
  ProjectedSet out;
  for (const auto& pt : s) {
    std::vector<Rat> img = normalize_projective(proj.apply(pt));
    bool dup = false;
    for (const auto& seen : out.image) {
      bool eq = seen.size() == img.size();
      for (size_t i = 0; eq && i < img.size(); ++i) eq = seen[i] == img[i];
      if (eq) {
        dup = true;
        break;
      }
    }
    if (!dup) out.image.push_back(std::move(img));
  }
  out.size_bound = int(out.image.size());
  if (q) {
    if (span_contains(s, *q)) {
      std::vector<Rat> qi = normalize_projective(proj.apply(*q));
      if (!span_contains(out.image, qi))
        throw std::logic_error("project_decomposition: projected span lost the witness");
    }
  }
  return out;
}

/// Adapter so a ProjectionCenter can be used where a Projector is expected.
struct CenterProjector {
  const ProjectionCenter* c;
  std::vector<Rat> apply(const std::vector<Rat>& v) const { return c->project(v); }
};

}  // namespace xrank
