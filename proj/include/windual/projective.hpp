#pragma once

#include "windual/exact.hpp"

#include <optional>
#include <tuple>
#include <vector>

namespace windual {

// The hyperplane {x : <normal, x> = offset}.
struct Hyperplane {
    QVec normal;
    Rational offset;

    // True when both describe the same point set (coordinates proportional
    // by a nonzero rational).
    bool same_set(const Hyperplane& o) const;
};

// A fractional-linear map x |-> (Ax+b)/(<c,x>+d), carried by an invertible
// (n+1)x(n+1) rational matrix acting on homogeneous coordinates (x, 1).
// The matrix is stored un-normalized; equality is proportionality.
class ProjectiveMap {
  public:
    ProjectiveMap(std::size_t dim, QMat mat, bool sign_normalized = false);

    std::size_t dim() const { return n_; }
    const QMat& mat() const { return m_; }
    bool sign_normalized() const { return sign_normalized_; }

    ProjectiveMap scaled(const Rational& s) const;

  private:
    std::size_t n_;
    QMat m_;
    bool sign_normalized_;
};

QVec apply(const ProjectiveMap& f, const QVec& x);
Rational map_denominator(const ProjectiveMap& f, const QVec& x);
// Last homogeneous coordinate of the image of the direction (r, 0); the
// denominator's behavior along recession rays.
Rational map_denominator_linear(const ProjectiveMap& f, const QVec& r);

ProjectiveMap compose(const ProjectiveMap& f, const ProjectiveMap& g);
ProjectiveMap inverse_map(const ProjectiveMap& f);
bool is_affine(const ProjectiveMap& f);
std::optional<Hyperplane> defining_hyperplane(const ProjectiveMap& f);
std::optional<Hyperplane> image_boundary(const ProjectiveMap& f);
bool agree_up_to_scalar(const ProjectiveMap& f, const ProjectiveMap& g);

// Returns f or -f, scaled so the denominator is positive at x; errors if x
// lies on the defining hyperplane.
ProjectiveMap sign_normalize_at(const ProjectiveMap& f, const QVec& x);

// Translation x |-> x + v and pure linear maps as projective matrices.
ProjectiveMap translation_map(const QVec& v);
ProjectiveMap linear_map(const QMat& a);

struct CanonicalForm {
    QMat B;
    QMat C;
    QVec y0;
};

// Decomposition B(F(Cx + x0) - y0) = F0(x) following the constructive
// proof: translate so x0 |-> 0, scale the denominator constant to -1 (the
// translation part then vanishes), pick C with C^T c = e1, and invert the
// remaining linear block.
CanonicalForm canonical_form(const ProjectiveMap& f, const QVec& x0);

// The unique map sending x[1..n] to the unit vectors, x[0] to 0, and the
// interior point y to the interior point p; built from the diagonal-matrix
// construction of the transitivity proof.
ProjectiveMap from_simplex_data(const std::vector<QVec>& x, const QVec& y, const QVec& p);

Rational cross_ratio(const Rational& a, const Rational& b, const Rational& c, const Rational& d);

// Gallery: the canonical involution x/(x1-1), the ball-preserving map with
// rational parameters, and the trapezoid self-map.
ProjectiveMap f0(std::size_t n);
ProjectiveMap f_ball(std::size_t n, const Rational& lam);
ProjectiveMap f_trapezoid(const Rational& alpha);

}  // namespace windual
