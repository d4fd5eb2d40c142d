#pragma once

#include "windual/polyhedra.hpp"

#include <utility>
#include <vector>

namespace windual {

// A lower-semi-continuous piecewise-linear convex function on a window
// K ⊆ Q^n, stored as its closed epigraph in Q^{n+1}. The empty epigraph is
// the constant +inf; functions taking -inf anywhere are not representable
// and are rejected at construction.
class PLConvexFunction {
  public:
    // f(x) = max_i <a_i, x> + b_i on the window, +inf outside. An empty
    // piece list gives the indicator (zero on the window).
    static PLConvexFunction from_pieces(const Polyhedron& window,
                                        const std::vector<std::pair<QVec, Rational>>& pieces);

    // Wraps an explicit epigraph, validating that it is one: closed under
    // adding +e_{n+1}, fibers bounded below, projection inside the window.
    static PLConvexFunction from_epigraph(Polyhedron window, Polyhedron epi);

    std::size_t dim() const { return n_; }
    const Polyhedron& window() const { return window_; }
    const Polyhedron& epigraph() const { return epi_; }

  private:
    PLConvexFunction(std::size_t n, Polyhedron w, Polyhedron e)
        : n_(n), window_(std::move(w)), epi_(std::move(e)) {}

    std::size_t n_;
    Polyhedron window_;
    Polyhedron epi_;
};

// min { u : (x, u) in epi }, +inf when the fiber is empty.
ExtRat evaluate(const PLConvexFunction& f, const QVec& x);

// Pointwise supremum: epigraphs intersect, windows intersect.
PLConvexFunction sup_of(const std::vector<PLConvexFunction>& fs);

// Largest convex minorant of the family: epigraphs join.
PLConvexFunction inf_hat(const std::vector<PLConvexFunction>& fs);

// f <= g pointwise, decided as epi(g) ⊆ epi(f).
bool is_leq(const PLConvexFunction& f, const PLConvexFunction& g);

// (Lf)(y) = sup_x { <x,y> - f(x) }, with the exact effective domain as the
// output window.
PLConvexFunction legendre(const PLConvexFunction& f);

// Membership in the geometric class: f >= 0 and f(0) = 0.
bool in_cvx0(const PLConvexFunction& f);

// The epigraph point map (x, u) |-> (x/u, 1/u) as a projective map on
// Q^{n+1}; n is the function dimension.
ProjectiveMap j_epigraph_map(std::size_t n);

// (Jf)(x) = inf { r > 0 : f(x/r) <= 1/r }, computed as the epigraph image
// under j_epigraph_map. Requires in_cvx0(f).
PLConvexFunction j_transform(const PLConvexFunction& f);

// The polarity-type duality on the geometric class, as legendre after
// j_transform. Requires in_cvx0(f).
PLConvexFunction a_transform(const PLConvexFunction& f);

// Extremal families: the delta with value c at a single point, the window
// indicator, the linear function with value c >= 0 at z on the ray through
// z, and their triangle envelope sup{indicator([0,z]), linear_ray(z,c)}.
PLConvexFunction delta(const QVec& x, const Rational& c);
PLConvexFunction indicator(const Polyhedron& k);
PLConvexFunction linear_ray(const QVec& z, const Rational& c);
PLConvexFunction triangle(const QVec& z, const Rational& c);

}  // namespace windual
