#include "windual/plfunc.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace windual {

namespace {

QVec lift(const QVec& x, const Rational& last) {
    QVec y(x.dim() + 1);
    for (std::size_t i = 0; i < x.dim(); ++i) y[i] = x[i];
    y[x.dim()] = last;
    return y;
}

// Is d a recession direction of p?  Exactly when p + d ⊆ p.
bool recedes(const Polyhedron& p, const QVec& d) {
    return is_subset(translate(p, d), p);
}

}  // namespace

PLConvexFunction PLConvexFunction::from_pieces(
        const Polyhedron& window, const std::vector<std::pair<QVec, Rational>>& pieces) {
    const std::size_t n = window.dim();
    HRep epi_rows{n + 1, {}};
    const HRep wrows = window.hrep_any();
    for (const auto& [a, b] : wrows.ineqs)
        epi_rows.ineqs.emplace_back(lift(a, Rational(0)), b);
    if (pieces.empty()) {
        // Indicator convention: zero on the window.
        epi_rows.ineqs.emplace_back(lift(QVec::zero(n), Rational(-1)), Rational(0));
    }
    for (const auto& [a, b] : pieces) {
        if (a.dim() != n) throw ShapeError("piece dimension mismatch");
        // u >= <a,x> + b  as  <a,x> - u <= -b.
        epi_rows.ineqs.emplace_back(lift(a, Rational(-1)), Rational(-b));
    }
    return from_epigraph(window, Polyhedron::from_hrep(epi_rows));
}

PLConvexFunction PLConvexFunction::from_epigraph(Polyhedron window, Polyhedron epi) {
    const std::size_t n = window.dim();
    if (epi.dim() != n + 1) throw ShapeError("epigraph must live one dimension above the window");
    if (!epi.is_empty()) {
        const QVec up = QVec::unit(n + 1, n);
        if (!recedes(epi, up)) throw DomainError("set is not an epigraph: not closed upward");
        if (recedes(epi, -up)) throw DomainError("set is not an epigraph: a fiber is unbounded below");
        if (!is_subset(drop_last_coordinate(epi), window))
            throw DomainError("epigraph projects outside the window");
    }
    return PLConvexFunction(n, std::move(window), std::move(epi));
}

ExtRat evaluate(const PLConvexFunction& f, const QVec& x) {
    if (x.dim() != f.dim()) throw ShapeError("point dimension mismatch");
    // Intersect the fiber {u : (x, u) in epi} row by row. Raw inequality
    // lists of an empty epigraph may bound u from above, so track both ends.
    const HRep rows = f.epigraph().hrep_any();
    bool has_lo = false, has_hi = false;
    Rational lo, hi;
    for (const auto& [a, b] : rows.ineqs) {
        Rational ax(0);
        for (std::size_t i = 0; i < f.dim(); ++i) ax += a[i] * x[i];
        const Rational alpha = a[f.dim()];
        if (alpha == 0) {
            if (ax > b) return ExtRat::plus_inf();
        } else if (alpha < 0) {
            const Rational v((ax - b) / -alpha);
            if (!has_lo || v > lo) {
                lo = v;
                has_lo = true;
            }
        } else {
            const Rational v((b - ax) / alpha);
            if (!has_hi || v < hi) {
                hi = v;
                has_hi = true;
            }
        }
    }
    if (has_lo && has_hi && lo > hi) return ExtRat::plus_inf();
    if (!has_lo) {
        if (!has_hi) return ExtRat::plus_inf();  // all rows vertical: empty fiber
        throw Error("epigraph invariant violated: fiber unbounded below");
    }
    return ExtRat::finite(lo);
}

PLConvexFunction sup_of(const std::vector<PLConvexFunction>& fs) {
    if (fs.empty()) throw UsageError("sup_of needs at least one function");
    Polyhedron w = fs.front().window();
    Polyhedron e = fs.front().epigraph();
    for (std::size_t i = 1; i < fs.size(); ++i) {
        if (fs[i].dim() != fs.front().dim()) throw ShapeError("sup_of dimension mismatch");
        w = intersect(w, fs[i].window());
        e = intersect(e, fs[i].epigraph());
    }
    return PLConvexFunction::from_epigraph(std::move(w), std::move(e));
}

PLConvexFunction inf_hat(const std::vector<PLConvexFunction>& fs) {
    if (fs.empty()) throw UsageError("inf_hat needs at least one function");
    Polyhedron w = fs.front().window();
    Polyhedron e = fs.front().epigraph();
    for (std::size_t i = 1; i < fs.size(); ++i) {
        if (fs[i].dim() != fs.front().dim()) throw ShapeError("inf_hat dimension mismatch");
        w = convex_hull_join(w, fs[i].window());
        e = convex_hull_join(e, fs[i].epigraph());
    }
    return PLConvexFunction::from_epigraph(std::move(w), std::move(e));
}

bool is_leq(const PLConvexFunction& f, const PLConvexFunction& g) {
    if (f.dim() != g.dim()) throw ShapeError("is_leq dimension mismatch");
    return is_subset(g.epigraph(), f.epigraph());
}

PLConvexFunction legendre(const PLConvexFunction& f) {
    if (f.epigraph().is_empty())
        throw DomainError("legendre transform of the constant +inf is -inf everywhere");
    const std::size_t n = f.dim();
    const VRep gen = to_vrep(f.epigraph());
    // sup over the epigraph of <y, x> - u is finite exactly when every
    // recession direction (r, s) satisfies <r, y> <= s, and is then attained
    // at a vertex.
    HRep wrows{n, {}};
    for (const auto& r : gen.rays) {
        QVec a(n);
        for (std::size_t i = 0; i < n; ++i) a[i] = r[i];
        if (a.is_zero()) continue;  // vertical ray: no constraint
        wrows.ineqs.emplace_back(a, r[n]);
    }
    std::vector<std::pair<QVec, Rational>> pieces;
    pieces.reserve(gen.vertices.size());
    for (const auto& v : gen.vertices) {
        QVec a(n);
        for (std::size_t i = 0; i < n; ++i) a[i] = v[i];
        pieces.emplace_back(a, Rational(-v[n]));
    }
    return PLConvexFunction::from_pieces(Polyhedron::from_hrep(wrows), pieces);
}

bool in_cvx0(const PLConvexFunction& f) {
    const ExtRat at0 = evaluate(f, QVec::zero(f.dim()));
    if (!(at0.is_finite() && at0.value == 0)) return false;
    HRep upper{f.dim() + 1, {}};
    upper.ineqs.emplace_back(-QVec::unit(f.dim() + 1, f.dim()), Rational(0));
    return is_subset(f.epigraph(), Polyhedron::from_hrep(upper));
}

ProjectiveMap j_epigraph_map(std::size_t n) {
    QMat m = QMat::identity(n + 2);
    m.at(n, n) = 0;
    m.at(n, n + 1) = 1;
    m.at(n + 1, n + 1) = 0;
    m.at(n + 1, n) = 1;
    return ProjectiveMap(n + 1, m);
}

PLConvexFunction j_transform(const PLConvexFunction& f) {
    if (!in_cvx0(f))
        throw PreconditionError("j_transform needs a nonnegative function vanishing at 0");
    Polyhedron epi = projective_image(j_epigraph_map(f.dim()), f.epigraph());
    Polyhedron window = drop_last_coordinate(epi);
    return PLConvexFunction::from_epigraph(std::move(window), std::move(epi));
}

PLConvexFunction a_transform(const PLConvexFunction& f) {
    return legendre(j_transform(f));
}

PLConvexFunction delta(const QVec& x, const Rational& c) {
    return PLConvexFunction::from_pieces(Polyhedron::point(x), {{QVec::zero(x.dim()), c}});
}

PLConvexFunction indicator(const Polyhedron& k) {
    return PLConvexFunction::from_pieces(k, {});
}

PLConvexFunction linear_ray(const QVec& z, const Rational& c) {
    if (z.is_zero()) throw PreconditionError("linear_ray needs a nonzero direction");
    if (c < 0) throw PreconditionError("linear_ray needs a nonnegative value");
    VRep ray{z.dim(), {QVec::zero(z.dim())}, {z}};
    const Rational slope(c / dot(z, z));
    return PLConvexFunction::from_pieces(Polyhedron::from_vrep(ray), {{z.scaled(slope), Rational(0)}});
}

PLConvexFunction triangle(const QVec& z, const Rational& c) {
    if (z.is_zero()) throw PreconditionError("triangle needs a nonzero direction");
    if (c < 0) throw PreconditionError("triangle needs a nonnegative value");
    VRep seg{z.dim(), {QVec::zero(z.dim()), z}, {}};
    return sup_of({indicator(Polyhedron::from_vrep(seg)), linear_ray(z, c)});
}

}  // namespace windual
