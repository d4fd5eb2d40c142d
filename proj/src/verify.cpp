#include "windual/verify.hpp"

#include "windual/json_io.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <utility>

namespace windual {

namespace {

std::uint64_t splitmix(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t stream) : state_(seed) {
    state_ ^= 0x9E3779B97F4A7C15ULL * (stream + 1);
    splitmix(state_);
    splitmix(state_);
}

std::uint64_t TrialRng::next_u64() { return splitmix(state_); }

long TrialRng::next_long(long lo, long hi) {
    if (lo > hi) throw UsageError("empty range for random draw");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next_u64() % span);
}

Rational TrialRng::next_rational(const SizeBounds& b) {
    return Rational(next_long(-b.max_numerator, b.max_numerator), next_long(1, b.max_denominator));
}

Rational TrialRng::next_positive_rational(const SizeBounds& b) {
    return Rational(next_long(1, b.max_numerator), next_long(1, b.max_denominator));
}

QVec TrialRng::next_vector(std::size_t dim, const SizeBounds& b) {
    QVec v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = next_rational(b);
    return v;
}

GenConstraint GenConstraint::zero_interior() {
    return {Kind::contains_zero_interior, QVec(0), Rational(0)};
}

GenConstraint GenConstraint::inside(QVec normal, Rational offset) {
    return {Kind::inside_halfspace, std::move(normal), std::move(offset)};
}

GenConstraint GenConstraint::cvx0_window() {
    return {Kind::window_for_cvx0, QVec(0), Rational(0)};
}

Polyhedron gen_polytope(const TrialConfig& cfg, TrialRng& rng, const GenConstraint& c) {
    const std::size_t n = cfg.dim;
    VRep v{n, {}, {}};
    switch (c.kind) {
        case GenConstraint::Kind::contains_zero_interior: {
            const long pairs =
                1 + rng.next_long(0, std::max<long>(1, static_cast<long>(cfg.bounds.max_vertices / 2)) - 1);
            for (long i = 0; i < pairs; ++i) {
                QVec p = rng.next_vector(n, cfg.bounds);
                v.vertices.push_back(-p);
                v.vertices.push_back(std::move(p));
            }
            // A small cross-polytope keeps the origin strictly inside.
            for (std::size_t j = 0; j < n; ++j) {
                QVec e = QVec::unit(n, j).scaled(Rational(1, 2));
                v.vertices.push_back(-e);
                v.vertices.push_back(std::move(e));
            }
            break;
        }
        case GenConstraint::Kind::inside_halfspace: {
            if (c.normal.dim() != n) throw ShapeError("constraint normal has the wrong dimension");
            const long count = 1 + rng.next_long(0, static_cast<long>(cfg.bounds.max_vertices) - 1);
            for (long i = 0; i < count; ++i) {
                bool placed = false;
                for (int tries = 0; tries < 64 && !placed; ++tries) {
                    QVec p = rng.next_vector(n, cfg.bounds);
                    if (dot(c.normal, p) <= c.offset) {
                        v.vertices.push_back(std::move(p));
                        placed = true;
                    }
                }
                if (!placed) {
                    throw GenerationError("could not place a point inside the half-space");
                }
            }
            break;
        }
        case GenConstraint::Kind::window_for_cvx0: {
            v.vertices.push_back(QVec::zero(n));
            const long count = rng.next_long(0, static_cast<long>(cfg.bounds.max_vertices) - 1);
            for (long i = 0; i < count; ++i) v.vertices.push_back(rng.next_vector(n, cfg.bounds));
            if (rng.next_long(0, 2) == 0) {
                for (int tries = 0; tries < 64; ++tries) {
                    QVec r = rng.next_vector(n, cfg.bounds);
                    if (!r.is_zero()) {
                        v.rays.push_back(primitive(r));
                        break;
                    }
                }
            }
            break;
        }
    }
    return Polyhedron::from_vrep(std::move(v));
}

PLConvexFunction gen_plfunc(const TrialConfig& cfg, TrialRng& rng, FnClass cls) {
    const std::size_t n = cfg.dim;
    if (cls == FnClass::cvx) {
        Polyhedron window = gen_polytope(cfg, rng, GenConstraint::zero_interior());
        std::vector<std::pair<QVec, Rational>> pieces;
        const long m = rng.next_long(0, static_cast<long>(cfg.bounds.max_pieces));
        for (long i = 0; i < m; ++i) {
            pieces.emplace_back(rng.next_vector(n, cfg.bounds), rng.next_rational(cfg.bounds));
        }
        return PLConvexFunction::from_pieces(window, pieces);
    }
    Polyhedron window = gen_polytope(cfg, rng, GenConstraint::cvx0_window());
    std::vector<std::pair<QVec, Rational>> pieces;
    pieces.emplace_back(QVec::zero(n), Rational(0));
    const long m = rng.next_long(0, static_cast<long>(cfg.bounds.max_pieces));
    for (long i = 0; i < m; ++i) {
        Rational b = rng.next_rational(cfg.bounds);
        if (b > 0) b = -b;
        pieces.emplace_back(rng.next_vector(n, cfg.bounds), std::move(b));
    }
    return PLConvexFunction::from_pieces(window, pieces);
}

ProjectiveMap gen_flmap(const TrialConfig& cfg, TrialRng& rng, const Polyhedron& domain,
                        bool affine) {
    const std::size_t n = domain.dim();
    const VRep v = to_vrep(domain);
    if (v.vertices.empty()) throw PreconditionError("flmap domain must be nonempty");
    for (int attempt = 0; attempt < 64; ++attempt) {
        QMat m(n + 1, n + 1);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rng.next_rational(cfg.bounds);
            m.at(i, n) = rng.next_rational(cfg.bounds);
        }
        if (affine) {
            m.at(n, n) = Rational(1);
        } else {
            QVec c = rng.next_vector(n, cfg.bounds);
            if (c.is_zero()) continue;
            bool rays_ok = true;
            for (const auto& r : v.rays) rays_ok = rays_ok && dot(c, r) >= 0;
            if (!rays_ok) continue;
            Rational d(1);
            for (const auto& x : v.vertices) {
                const Rational lifted = Rational(1 - dot(c, x));
                if (lifted > d) d = lifted;
            }
            for (std::size_t j = 0; j < n; ++j) m.at(n, j) = c[j];
            m.at(n, n) = d;
        }
        if (det(m) == 0) continue;
        return ProjectiveMap(n, std::move(m));
    }
    throw GenerationError("could not build an invertible map positive on the domain");
}

namespace {

QVec lift(const QVec& x, const Rational& last) {
    QVec y(x.dim() + 1);
    for (std::size_t i = 0; i < x.dim(); ++i) y[i] = x[i];
    y[x.dim()] = last;
    return y;
}

}  // namespace

ExtRat oracle_j_pointwise(const PLConvexFunction& f, const QVec& x) {
    if (!in_cvx0(f)) throw PreconditionError("the radial oracle needs a geometric-class function");
    if (x.dim() != f.dim()) throw ShapeError("point dimension differs from the function");
    // The point (x/r, 1/r) satisfies <a,y> + alpha*u <= b exactly when
    // <a,x> + alpha <= b*r, so each inequality is a one-variable crossing in
    // r and the feasible radii form an interval.
    const HRep h = to_hrep(f.epigraph());
    const QVec xh = lift(x, Rational(1));
    Rational lo(0);
    bool has_hi = false;
    Rational hi(0);
    for (const auto& [row, b] : h.ineqs) {
        const Rational s = dot(row, xh);
        if (b == 0) {
            if (s > 0) return ExtRat::plus_inf();
        } else if (b > 0) {
            const Rational cand = Rational(s / b);
            if (cand > lo) lo = cand;
        } else {
            const Rational cand = Rational(s / b);
            if (!has_hi || cand < hi) hi = cand;
            has_hi = true;
        }
    }
    if (has_hi && lo > hi) return ExtRat::plus_inf();
    return ExtRat::finite(lo);
}

ExtRat oracle_a_pointwise(const PLConvexFunction& f, const QVec& x) {
    if (!in_cvx0(f)) throw PreconditionError("the polarity oracle needs a geometric-class function");
    if (x.dim() != f.dim()) throw ShapeError("point dimension differs from the function");
    // sup (<x,y> - 1)/t over the epigraph: a linear-fractional objective,
    // so the supremum sits on the generators; height-zero generators decide
    // finiteness and the empty supremum is 0 by convention.
    const VRep v = to_vrep(f.epigraph());
    const std::size_t n = f.dim();
    const QVec x0 = lift(x, Rational(0));
    Rational best(0);
    for (const auto& vtx : v.vertices) {
        const Rational num = Rational(dot(vtx, x0) - 1);
        if (vtx[n] > 0) {
            const Rational cand = Rational(num / vtx[n]);
            if (cand > best) best = cand;
        } else if (num > 0) {
            return ExtRat::plus_inf();
        }
    }
    for (const auto& ray : v.rays) {
        const Rational num = dot(ray, x0);
        if (ray[n] > 0) {
            const Rational cand = Rational(num / ray[n]);
            if (cand > best) best = cand;
        } else if (num > 0) {
            return ExtRat::plus_inf();
        }
    }
    return ExtRat::finite(best);
}

namespace {

struct TrialFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void expect(bool ok, const char* what) {
    if (!ok) throw TrialFailure(what);
}

// Lazily records generated inputs so a failing trial can be replayed; the
// passing path pays nothing.
struct Recorder {
    Json* sink = nullptr;

    template <class F>
    void put(const char* key, F&& make) const {
        if (sink) (*sink)[key] = make();
    }
};

const SizeBounds kProbe{6, 4, 8, 5};

QVec convex_sample(TrialRng& rng, const std::vector<QVec>& verts, std::size_t dim) {
    QVec acc = QVec::zero(dim);
    Rational total(0);
    for (const auto& p : verts) {
        const long w = rng.next_long(1, 7);
        acc = acc + p.scaled(Rational(w));
        total += w;
    }
    return acc.scaled(Rational(1 / total));
}

bool fn_equal(const PLConvexFunction& f, const PLConvexFunction& g) {
    const bool epi = set_equal(f.epigraph(), g.epigraph());
    const bool win = set_equal(f.window(), g.window());
    return epi && win;
}

std::vector<QVec> probe_points(TrialRng& rng, const Polyhedron& region, std::size_t count) {
    const VRep v = to_vrep(region);
    const Rational scales[5] = {Rational(1, 3), Rational(1, 2), Rational(1), Rational(3, 2),
                                Rational(4)};
    std::vector<QVec> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        if (!v.vertices.empty() && k % 4 != 3) {
            out.push_back(convex_sample(rng, v.vertices, region.dim()).scaled(scales[k % 5]));
        } else {
            out.push_back(rng.next_vector(region.dim(), kProbe));
        }
    }
    return out;
}

PLConvexFunction random_pieces_fn(const TrialConfig& cfg, TrialRng& rng,
                                  const Polyhedron& window) {
    std::vector<std::pair<QVec, Rational>> pieces;
    const long m = rng.next_long(0, static_cast<long>(cfg.bounds.max_pieces));
    for (long i = 0; i < m; ++i) {
        pieces.emplace_back(rng.next_vector(window.dim(), cfg.bounds),
                            rng.next_rational(cfg.bounds));
    }
    return PLConvexFunction::from_pieces(window, pieces);
}

PLConvexFunction random_cvx0_on(const TrialConfig& cfg, TrialRng& rng,
                                const Polyhedron& window) {
    std::vector<std::pair<QVec, Rational>> pieces;
    pieces.emplace_back(QVec::zero(window.dim()), Rational(0));
    const long m = rng.next_long(0, static_cast<long>(cfg.bounds.max_pieces));
    for (long i = 0; i < m; ++i) {
        Rational b = rng.next_rational(cfg.bounds);
        if (b > 0) b = -b;
        pieces.emplace_back(rng.next_vector(window.dim(), cfg.bounds), std::move(b));
    }
    return PLConvexFunction::from_pieces(window, pieces);
}

Polyhedron segment1(const Rational& a, const Rational& b) {
    return Polyhedron::from_vrep(VRep{1, {QVec{a}, QVec{b}}, {}});
}

Polyhedron ray1() { return Polyhedron::from_vrep(VRep{1, {QVec{Rational(0)}}, {QVec{Rational(1)}}}); }

// g == s*x for some slope s >= 0 on its (one-dimensional, nonnegative)
// window.
bool is_linear_member(const PLConvexFunction& g) {
    const VRep w = to_vrep(g.window());
    Rational end(0);
    for (const auto& vtx : w.vertices) {
        if (vtx[0] > end) end = vtx[0];
    }
    const Rational pt = end > 0 ? Rational(end / 2) : Rational(1);
    const ExtRat val = evaluate(g, QVec{pt});
    if (!val.is_finite()) return false;
    const Rational slope = Rational(val.value / pt);
    if (slope < 0) return false;
    return fn_equal(g, PLConvexFunction::from_pieces(g.window(), {{QVec{slope}, Rational(0)}}));
}

// ---- suite trial bodies ------------------------------------------------

void trial_interval(const TrialConfig& cfg, std::size_t, TrialRng& rng, const Recorder& rec) {
    const std::size_t n = cfg.dim;
    const Polyhedron p = gen_polytope(cfg, rng, GenConstraint::zero_interior());
    const ProjectiveMap f = gen_flmap(cfg, rng, p);
    rec.put("polytope", [&] { return polyhedron_to_json(p); });
    rec.put("map", [&] { return map_to_json(f); });
    const auto verts = to_vrep(p).vertices;
    const QVec x = convex_sample(rng, verts, n);
    const QVec y = convex_sample(rng, verts, n);
    rec.put("x", [&] { return qvec_to_json(x); });
    rec.put("y", [&] { return qvec_to_json(y); });

    const QVec a = apply(f, x);
    const QVec b = apply(f, y);
    const Rational ts[5] = {Rational(0), Rational(1, 7), Rational(1, 2), Rational(5, 7),
                            Rational(1)};
    std::vector<QVec> images;
    QMat diffs(5, n);
    for (std::size_t k = 0; k < 5; ++k) {
        const QVec z = x + (y - x).scaled(ts[k]);
        QVec w = apply(f, z);
        for (std::size_t j = 0; j < n; ++j) diffs.at(k, j) = Rational(w[j] - a[j]);
        images.push_back(std::move(w));
    }
    expect(rank(diffs) <= 1, "images of a segment are not collinear");
    if (a == b) {
        for (const auto& w : images) expect(w == a, "degenerate segment image moved");
        return;
    }
    std::size_t j0 = 0;
    while (b[j0] == a[j0]) ++j0;
    for (const auto& w : images) {
        const Rational s = Rational((w[j0] - a[j0]) / (b[j0] - a[j0]));
        expect(w == a + (b - a).scaled(s), "image point leaves the line through the endpoint images");
        const bool between = s >= 0 && s <= 1;
        expect(between, "image point leaves the segment between the endpoint images");
    }
}

void trial_composition(const TrialConfig& cfg, std::size_t, TrialRng& rng, const Recorder& rec) {
    const std::size_t n = cfg.dim;
    const Polyhedron p = gen_polytope(cfg, rng, GenConstraint::zero_interior());
    const ProjectiveMap g = gen_flmap(cfg, rng, p);
    const Polyhedron q = projective_image(g, p);
    const ProjectiveMap f = gen_flmap(cfg, rng, q);
    rec.put("polytope", [&] { return polyhedron_to_json(p); });
    rec.put("inner", [&] { return map_to_json(g); });
    rec.put("outer", [&] { return map_to_json(f); });

    const ProjectiveMap c = compose(f, g);
    expect(agree_up_to_scalar(c, ProjectiveMap(n, f.mat() * g.mat())),
           "composite is not carried by the matrix product");
    const ProjectiveMap fi = inverse_map(f);
    expect(agree_up_to_scalar(fi, ProjectiveMap(n, inverse(f.mat()))),
           "inverse map is not carried by the matrix inverse");

    const auto verts = to_vrep(p).vertices;
    for (int k = 0; k < 10; ++k) {
        const QVec x = convex_sample(rng, verts, n);
        const QVec gx = apply(g, x);
        expect(apply(c, x) == apply(f, gx), "composite disagrees with two-step application");
        expect(apply(fi, apply(f, gx)) == gx, "inverse does not undo the map");
    }
}

void trial_polar_lens(const TrialConfig& cfg, std::size_t, TrialRng& rng, const Recorder& rec) {
    const std::size_t n = cfg.dim;
    const Polyhedron raw =
        gen_polytope(cfg, rng, GenConstraint::inside(QVec::unit(n, 0), Rational(1, 2)));
    const Polyhedron k = convex_hull_join(raw, Polyhedron::point(QVec::zero(n)));
    rec.put("polytope", [&] { return polyhedron_to_json(k); });

    const ProjectiveMap f = sign_normalize_at(f0(n), QVec::zero(n));
    const Polyhedron lhs = projective_image(f, k);
    const Polyhedron rhs = polar(translate(negate(polar(k)), QVec::unit(n, 0)));
    expect(set_equal(lhs, rhs), "lens identity failed");
}

void trial_canonical(const TrialConfig& cfg, std::size_t, TrialRng& rng, const Recorder& rec) {
    const std::size_t n = cfg.dim;
    const Polyhedron d = gen_polytope(cfg, rng, GenConstraint::zero_interior());
    const ProjectiveMap f = gen_flmap(cfg, rng, d);
    const QVec x0 = convex_sample(rng, to_vrep(d).vertices, n);
    rec.put("map", [&] { return map_to_json(f); });
    rec.put("x0", [&] { return qvec_to_json(x0); });

    const CanonicalForm cf = canonical_form(f, x0);
    expect(cf.y0 == apply(f, x0), "the recentering point is not the image of x0");
    expect(det(cf.B) != 0, "left factor is singular");
    expect(det(cf.C) != 0, "right factor is singular");

    const ProjectiveMap pre = compose(translation_map(x0), linear_map(cf.C));
    const ProjectiveMap post = compose(linear_map(cf.B), translation_map(-cf.y0));
    const ProjectiveMap whole = compose(post, compose(f, pre));
    const ProjectiveMap target = f0(n);
    expect(agree_up_to_scalar(whole, target), "normal form is not the canonical involution");

    int checked = 0;
    for (int tries = 0; tries < 60 && checked < 10; ++tries) {
        const QVec x = rng.next_vector(n, kProbe);
        if (map_denominator(whole, x) == 0 || map_denominator(target, x) == 0) continue;
        expect(apply(whole, x) == apply(target, x), "normal form disagrees pointwise");
        ++checked;
    }
    expect(checked == 10, "could not sample enough points off the hyperplanes");
}

void trial_transitivity(const TrialConfig& cfg, std::size_t, TrialRng& rng, const Recorder& rec) {
    const std::size_t n = cfg.dim;
    const SizeBounds small{6, 4, 9, 4};
    std::vector<QVec> xs;
    for (int tries = 0; tries < 64; ++tries) {
        xs.clear();
        for (std::size_t i = 0; i <= n; ++i) xs.push_back(rng.next_vector(n, small));
        QMat diffs(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) diffs.at(i, j) = Rational(xs[i + 1][j] - xs[0][j]);
        }
        if (rank(diffs) == n) break;
        xs.clear();
    }
    if (xs.empty()) throw GenerationError("could not draw an affinely independent tuple");

    QVec y = QVec::zero(n);
    Rational total(0);
    for (const auto& x : xs) {
        const long w = rng.next_long(1, 5);
        y = y + x.scaled(Rational(w));
        total += w;
    }
    y = y.scaled(Rational(1 / total));
    rec.put("simplex", [&] {
        Json a = Json::array();
        for (const auto& x : xs) a.push_back(qvec_to_json(x));
        return a;
    });
    rec.put("interior", [&] { return qvec_to_json(y); });

    const Polyhedron dom = Polyhedron::from_vrep(VRep{n, xs, {}});
    const ProjectiveMap f = gen_flmap(cfg, rng, dom);
    rec.put("map", [&] { return map_to_json(f); });
    std::vector<QVec> fxs;
    for (const auto& x : xs) fxs.push_back(apply(f, x));
    const QVec fy = apply(f, y);

    QVec w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = Rational(1, static_cast<long>(n) + 2);
    const ProjectiveMap s1 = from_simplex_data(xs, y, w);
    expect(apply(s1, xs[0]) == QVec::zero(n), "the base vertex is not sent to the origin");
    for (std::size_t i = 1; i <= n; ++i) {
        expect(apply(s1, xs[i]) == QVec::unit(n, i - 1), "a vertex misses its unit-vector target");
    }
    expect(apply(s1, y) == w, "the interior point misses its target");

    const ProjectiveMap s2 = from_simplex_data(fxs, fy, w);
    const ProjectiveMap rebuilt = compose(inverse_map(s2), s1);
    expect(agree_up_to_scalar(rebuilt, f), "reconstruction from n+2 values differs from the map");
}

void trial_cross_ratio(const TrialConfig& cfg, std::size_t, TrialRng& rng, const Recorder& rec) {
    Rational vals[4];
    bool distinct = false;
    for (int tries = 0; tries < 64 && !distinct; ++tries) {
        distinct = true;
        for (int i = 0; i < 4; ++i) {
            vals[i] = rng.next_rational(cfg.bounds);
            for (int j = 0; j < i; ++j) distinct = distinct && vals[i] != vals[j];
        }
    }
    if (!distinct) throw GenerationError("could not draw four distinct parameters");
    rec.put("tuple", [&] {
        Json a = Json::array();
        for (const auto& t : vals) a.push_back(rational_to_json(t));
        return a;
    });

    VRep hull{1, {}, {}};
    for (const auto& t : vals) hull.vertices.push_back(QVec{t});
    TrialConfig one = cfg;
    one.dim = 1;
    const ProjectiveMap f = gen_flmap(one, rng, Polyhedron::from_vrep(std::move(hull)));
    rec.put("map", [&] { return map_to_json(f); });

    Rational imgs[4];
    for (int i = 0; i < 4; ++i) imgs[i] = apply(f, QVec{vals[i]})[0];
    const Rational r = cross_ratio(vals[0], vals[1], vals[2], vals[3]);
    expect(cross_ratio(imgs[0], imgs[1], imgs[2], imgs[3]) == r,
           "cross-ratio is not preserved");
    expect(cross_ratio(vals[0], vals[1], vals[3], vals[2]) == Rational(1 / r),
           "swapping the last pair should invert the ratio");
    expect(cross_ratio(vals[1], vals[0], vals[2], vals[3]) == Rational(1 / r),
           "swapping the first pair should invert the ratio");
    expect(cross_ratio(vals[0], vals[2], vals[1], vals[3]) == Rational(1 - r),
           "swapping the middle pair should complement the ratio");
}

void trial_legendre(const TrialConfig& cfg, std::size_t, TrialRng& rng, const Recorder& rec) {
    const PLConvexFunction f = gen_plfunc(cfg, rng, FnClass::cvx);
    rec.put("function", [&] { return plfunction_to_json(f); });

    const PLConvexFunction lf = legendre(f);
    const PLConvexFunction llf = legendre(lf);
    expect(set_equal(llf.epigraph(), f.epigraph()), "double transform has a different epigraph");
    expect(set_equal(llf.window(), f.window()), "double transform has a different window");

    const PLConvexFunction h = random_pieces_fn(cfg, rng, f.window());
    const PLConvexFunction g = sup_of({f, h});
    expect(is_leq(f, g), "pointwise supremum should dominate");
    expect(is_leq(legendre(g), legendre(f)), "transform does not reverse the order");

    // The defining supremum, evaluated straight off the epigraph generators.
    const VRep ev = to_vrep(f.epigraph());
    for (int k = 0; k < 3; ++k) {
        const QVec y = rng.next_vector(f.dim(), kProbe);
        const QVec obj = lift(y, Rational(-1));
        bool bounded = true;
        for (const auto& ray : ev.rays) bounded = bounded && dot(ray, obj) <= 0;
        ExtRat direct = ExtRat::plus_inf();
        if (bounded) {
            Rational best = dot(ev.vertices.front(), obj);
            for (const auto& vtx : ev.vertices) {
                const Rational cand = dot(vtx, obj);
                if (cand > best) best = cand;
            }
            direct = ExtRat::finite(best);
        }
        expect(evaluate(lf, y) == direct, "transform disagrees with the defining supremum");
    }
}

void trial_j_involution(const TrialConfig& cfg, std::size_t, TrialRng& rng, const Recorder& rec) {
    const PLConvexFunction f = gen_plfunc(cfg, rng, FnClass::cvx0);
    rec.put("function", [&] { return plfunction_to_json(f); });

    const PLConvexFunction jf = j_transform(f);
    for (const QVec& x : probe_points(rng, jf.window(), 20)) {
        expect(evaluate(jf, x) == oracle_j_pointwise(f, x),
               "transform disagrees with the radial oracle");
    }
    expect(fn_equal(j_transform(jf), f), "double transform is not the identity");

    const PLConvexFunction h = random_cvx0_on(cfg, rng, f.window());
    const PLConvexFunction g = sup_of({f, h});
    expect(is_leq(f, g), "pointwise supremum should dominate");
    expect(is_leq(jf, j_transform(g)), "transform does not preserve the order");
}

void trial_a_duality(const TrialConfig& cfg, std::size_t trial, TrialRng& rng,
                     const Recorder& rec) {
    const PLConvexFunction f = gen_plfunc(cfg, rng, FnClass::cvx0);
    rec.put("function", [&] { return plfunction_to_json(f); });

    const PLConvexFunction af = a_transform(f);
    for (const QVec& x : probe_points(rng, af.window(), 20)) {
        expect(evaluate(af, x) == oracle_a_pointwise(f, x),
               "transform disagrees with the polarity oracle");
    }
    expect(fn_equal(af, j_transform(legendre(f))), "the two factorizations disagree");
    expect(fn_equal(a_transform(af), f), "double duality is not the identity");

    const PLConvexFunction h = random_cvx0_on(cfg, rng, f.window());
    const PLConvexFunction g = sup_of({f, h});
    expect(is_leq(f, g), "pointwise supremum should dominate");
    expect(is_leq(a_transform(g), af), "duality does not reverse the order");

    if (trial == 0) {
        const std::size_t n = cfg.dim;
        const PLConvexFunction zero_fn =
            PLConvexFunction::from_pieces(Polyhedron::full_space(n), {});
        const PLConvexFunction point0 = indicator(Polyhedron::point(QVec::zero(n)));
        expect(fn_equal(a_transform(zero_fn), point0), "dual of the zero function is wrong");
        expect(fn_equal(a_transform(point0), zero_fn), "dual of the origin indicator is wrong");
        if (n == 1) {
            const PLConvexFunction abs1 = PLConvexFunction::from_pieces(
                Polyhedron::full_space(1),
                {{QVec{Rational(1)}, Rational(0)}, {QVec{Rational(-1)}, Rational(0)}});
            expect(fn_equal(a_transform(abs1), abs1), "absolute value should be self-dual");
        }
    }
}

void trial_cvx_admissible(const TrialConfig& cfg, std::size_t, TrialRng& rng,
                          const Recorder& rec) {
    const std::size_t n = cfg.dim;
    const SizeBounds small{6, 4, 9, 4};
    const Polyhedron k1 = gen_polytope(cfg, rng, GenConstraint::zero_interior());
    const auto verts = to_vrep(k1).vertices;
    rec.put("window", [&] { return polyhedron_to_json(k1); });

    QMat a(n, n);
    QVec qcol(n), wrow(n), urow(n);
    Rational alpha, boff, d;
    QMat m(n + 2, n + 2);
    bool built = false;
    for (int tries = 0; tries < 64 && !built; ++tries) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) a.at(i, j) = rng.next_rational(small);
            qcol[i] = rng.next_rational(small);
            wrow[i] = rng.next_rational(small);
            urow[i] = rng.next_rational(small);
        }
        alpha = rng.next_positive_rational(small);
        boff = rng.next_rational(small);
        d = Rational(1);
        for (const auto& v : verts) {
            const Rational need = Rational(1 - dot(urow, v));
            if (need > d) d = need;
        }
        QMat base(n + 1, n + 1);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) base.at(i, j) = a.at(i, j);
            base.at(i, n) = qcol[i];
            base.at(n, i) = urow[i];
        }
        base.at(n, n) = d;
        if (det(base) == 0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = a.at(i, j);
            m.at(i, n) = Rational(0);
            m.at(i, n + 1) = qcol[i];
            m.at(n, i) = wrow[i];
            m.at(n + 1, i) = urow[i];
        }
        m.at(n, n) = alpha;
        m.at(n, n + 1) = boff;
        m.at(n + 1, n) = Rational(0);
        m.at(n + 1, n + 1) = d;
        built = true;
    }
    if (!built) throw GenerationError("could not build an admissible matrix");
    rec.put("matrix", [&] { return qmat_to_json(m); });

    const AdmissibilityVerdict verdict = classify_cvx(m, k1);
    expect(verdict.status == AdmissibilityStatus::cvx_admissible,
           "constructed matrix was rejected");
    const InducedTransform t = make_cvx_transform(m, k1);

    for (int pair = 0; pair < 5; ++pair) {
        const PLConvexFunction fa = random_pieces_fn(cfg, rng, k1);
        if (pair < 2) {
            const PLConvexFunction fb = sup_of({fa, random_pieces_fn(cfg, rng, k1)});
            expect(is_leq(fa, fb), "pointwise supremum should dominate");
            expect(is_leq(induce(t, fa), induce(t, fb)), "order is not preserved");
        } else {
            const PLConvexFunction fb = random_pieces_fn(cfg, rng, k1);
            const bool before = is_leq(fa, fb);
            const bool after = is_leq(induce(t, fa), induce(t, fb));
            expect(before == after, "order equivalence is broken");
        }
    }

    const PLConvexFunction f = random_pieces_fn(cfg, rng, k1);
    const PLConvexFunction h = random_pieces_fn(cfg, rng, k1);
    const PLConvexFunction tf = induce(t, f);
    const PLConvexFunction th = induce(t, h);
    expect(fn_equal(induce(t, sup_of({f, h})), sup_of({tf, th})), "supremum is not preserved");
    expect(fn_equal(induce(t, inf_hat({f, h})), inf_hat({tf, th})),
           "convex envelope is not preserved");

    const QVec x = convex_sample(rng, verts, n);
    const Rational c = rng.next_rational(small);
    const Rational den = Rational(dot(urow, x) + d);
    const QVec img_x = (a * x + qcol).scaled(Rational(1 / den));
    const Rational img_c = Rational((dot(wrow, x) + alpha * c + boff) / den);
    expect(fn_equal(induce(t, delta(x, c)), delta(img_x, img_c)),
           "delta image violates the fiber formula");

    const AdmissibilityVerdict back = classify_cvx(inverse(m), t.target_window);
    expect(back.status == AdmissibilityStatus::cvx_admissible, "inverse matrix was rejected");
    const InducedTransform ti = make_cvx_transform(inverse(m), t.target_window);
    expect(fn_equal(induce(ti, induce(t, f)), f), "inverse does not undo the transform");

    if (n == 1) {
        // The pinned closed form (Tf)(s) = (1-s) f(s/(1-s)) over [0,1].
        const QMat m0{{Rational(1), Rational(0), Rational(0)},
                      {Rational(0), Rational(1), Rational(0)},
                      {Rational(1), Rational(0), Rational(1)}};
        const Polyhedron k01 = segment1(Rational(0), Rational(1));
        const InducedTransform t0 = make_cvx_transform(m0, k01);
        const PLConvexFunction g0 = random_pieces_fn(cfg, rng, k01);
        const PLConvexFunction tg = induce(t0, g0);
        for (long k = 0; k < 20; ++k) {
            const Rational s(k, 40);
            const ExtRat inner = evaluate(g0, QVec{Rational(s / (1 - s))});
            const ExtRat want =
                inner.is_finite() ? ExtRat::finite(Rational((1 - s) * inner.value)) : inner;
            expect(evaluate(tg, QVec{s}) == want, "closed form disagrees with the epigraph map");
        }
    }
}

void trial_cvx0_table(const TrialConfig& cfg, std::size_t trial, TrialRng& rng,
                      const Recorder& rec) {
    const SizeBounds small{6, 4, 9, 4};
    const std::size_t row = trial % 8;
    const bool bounded1 = (row & 1) != 0;
    const bool bounded2 = (row & 2) != 0;
    const bool jkind = (row & 4) != 0;
    const Rational z1 = rng.next_positive_rational(small);
    const Rational z2 = rng.next_positive_rational(small);
    const Rational pa = rng.next_positive_rational(small);
    const Rational pb = rng.next_positive_rational(small);
    const Interval1D i1 = bounded1 ? Interval1D::up_to(z1) : Interval1D::half_line();
    const Interval1D i2 = bounded2 ? Interval1D::up_to(z2) : Interval1D::half_line();
    const InducedTransform t =
        table_1d(i1, i2, jkind ? TableKind::J : TableKind::I, pa, pb);
    rec.put("map", [&] { return map_to_json(t.map); });
    rec.put("source_window", [&] { return polyhedron_to_json(t.source_window); });

    const AdmissibilityVerdict v = classify_cvx0(t.map.mat(), t.source_window);
    expect(v.status == (jkind ? AdmissibilityStatus::cvx0_J_type
                              : AdmissibilityStatus::cvx0_I_type),
           "table row classifies with the wrong kind");
    expect(v.target_window && set_equal(*v.target_window, t.target_window),
           "classifier and table disagree on the target window");

    const Rational w =
        bounded1 ? Rational(z1 * Rational(rng.next_long(1, 7), 8)) : rng.next_positive_rational(small);
    const PLConvexFunction ind = indicator(segment1(Rational(0), w));
    const Rational slope = rng.next_positive_rational(small);
    const PLConvexFunction lin =
        PLConvexFunction::from_pieces(t.source_window, {{QVec{slope}, Rational(0)}});
    const PLConvexFunction img_i = induce(t, ind);
    const PLConvexFunction img_l = induce(t, lin);
    if (jkind) {
        expect(fn_equal(img_l, indicator(img_l.window())),
               "a linear member should map to an indicator");
        expect(is_linear_member(img_i), "an indicator should map to a linear member");
    } else {
        expect(fn_equal(img_i, indicator(img_i.window())), "an indicator should stay an indicator");
        expect(is_linear_member(img_l), "a linear member should stay linear");
    }

    const InducedTransform ti = make_cvx0_transform(inverse(t.map.mat()), t.target_window);
    expect(fn_equal(induce(ti, img_i), ind), "round trip loses the indicator");
    expect(fn_equal(induce(ti, img_l), lin), "round trip loses the linear member");

    const PLConvexFunction f = random_cvx0_on(cfg, rng, t.source_window);
    const PLConvexFunction g = sup_of({f, random_cvx0_on(cfg, rng, t.source_window)});
    expect(is_leq(f, g), "pointwise supremum should dominate");
    expect(is_leq(induce(t, f), induce(t, g)), "order is not preserved");
}

void trial_extremal(const TrialConfig& cfg, std::size_t, TrialRng& rng, const Recorder& rec) {
    const SizeBounds small{6, 4, 9, 4};
    const Rational z = rng.next_positive_rational(small);
    const Rational c = rng.next_positive_rational(small);
    rec.put("z", [&] { return rational_to_json(z); });
    rec.put("c", [&] { return rational_to_json(c); });

    const auto linear_on_ray = [&](const Rational& s) {
        return PLConvexFunction::from_pieces(ray1(), {{QVec{s}, Rational(0)}});
    };
    expect(fn_equal(j_transform(indicator(segment1(Rational(0), z))), linear_on_ray(Rational(1 / z))),
           "the indicator does not map to its linear partner");
    expect(fn_equal(j_transform(linear_on_ray(c)), indicator(segment1(Rational(0), Rational(1 / c)))),
           "the linear function does not map to its indicator partner");
    expect(fn_equal(j_transform(triangle(QVec{z}, c)),
                    triangle(QVec{Rational(z / c)}, Rational(1 / c))),
           "triangle functions are not exchanged");

    // A random inverting-fiber table map realizes the same bijection.
    const Rational z1 = rng.next_positive_rational(small);
    const Rational z2 = rng.next_positive_rational(small);
    const Interval1D i1 =
        rng.next_long(0, 1) == 0 ? Interval1D::half_line() : Interval1D::up_to(z1);
    const Interval1D i2 =
        rng.next_long(0, 1) == 0 ? Interval1D::half_line() : Interval1D::up_to(z2);
    const InducedTransform t = table_1d(i1, i2, TableKind::J, rng.next_positive_rational(small),
                                        rng.next_positive_rational(small));
    const Rational w =
        i1.bounded ? Rational(z1 * Rational(rng.next_long(1, 7), 8)) : rng.next_positive_rational(small);
    const PLConvexFunction lin =
        PLConvexFunction::from_pieces(t.source_window, {{QVec{rng.next_positive_rational(small)}, Rational(0)}});
    const PLConvexFunction img_l = induce(t, lin);
    expect(fn_equal(img_l, indicator(img_l.window())),
           "table map does not send linear members to indicators");
    expect(is_linear_member(induce(t, indicator(segment1(Rational(0), w)))),
           "table map does not send indicators to linear members");
    const InducedTransform ti = make_cvx0_transform(inverse(t.map.mat()), t.target_window);
    const Rational w2 = i2.bounded ? Rational(z2 / 2) : rng.next_positive_rational(small);
    expect(is_linear_member(induce(ti, indicator(segment1(Rational(0), w2)))),
           "inverse table map does not send indicators to linear members");
}

void trial_gallery(const TrialConfig&, std::size_t trial, TrialRng& rng, const Recorder& rec) {
    // Rational points of the unit circle via the tangent half-angle, and
    // sphere-compatible parameters the same way.
    const Rational tt = rng.next_rational(kProbe);
    const Rational den = Rational(1 + tt * tt);
    const QVec u{Rational((1 - tt * tt) / den), Rational(2 * tt / den)};
    rec.put("unit_point", [&] { return qvec_to_json(u); });
    Rational s(1);
    while (s == 1) s = rng.next_positive_rational(kProbe);
    const Rational lam = Rational(2 * s / (1 + s * s));
    rec.put("lambda", [&] { return rational_to_json(lam); });
    const ProjectiveMap ball = f_ball(2, lam);
    const QVec v = apply(ball, u);
    const bool on_sphere = Rational(v[0] * v[0] + v[1] * v[1]) == 1;
    expect(on_sphere, "a unit vector leaves the sphere");
    if (trial == 0) {
        const ProjectiveMap pinned = f_ball(2, Rational(3, 5));
        expect(apply(pinned, QVec{Rational(3, 5), Rational(4, 5)}) ==
                   QVec{Rational(15, 17), Rational(8, 17)},
               "pinned sphere point moved");
    }

    const ProjectiveMap trap = f_trapezoid(Rational(1));
    const QVec v0 = QVec::zero(2);
    const QVec v1{Rational(1), Rational(0)};
    const QVec v2{Rational(1), Rational(2)};
    const QVec v3{Rational(0), Rational(1)};
    expect(apply(trap, v0) == v1, "trapezoid cycle broken at the origin");
    expect(apply(trap, v1) == v2, "trapezoid cycle broken at the second vertex");
    expect(apply(trap, v2) == v3, "trapezoid cycle broken at the third vertex");
    expect(apply(trap, v3) == v0, "trapezoid cycle broken at the fourth vertex");
    const Polyhedron k = Polyhedron::from_vrep(VRep{2, {v0, v1, v2, v3}, {}});
    const ProjectiveMap trap_pos = sign_normalize_at(trap, QVec{Rational(1, 2), Rational(1, 2)});
    expect(set_equal(projective_image(trap_pos, k), k), "trapezoid is not preserved as a set");

    const ProjectiveMap invol = f0(2);
    expect(agree_up_to_scalar(compose(invol, invol), ProjectiveMap(2, QMat::identity(3))),
           "the canonical involution squared is not the identity");
    QVec x = rng.next_vector(2, kProbe);
    while (x[0] == 1) x = rng.next_vector(2, kProbe);
    expect(apply(invol, apply(invol, x)) == x, "the canonical involution does not undo itself");
}

using TrialBody = void (*)(const TrialConfig&, std::size_t, TrialRng&, const Recorder&);

const std::vector<std::pair<std::string, TrialBody>>& suite_table() {
    static const std::vector<std::pair<std::string, TrialBody>> table = {
        {"interval-preservation", trial_interval},
        {"composition", trial_composition},
        {"polar-lens", trial_polar_lens},
        {"canonical-form", trial_canonical},
        {"transitivity-uniqueness", trial_transitivity},
        {"cross-ratio", trial_cross_ratio},
        {"legendre-involution", trial_legendre},
        {"j-involution", trial_j_involution},
        {"a-duality", trial_a_duality},
        {"cvx-admissible", trial_cvx_admissible},
        {"cvx0-table", trial_cvx0_table},
        {"extremal-exchange", trial_extremal},
        {"gallery", trial_gallery},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& row : suite_table()) out.push_back(row.first);
        return out;
    }();
    return names;
}

SuiteReport run_suite(const TrialConfig& cfg) {
    const auto& table = suite_table();
    const auto it = std::find_if(table.begin(), table.end(),
                                 [&](const auto& row) { return row.first == cfg.suite; });
    if (it == table.end()) throw UsageError("unknown suite: \"" + cfg.suite + "\"");
    if (cfg.trials < 1) throw UsageError("a suite needs at least one trial");

    SuiteReport report;
    report.suite = cfg.suite;
    report.trials = cfg.trials;
    report.seed = cfg.seed;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        TrialRng rng(cfg.seed, trial);
        try {
            it->second(cfg, trial, rng, Recorder{});
            ++report.passed;
        } catch (const std::exception& e) {
            ++report.failed;
            if (!report.first_failure) {
                Json inputs{{"suite", cfg.suite},
                            {"trial", trial},
                            {"seed", cfg.seed},
                            {"error", e.what()}};
                // Replay the identical stream, this time recording inputs.
                TrialRng replay(cfg.seed, trial);
                try {
                    it->second(cfg, trial, replay, Recorder{&inputs});
                } catch (const std::exception&) {
                }
                report.first_failure = FirstFailure{trial, inputs.dump()};
            }
        }
    }
    report.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - start)
                              .count();
    return report;
}

}  // namespace windual
