#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "windual/projective.hpp"

using namespace windual;

namespace {

Rational q(long p, long d = 1) { return Rational(p, d); }

struct Lcg {
    unsigned long long s;
    long next(long lo, long hi) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return lo + static_cast<long>((s >> 33) % static_cast<unsigned long long>(hi - lo + 1));
    }
    Rational rat() { return Rational(next(-9, 9), next(1, 5)); }
};

QVec random_vec(Lcg& g, std::size_t n) {
    QVec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = g.rat();
    return v;
}

ProjectiveMap random_map(Lcg& g, std::size_t n, bool require_non_affine = false) {
    for (;;) {
        QMat m(n + 1, n + 1);
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t j = 0; j <= n; ++j) m.at(i, j) = g.rat();
        if (det(m) == 0) continue;
        if (require_non_affine) {
            bool affine = true;
            for (std::size_t j = 0; j < n; ++j)
                if (m.at(n, j) != 0) affine = false;
            if (affine) continue;
        }
        return ProjectiveMap(n, std::move(m));
    }
}

QVec random_domain_point(Lcg& g, const ProjectiveMap& f) {
    for (;;) {
        QVec x = random_vec(g, f.dim());
        if (map_denominator(f, x) != 0) return x;
    }
}

// The map (x, y) |-> (x/y, 1/y) on the upper half plane.
ProjectiveMap halfplane_swap() {
    return ProjectiveMap(2, QMat{{q(1), q(0), q(0)}, {q(0), q(0), q(1)}, {q(0), q(1), q(0)}});
}

}  // namespace

TEST_CASE("application at fixed points") {
    ProjectiveMap f = f0(2);
    CHECK(apply(f, QVec{q(2), q(0)}) == QVec{q(2), q(0)});
    CHECK(apply(f, QVec{q(3), q(1)}) == QVec{q(3, 2), q(1, 2)});
    CHECK_THROWS_AS(apply(f, QVec{q(1), q(5)}), OnHyperplaneError);
    CHECK_THROWS_AS(apply(f, QVec{q(1)}), ShapeError);

    ProjectiveMap j = halfplane_swap();
    CHECK(apply(j, QVec{q(2), q(4)}) == QVec{q(1, 2), q(1, 4)});
}

TEST_CASE("map denominators") {
    ProjectiveMap f = f0(1);
    CHECK(map_denominator(f, QVec{q(3)}) == q(2));
    CHECK(map_denominator(f, QVec{q(1)}) == q(0));
    CHECK(map_denominator_linear(f, QVec{q(5)}) == q(5));

    ProjectiveMap aff = translation_map(QVec{q(7)});
    CHECK(map_denominator(aff, QVec{q(123)}) == q(1));
    CHECK(map_denominator_linear(aff, QVec{q(123)}) == q(0));
}

TEST_CASE("composition fixed cases") {
    ProjectiveMap f = f0(1);
    ProjectiveMap ff = compose(f, f);
    CHECK(agree_up_to_scalar(ff, linear_map(QMat::identity(1))));

    ProjectiveMap t = f_trapezoid(q(1));
    CHECK(agree_up_to_scalar(compose(t, linear_map(QMat::identity(2))), t));

    QVec v{q(3), q(-1, 2)};
    CHECK(agree_up_to_scalar(compose(translation_map(v), translation_map(-v)),
                             linear_map(QMat::identity(2))));
    CHECK_THROWS_AS(compose(f, t), ShapeError);
}

TEST_CASE("inverse fixed cases") {
    CHECK(agree_up_to_scalar(inverse_map(f0(2)), f0(2)));

    QMat a{{q(2), q(1)}, {q(1), q(1)}};
    CHECK(agree_up_to_scalar(inverse_map(linear_map(a)), linear_map(inverse(a))));

    ProjectiveMap j = halfplane_swap();
    CHECK(agree_up_to_scalar(inverse_map(j), j));
}

TEST_CASE("composition and inverse properties") {
    Lcg g{20260818ULL};
    for (int trial = 0; trial < 500; ++trial) {
        std::size_t n = 1 + static_cast<std::size_t>(g.next(0, 2));
        ProjectiveMap f = random_map(g, n);
        ProjectiveMap h = random_map(g, n);
        ProjectiveMap fh = compose(f, h);
        CHECK(fh.mat() == f.mat() * h.mat());
        for (int k = 0; k < 10; ++k) {
            QVec x = random_vec(g, n);
            if (map_denominator(h, x) == 0 || map_denominator(fh, x) == 0) continue;
            QVec hx = apply(h, x);
            if (map_denominator(f, hx) == 0) continue;
            CHECK(apply(fh, x) == apply(f, hx));
        }
        QVec x = random_domain_point(g, f);
        QVec y = apply(f, x);
        ProjectiveMap fi = inverse_map(f);
        REQUIRE(map_denominator(fi, y) != 0);
        CHECK(apply(fi, y) == x);
        CHECK(agree_up_to_scalar(compose(fi, f), linear_map(QMat::identity(n))));
    }
}

TEST_CASE("affineness and defining hyperplane") {
    CHECK(!is_affine(f0(2)));
    CHECK(!is_affine(f_trapezoid(q(1))));
    QMat two = QMat::identity(2).scaled(q(2));
    ProjectiveMap aff = compose(translation_map(QVec{q(1), q(-3)}), linear_map(two));
    CHECK(is_affine(aff));
    CHECK(!defining_hyperplane(aff).has_value());
    CHECK(!image_boundary(aff).has_value());

    auto h = defining_hyperplane(f0(2));
    REQUIRE(h.has_value());
    CHECK(h->same_set(Hyperplane{QVec{q(1), q(0)}, q(1)}));

    auto hj = defining_hyperplane(halfplane_swap());
    REQUIRE(hj.has_value());
    CHECK(hj->same_set(Hyperplane{QVec{q(0), q(1)}, q(0)}));
}

TEST_CASE("hyperplane set identity") {
    Hyperplane a{QVec{q(2), q(0)}, q(2)};
    Hyperplane b{QVec{q(1), q(0)}, q(1)};
    Hyperplane c{QVec{q(-3), q(0)}, q(-3)};
    CHECK(a.same_set(b));
    CHECK(a.same_set(c));
    CHECK(!a.same_set(Hyperplane{QVec{q(1), q(0)}, q(0)}));
    CHECK(!a.same_set(Hyperplane{QVec{q(0), q(1)}, q(1)}));
}

TEST_CASE("image boundary") {
    auto b = image_boundary(f0(2));
    REQUIRE(b.has_value());
    CHECK(b->same_set(Hyperplane{QVec{q(1), q(0)}, q(1)}));

    auto bj = image_boundary(halfplane_swap());
    REQUIRE(bj.has_value());
    CHECK(bj->same_set(Hyperplane{QVec{q(0), q(1)}, q(0)}));

    // The boundary depends only on the linear block and the denominator
    // normal, never on the translation column.
    ProjectiveMap p1(1, QMat{{q(2), q(0)}, {q(3), q(1)}});
    ProjectiveMap p2(1, QMat{{q(2), q(5)}, {q(3), q(7)}});
    auto b1 = image_boundary(p1);
    auto b2 = image_boundary(p2);
    REQUIRE(b1.has_value());
    REQUIRE(b2.has_value());
    CHECK(b1->same_set(*b2));

    // Sampled interior images stay strictly on one side, never across.
    Lcg g{7ULL};
    for (int k = 0; k < 200; ++k) {
        ProjectiveMap f = random_map(g, 2, true);
        auto bd = image_boundary(f);
        REQUIRE(bd.has_value());
        QVec x = random_domain_point(g, f);
        QVec y = apply(f, x);
        CHECK(dot(bd->normal, y) != bd->offset);
    }
}

TEST_CASE("sign normalization") {
    ProjectiveMap f = f0(2);
    ProjectiveMap pos = sign_normalize_at(f, QVec{q(3), q(1)});
    CHECK(pos.sign_normalized());
    CHECK(pos.mat() == f.mat());
    ProjectiveMap neg = sign_normalize_at(f, QVec{q(0), q(0)});
    CHECK(neg.mat() == f.mat().scaled(q(-1)));
    CHECK(map_denominator(neg, QVec{q(0), q(0)}) > 0);
    CHECK_THROWS_AS(sign_normalize_at(f, QVec{q(1), q(0)}), OnHyperplaneError);
}

TEST_CASE("canonical form fixed cases") {
    QVec zero2 = QVec::zero(2);
    CanonicalForm cf = canonical_form(f0(2), zero2);
    CHECK(cf.B == QMat::identity(2));
    CHECK(cf.C == QMat::identity(2));
    CHECK(cf.y0 == zero2);

    ProjectiveMap dbl(2, QMat{{q(2), q(0), q(0)}, {q(0), q(2), q(0)}, {q(1), q(0), q(-1)}});
    CanonicalForm cd = canonical_form(dbl, zero2);
    CHECK(cd.C == QMat::identity(2));
    CHECK(cd.B == QMat::identity(2).scaled(q(1, 2)));
    CHECK(cd.y0 == zero2);

    ProjectiveMap aff = translation_map(QVec{q(1), q(2)});
    CHECK_THROWS_AS(canonical_form(aff, zero2), PreconditionError);
}

TEST_CASE("canonical form properties") {
    Lcg g{99ULL};
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + static_cast<std::size_t>(g.next(0, 2));
        ProjectiveMap f = random_map(g, n, true);
        QVec x0 = random_domain_point(g, f);
        CanonicalForm cf = canonical_form(f, x0);
        CHECK(cf.y0 == apply(f, x0));
        CHECK(det(cf.B) != 0);
        CHECK(det(cf.C) != 0);

        // x |-> B(f(Cx + x0) - y0) reproduces the canonical involution.
        ProjectiveMap pre = compose(translation_map(x0), linear_map(cf.C));
        ProjectiveMap post = compose(linear_map(cf.B), translation_map(-cf.y0));
        ProjectiveMap whole = compose(post, compose(f, pre));
        ProjectiveMap target = f0(n);
        CHECK(agree_up_to_scalar(whole, target));
        for (int k = 0; k < 10; ++k) {
            QVec x = random_domain_point(g, target);
            if (map_denominator(whole, x) == 0) continue;
            CHECK(apply(whole, x) == apply(target, x));
        }
    }
}

TEST_CASE("simplex transitivity fixed case") {
    std::vector<QVec> xs{QVec::zero(2), QVec{q(1), q(0)}, QVec{q(0), q(1)}};
    QVec y{q(1, 2), q(1, 4)};
    QVec p{q(1, 3), q(1, 3)};
    ProjectiveMap f = from_simplex_data(xs, y, p);

    CHECK(f.mat().at(0, 0) == q(2, 3));
    CHECK(f.mat().at(1, 1) == q(4, 3));
    CHECK(f.mat().at(0, 1) == q(0));
    CHECK(f.mat().at(1, 0) == q(0));
    CHECK(f.mat().at(2, 0) == q(-2, 3));
    CHECK(f.mat().at(2, 1) == q(0));
    CHECK(f.mat().at(2, 2) == q(4, 3));

    CHECK(apply(f, xs[0]) == QVec::zero(2));
    CHECK(apply(f, xs[1]) == QVec{q(1), q(0)});
    CHECK(apply(f, xs[2]) == QVec{q(0), q(1)});
    CHECK(apply(f, y) == p);

    // Nothing to move: the data already sits in normal position.
    ProjectiveMap id = from_simplex_data(xs, QVec{q(1, 4), q(1, 4)}, QVec{q(1, 4), q(1, 4)});
    CHECK(agree_up_to_scalar(id, linear_map(QMat::identity(2))));

    std::vector<QVec> bad{QVec::zero(2), QVec{q(1), q(1)}, QVec{q(2), q(2)}};
    CHECK_THROWS_AS(from_simplex_data(bad, y, p), SingularMatrixError);
    CHECK_THROWS_AS(from_simplex_data(xs, QVec{q(2), q(2)}, p), PreconditionError);
    CHECK_THROWS_AS(from_simplex_data(xs, y, QVec{q(1, 2), q(1, 2)}), PreconditionError);
}

namespace {

// A random affinely independent simplex together with a strictly interior
// point given by random positive weights.
std::pair<std::vector<QVec>, QVec> random_simplex_with_interior(Lcg& g, std::size_t n) {
    for (;;) {
        std::vector<QVec> xs;
        for (std::size_t i = 0; i <= n; ++i) xs.push_back(random_vec(g, n));
        QMat m(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) m.at(i, j) = xs[j + 1][i] - xs[0][i];
        if (det(m) == 0) continue;
        QVec weights(n + 1);
        Rational total = 0;
        for (std::size_t i = 0; i <= n; ++i) {
            weights[i] = Rational(g.next(1, 9), g.next(1, 5));
            total += weights[i];
        }
        QVec y = QVec::zero(n);
        for (std::size_t i = 0; i <= n; ++i) y = y + xs[i].scaled(Rational(weights[i] / total));
        return {std::move(xs), std::move(y)};
    }
}

QVec random_interior_simplex_point(Lcg& g, std::size_t n) {
    QVec w(n + 1);
    Rational total = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        w[i] = Rational(g.next(1, 9), g.next(1, 5));
        total += w[i];
    }
    QVec p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = w[i] / total;
    return p;
}

}  // namespace

TEST_CASE("simplex transitivity properties") {
    Lcg g{424242ULL};
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + static_cast<std::size_t>(g.next(0, 2));
        auto [xs, y] = random_simplex_with_interior(g, n);
        QVec p = random_interior_simplex_point(g, n);
        ProjectiveMap f = from_simplex_data(xs, y, p);
        CHECK(apply(f, xs[0]) == QVec::zero(n));
        for (std::size_t i = 1; i <= n; ++i) CHECK(apply(f, xs[i]) == QVec::unit(n, i - 1));
        CHECK(apply(f, y) == p);
    }
}

TEST_CASE("reconstruction from simplex values is unique up to scalar") {
    Lcg g{31337ULL};
    int done = 0;
    while (done < 100) {
        std::size_t n = 1 + static_cast<std::size_t>(g.next(0, 2));
        ProjectiveMap f = random_map(g, n);
        auto [xs, y] = random_simplex_with_interior(g, n);
        bool ok = map_denominator(f, y) != 0;
        for (const auto& x : xs) ok = ok && map_denominator(f, x) != 0;
        if (!ok) continue;
        // The images must again be a simplex with interior point; skip the
        // draw when the simplex straddles the defining hyperplane.
        Rational side = map_denominator(f, y);
        for (const auto& x : xs) ok = ok && (map_denominator(f, x) > 0) == (side > 0);
        if (!ok) continue;

        std::vector<QVec> fxs;
        for (const auto& x : xs) fxs.push_back(apply(f, x));
        QVec fy = apply(f, y);
        QVec p0 = random_interior_simplex_point(g, n);

        ProjectiveMap s1 = from_simplex_data(xs, y, p0);
        ProjectiveMap s2 = from_simplex_data(fxs, fy, p0);
        ProjectiveMap rebuilt = compose(inverse_map(s2), s1);
        CHECK(agree_up_to_scalar(rebuilt, f));
        ++done;
    }
}

TEST_CASE("agreement up to scalar") {
    ProjectiveMap f = f_trapezoid(q(2));
    CHECK(agree_up_to_scalar(f, f.scaled(q(3))));
    CHECK(agree_up_to_scalar(f, f.scaled(q(-1, 7))));
    CHECK(!agree_up_to_scalar(f0(2), linear_map(QMat::identity(2))));
    CHECK(!agree_up_to_scalar(f0(1), f0(2)));
}

TEST_CASE("cross ratio fixed values") {
    CHECK(cross_ratio(q(0), q(1), q(2), q(3)) == q(4, 3));
    CHECK(cross_ratio(q(1), q(0), q(2), q(3)) == q(3, 4));
    CHECK_THROWS_AS(cross_ratio(q(0), q(1), q(1), q(3)), DomainError);
    CHECK_THROWS_AS(cross_ratio(q(0), q(1), q(2), q(1)), DomainError);
    CHECK_THROWS_AS(cross_ratio(q(0), q(1), q(2), q(0)), DomainError);

    // Images of (2,3,4,5) under x/(x-1) keep the same cross ratio.
    ProjectiveMap f = f0(1);
    Rational a = apply(f, QVec{q(2)})[0];
    Rational b = apply(f, QVec{q(3)})[0];
    Rational c = apply(f, QVec{q(4)})[0];
    Rational d = apply(f, QVec{q(5)})[0];
    CHECK(cross_ratio(a, b, c, d) == cross_ratio(q(2), q(3), q(4), q(5)));
    CHECK(cross_ratio(q(2), q(3), q(4), q(5)) == q(4, 3));
}

TEST_CASE("cross ratio under one dimensional maps") {
    Lcg g{555ULL};
    int done = 0;
    while (done < 300) {
        ProjectiveMap f = random_map(g, 1);
        Rational vals[4];
        bool ok = true;
        for (int i = 0; i < 4 && ok; ++i) {
            vals[i] = g.rat();
            for (int j = 0; j < i; ++j) ok = ok && vals[i] != vals[j];
            ok = ok && map_denominator(f, QVec{vals[i]}) != 0;
        }
        if (!ok) continue;
        Rational imgs[4];
        for (int i = 0; i < 4; ++i) imgs[i] = apply(f, QVec{vals[i]})[0];
        ok = imgs[2] != imgs[1] && imgs[3] != imgs[1] && imgs[3] != imgs[0];
        if (!ok) continue;
        CHECK(cross_ratio(imgs[0], imgs[1], imgs[2], imgs[3]) ==
              cross_ratio(vals[0], vals[1], vals[2], vals[3]));

        // Permutation identities.
        Rational r = cross_ratio(vals[0], vals[1], vals[2], vals[3]);
        CHECK(cross_ratio(vals[0], vals[1], vals[3], vals[2]) == 1 / r);
        CHECK(cross_ratio(vals[1], vals[0], vals[2], vals[3]) == 1 / r);
        if (vals[1] != vals[2] && vals[3] != vals[2]) {
            CHECK(cross_ratio(vals[0], vals[2], vals[1], vals[3]) == 1 - r);
        }
        ++done;
    }
}

TEST_CASE("interval preservation") {
    Lcg g{808ULL};
    const Rational ts[5] = {q(0), q(1, 4), q(1, 2), q(3, 4), q(1)};
    int done = 0;
    while (done < 300) {
        std::size_t n = 1 + static_cast<std::size_t>(g.next(0, 2));
        ProjectiveMap f = random_map(g, n, true);
        QVec a = random_vec(g, n);
        QVec b = random_vec(g, n);
        Rational da = map_denominator(f, a);
        Rational db = map_denominator(f, b);
        if (da == 0 || db == 0 || (da > 0) != (db > 0)) continue;

        QVec qa = apply(f, a);
        QVec qb = apply(f, b);
        for (const Rational& t : ts) {
            QVec pt = a + (b - a).scaled(t);
            QVec qt = apply(f, pt);
            QVec d1 = qt - qa;
            QVec d2 = qb - qa;
            QMat pair(2, n);
            for (std::size_t i = 0; i < n; ++i) {
                pair.at(0, i) = d1[i];
                pair.at(1, i) = d2[i];
            }
            CHECK(rank(pair) <= 1);
            if (d2.is_zero()) {
                CHECK(d1.is_zero());
            } else {
                std::size_t i = 0;
                while (d2[i] == 0) ++i;
                Rational s = d1[i] / d2[i];
                CHECK(qt == qa + d2.scaled(s));
                CHECK(s >= 0);
                CHECK(s <= 1);
            }
        }
        ++done;
    }
}

TEST_CASE("gallery fixed matrices") {
    ProjectiveMap f = f0(2);
    CHECK(f.mat() == QMat{{q(1), q(0), q(0)}, {q(0), q(1), q(0)}, {q(1), q(0), q(-1)}});
    CHECK_THROWS_AS(f0(0), ShapeError);

    ProjectiveMap ball = f_ball(2, q(3, 5));
    CHECK(ball.mat() ==
          QMat{{q(5, 3), q(0), q(1)}, {q(0), q(4, 3), q(0)}, {q(1), q(0), q(5, 3)}});
    CHECK(apply(ball, QVec{q(3, 5), q(4, 5)}) == QVec{q(15, 17), q(8, 17)});
    CHECK(apply(ball, QVec::zero(2)) == QVec{q(3, 5), q(0)});
    CHECK_THROWS_AS(f_ball(2, q(1, 2)), PreconditionError);
    CHECK_THROWS_AS(f_ball(2, q(2)), PreconditionError);
    CHECK_THROWS_AS(f_ball(2, q(0)), PreconditionError);

    ProjectiveMap t = f_trapezoid(q(1));
    QVec v0 = QVec::zero(2);
    QVec v1{q(1), q(0)};
    QVec v2{q(1), q(2)};
    QVec v3{q(0), q(1)};
    CHECK(apply(t, v0) == v1);
    CHECK(apply(t, v1) == v2);
    CHECK(apply(t, v2) == v3);
    CHECK(apply(t, v3) == v0);
    CHECK_THROWS_AS(f_trapezoid(q(0)), PreconditionError);
    CHECK_THROWS_AS(f_trapezoid(q(-2)), PreconditionError);
}

TEST_CASE("ball map preserves the rational sphere") {
    Lcg g{1213ULL};
    for (const Rational& lam : {q(3, 5), q(5, 13)}) {
        ProjectiveMap ball = f_ball(2, lam);
        for (int k = 0; k < 200; ++k) {
            // Rational circle points from the tangent half-angle chart.
            Rational t = g.rat();
            Rational den = 1 + t * t;
            QVec x{Rational((1 - t * t) / den), Rational(2 * t / den)};
            REQUIRE(map_denominator(ball, x) != 0);
            QVec y = apply(ball, x);
            CHECK(y[0] * y[0] + y[1] * y[1] == 1);
        }
    }
}
