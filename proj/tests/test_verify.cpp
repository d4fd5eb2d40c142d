#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "windual/json_io.hpp"
#include "windual/verify.hpp"

#include <string>
#include <vector>

using namespace windual;

namespace {

Rational q(long p, long d = 1) { return Rational(Integer(p), Integer(d)); }

Polyhedron ray_window() {
    return Polyhedron::from_vrep(VRep{1, {QVec{q(0)}}, {QVec{q(1)}}});
}

Polyhedron segment(long a, long b, long den = 1) {
    return Polyhedron::from_vrep(VRep{1, {QVec{q(a, den)}, QVec{q(b, den)}}, {}});
}

TrialConfig small_config(std::string suite, std::size_t dim, std::size_t trials,
                         std::uint64_t seed) {
    TrialConfig cfg;
    cfg.suite = std::move(suite);
    cfg.dim = dim;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.bounds.max_vertices = 5;
    cfg.bounds.max_pieces = 3;
    cfg.bounds.max_numerator = 12;
    cfg.bounds.max_denominator = 6;
    return cfg;
}

std::string report_fingerprint(const SuiteReport& r) {
    Json j = report_to_json(r);
    j["ms"] = 0;
    return j.dump();
}

}  // namespace

TEST_CASE("trial rng is deterministic per (seed, stream) and spreads across streams") {
    TrialRng a(7, 3);
    TrialRng b(7, 3);
    for (int i = 0; i < 50; ++i) CHECK(a.next_u64() == b.next_u64());

    TrialRng c(7, 4);
    TrialRng d(8, 3);
    int differ_stream = 0;
    int differ_seed = 0;
    TrialRng a2(7, 3);
    for (int i = 0; i < 50; ++i) {
        const std::uint64_t base = a2.next_u64();
        if (base != c.next_u64()) ++differ_stream;
        if (base != d.next_u64()) ++differ_seed;
    }
    CHECK(differ_stream > 40);
    CHECK(differ_seed > 40);

    TrialRng e(11, 0);
    for (int i = 0; i < 200; ++i) {
        const long v = e.next_long(-3, 5);
        const bool in_range = v >= -3 && v <= 5;
        CHECK(in_range);
    }
    SizeBounds b5{6, 4, 5, 3};
    for (int i = 0; i < 100; ++i) {
        const Rational r = e.next_rational(b5);
        const bool bounded = r >= q(-5) && r <= q(5);
        CHECK(bounded);
        const Rational p = e.next_positive_rational(b5);
        const bool positive = p > 0 && p <= q(5);
        CHECK(positive);
    }
    CHECK_THROWS_AS(e.next_long(2, 1), UsageError);
}

TEST_CASE("generated polytopes satisfy their constraints") {
    TrialConfig cfg = small_config("", 2, 0, 0);
    for (std::uint64_t t = 0; t < 20; ++t) {
        TrialRng rng(101, t);
        const Polyhedron p = gen_polytope(cfg, rng, GenConstraint::zero_interior());
        CHECK(contains_point(p, QVec::zero(2)));
        CHECK(to_vrep(p).rays.empty());
        // The origin is strictly inside: every facet inequality is slack there.
        for (const auto& [a, b] : to_hrep(p).ineqs) CHECK(b > 0);

        TrialRng rng2(101, t);
        const GenConstraint half = GenConstraint::inside(QVec::unit(2, 0), q(1, 2));
        const Polyhedron ph = gen_polytope(cfg, rng2, half);
        CHECK(to_vrep(ph).rays.empty());
        for (const auto& v : to_vrep(ph).vertices) CHECK(dot(half.normal, v) <= half.offset);

        TrialRng rng3(101, t);
        const Polyhedron pw = gen_polytope(cfg, rng3, GenConstraint::cvx0_window());
        CHECK(contains_point(pw, QVec::zero(2)));
    }

    // Unsatisfiable half-space: every candidate coordinate is far too small.
    TrialRng rng(5, 0);
    const GenConstraint hopeless = GenConstraint::inside(QVec::unit(2, 0), q(-1000000));
    CHECK_THROWS_AS(gen_polytope(cfg, rng, hopeless), GenerationError);
}

TEST_CASE("generated polytopes are reproducible and vary across trials") {
    TrialConfig cfg = small_config("", 2, 0, 0);
    TrialRng r1(42, 9);
    TrialRng r2(42, 9);
    const Polyhedron p1 = gen_polytope(cfg, r1, GenConstraint::zero_interior());
    const Polyhedron p2 = gen_polytope(cfg, r2, GenConstraint::zero_interior());
    CHECK(to_vrep(p1) == to_vrep(p2));

    bool varied = false;
    for (std::uint64_t t = 10; t < 14 && !varied; ++t) {
        TrialRng r3(42, t);
        varied = !(to_vrep(gen_polytope(cfg, r3, GenConstraint::zero_interior())) == to_vrep(p1));
    }
    CHECK(varied);
}

TEST_CASE("generated functions land in the requested class") {
    TrialConfig cfg = small_config("", 2, 0, 0);
    for (std::uint64_t t = 0; t < 12; ++t) {
        TrialRng rng(77, t);
        const PLConvexFunction f = gen_plfunc(cfg, rng, FnClass::cvx);
        CHECK(f.dim() == 2);
        CHECK(evaluate(f, QVec::zero(2)).is_finite());

        TrialRng rng2(77, t);
        const PLConvexFunction g = gen_plfunc(cfg, rng2, FnClass::cvx0);
        CHECK(in_cvx0(g));

        TrialRng rng3(77, t);
        const PLConvexFunction g2 = gen_plfunc(cfg, rng3, FnClass::cvx0);
        CHECK(set_equal(g.epigraph(), g2.epigraph()));
    }
}

TEST_CASE("generated maps are invertible with positive denominators on the domain") {
    TrialConfig cfg = small_config("", 2, 0, 0);
    for (std::uint64_t t = 0; t < 12; ++t) {
        TrialRng rng(13, t);
        const Polyhedron p = gen_polytope(cfg, rng, GenConstraint::zero_interior());
        const ProjectiveMap f = gen_flmap(cfg, rng, p);
        CHECK(det(f.mat()) != 0);
        CHECK_FALSE(is_affine(f));
        for (const auto& v : to_vrep(p).vertices) CHECK(map_denominator(f, v) > 0);

        const ProjectiveMap g = gen_flmap(cfg, rng, p, true);
        CHECK(is_affine(g));
        CHECK(det(g.mat()) != 0);
    }

    // A full line in the domain leaves no valid denominator row.
    const Polyhedron line =
        Polyhedron::from_vrep(VRep{1, {QVec{q(0)}}, {QVec{q(1)}, QVec{q(-1)}}});
    TrialRng rng(3, 0);
    CHECK_THROWS_AS(gen_flmap(cfg, rng, line), GenerationError);
    CHECK_THROWS_AS(gen_flmap(cfg, rng, Polyhedron::empty_set(1)), PreconditionError);
}

TEST_CASE("radial oracle reproduces known values") {
    const PLConvexFunction l2 =
        PLConvexFunction::from_pieces(ray_window(), {{QVec{q(2)}, q(0)}});
    CHECK(oracle_j_pointwise(l2, QVec{q(1, 4)}) == ExtRat::finite(q(0)));
    CHECK(oracle_j_pointwise(l2, QVec{q(1, 2)}) == ExtRat::finite(q(0)));
    CHECK(oracle_j_pointwise(l2, QVec{q(1)}) == ExtRat::plus_inf());

    const PLConvexFunction ind03 = indicator(segment(0, 3));
    CHECK(oracle_j_pointwise(ind03, QVec{q(1)}) == ExtRat::finite(q(1, 3)));
    CHECK(oracle_j_pointwise(ind03, QVec{q(6)}) == ExtRat::finite(q(2)));

    const PLConvexFunction zero2 =
        PLConvexFunction::from_pieces(Polyhedron::full_space(2), {});
    CHECK(oracle_j_pointwise(zero2, QVec{q(9), q(-4)}) == ExtRat::finite(q(0)));

    const PLConvexFunction origin_only = indicator(Polyhedron::point(QVec::zero(2)));
    CHECK(oracle_j_pointwise(origin_only, QVec{q(0), q(0)}) == ExtRat::finite(q(0)));
    CHECK(oracle_j_pointwise(origin_only, QVec{q(1), q(0)}) == ExtRat::plus_inf());

    const PLConvexFunction not_at_zero =
        PLConvexFunction::from_pieces(segment(-1, 1), {{QVec{q(0)}, q(1)}});
    CHECK_THROWS_AS(oracle_j_pointwise(not_at_zero, QVec{q(0)}), PreconditionError);
    CHECK_THROWS_AS(oracle_j_pointwise(origin_only, QVec{q(1)}), ShapeError);
}

TEST_CASE("polarity oracle reproduces known values") {
    const PLConvexFunction abs1 = PLConvexFunction::from_pieces(
        Polyhedron::full_space(1), {{QVec{q(1)}, q(0)}, {QVec{q(-1)}, q(0)}});
    CHECK(oracle_a_pointwise(abs1, QVec{q(1, 2)}) == ExtRat::finite(q(1, 2)));
    CHECK(oracle_a_pointwise(abs1, QVec{q(-7)}) == ExtRat::finite(q(7)));
    CHECK(oracle_a_pointwise(abs1, QVec{q(0)}) == ExtRat::finite(q(0)));

    const PLConvexFunction zero2 =
        PLConvexFunction::from_pieces(Polyhedron::full_space(2), {});
    CHECK(oracle_a_pointwise(zero2, QVec{q(1), q(0)}) == ExtRat::plus_inf());
    CHECK(oracle_a_pointwise(zero2, QVec{q(0), q(0)}) == ExtRat::finite(q(0)));

    const PLConvexFunction origin_only = indicator(Polyhedron::point(QVec::zero(2)));
    CHECK(oracle_a_pointwise(origin_only, QVec{q(5), q(7)}) == ExtRat::finite(q(0)));
    CHECK(oracle_a_pointwise(origin_only, QVec{q(0), q(0)}) == ExtRat::finite(q(0)));
}

TEST_CASE("oracles agree with the transforms on random inputs") {
    for (std::size_t dim = 1; dim <= 2; ++dim) {
        TrialConfig cfg = small_config("", dim, 0, 0);
        for (std::uint64_t t = 0; t < 15; ++t) {
            TrialRng rng(900 + dim, t);
            const PLConvexFunction f = gen_plfunc(cfg, rng, FnClass::cvx0);
            const PLConvexFunction jf = j_transform(f);
            const PLConvexFunction af = a_transform(f);
            SizeBounds probe{6, 4, 6, 4};
            for (int k = 0; k < 12; ++k) {
                const QVec x = rng.next_vector(dim, probe);
                CHECK(evaluate(jf, x) == oracle_j_pointwise(f, x));
                CHECK(evaluate(af, x) == oracle_a_pointwise(f, x));
            }
        }
    }
}

TEST_CASE("every suite passes on small runs") {
    const std::vector<std::pair<std::string, std::size_t>> plan = {
        {"interval-preservation", 2}, {"composition", 2},      {"polar-lens", 2},
        {"canonical-form", 2},        {"transitivity-uniqueness", 2},
        {"cross-ratio", 1},           {"legendre-involution", 2},
        {"j-involution", 2},          {"a-duality", 1},        {"cvx-admissible", 1},
        {"cvx0-table", 1},            {"extremal-exchange", 1},
        {"gallery", 2},
    };
    CHECK(suite_names().size() == plan.size());
    for (const auto& [suite, dim] : plan) {
        const std::size_t trials = suite == "cvx0-table" ? 8 : 4;
        const SuiteReport r = run_suite(small_config(suite, dim, trials, 20260818));
        INFO("suite ", suite);
        CHECK(r.suite == suite);
        CHECK(r.trials == trials);
        CHECK(r.passed == trials);
        CHECK(r.failed == 0);
        CHECK_FALSE(r.first_failure.has_value());
        CHECK(r.passed + r.failed == r.trials);
    }
}

TEST_CASE("suites that fix their own dimension pass regardless of the requested one") {
    const SuiteReport g = run_suite(small_config("gallery", 3, 3, 5));
    CHECK(g.failed == 0);
    const SuiteReport x = run_suite(small_config("cross-ratio", 2, 4, 5));
    CHECK(x.failed == 0);
    const SuiteReport a = run_suite(small_config("a-duality", 2, 3, 5));
    CHECK(a.failed == 0);
    const SuiteReport c = run_suite(small_config("cvx-admissible", 2, 2, 5));
    CHECK(c.failed == 0);
}

TEST_CASE("reports are deterministic for a fixed seed") {
    const SuiteReport r1 = run_suite(small_config("polar-lens", 2, 5, 33));
    const SuiteReport r2 = run_suite(small_config("polar-lens", 2, 5, 33));
    CHECK(report_fingerprint(r1) == report_fingerprint(r2));
}

TEST_CASE("failing trials are recorded with a replayable reproducer") {
    // Degenerate bounds make four distinct cross-ratio parameters impossible,
    // so every trial fails during generation.
    TrialConfig cfg = small_config("cross-ratio", 1, 3, 7);
    cfg.bounds.max_numerator = 0;
    const SuiteReport r = run_suite(cfg);
    CHECK(r.passed == 0);
    CHECK(r.failed == 3);
    REQUIRE(r.first_failure.has_value());
    CHECK(r.first_failure->trial == 0);
    const Json inputs = Json::parse(r.first_failure->inputs_json);
    CHECK(inputs.at("suite") == "cross-ratio");
    CHECK(inputs.at("trial") == 0);
    CHECK(inputs.at("seed") == 7);
    const std::string error = inputs.at("error").get<std::string>();
    CHECK(error.find("distinct") != std::string::npos);
}

TEST_CASE("run_suite rejects unknown names and empty runs") {
    CHECK_THROWS_AS(run_suite(small_config("no-such-suite", 2, 4, 1)), UsageError);
    CHECK_THROWS_AS(run_suite(small_config("polar-lens", 2, 0, 1)), UsageError);
}
