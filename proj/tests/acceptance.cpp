// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
//
// Every check is exact (rational arithmetic, zero tolerance). Randomized
// criteria run through the verify module's seeded suites, so every line is
// reproducible bit-for-bit.

#include "windual/json_io.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace windual;

namespace {

Rational q(long p, long d = 1) { return Rational(Integer(p), Integer(d)); }

SuiteReport quick(const std::string& suite, std::size_t dim, std::size_t trials,
                  std::uint64_t seed) {
    TrialConfig cfg;
    cfg.suite = suite;
    cfg.dim = dim;
    cfg.trials = trials;
    cfg.seed = seed;
    return run_suite(cfg);
}

bool suites_pass(const std::vector<SuiteReport>& reps, std::string& detail) {
    bool ok = true;
    for (const SuiteReport& r : reps) {
        if (r.failed != 0 || r.passed != r.trials) {
            ok = false;
            std::ostringstream os;
            os << r.suite << ": " << r.failed << "/" << r.trials << " failed";
            if (r.first_failure) os << " (first at trial " << r.first_failure->trial << ")";
            if (!detail.empty()) detail += "; ";
            detail += os.str();
        }
    }
    return ok;
}

bool expect(bool cond, const char* what, std::string& detail) {
    if (!cond) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
    return cond;
}

Polyhedron segment01() {
    return Polyhedron::from_vrep(VRep{1, {QVec{q(0)}, QVec{q(1)}}, {}});
}

Polyhedron orthant2() {
    return Polyhedron::from_vrep(
        VRep{2, {QVec{q(0), q(0)}}, {QVec{q(1), q(0)}, QVec{q(0), q(1)}}});
}

Polyhedron simplex2() {
    return Polyhedron::from_vrep(
        VRep{2, {QVec{q(0), q(0)}, QVec{q(1), q(0)}, QVec{q(0), q(1)}}, {}});
}

Polyhedron square_sym2() {
    return Polyhedron::from_vrep(
        VRep{2,
             {QVec{q(-1), q(-1)}, QVec{q(1), q(-1)}, QVec{q(-1), q(1)}, QVec{q(1), q(1)}},
             {}});
}

struct Criterion {
    std::string name;
    long limit_ms;
    std::function<bool(std::string&)> check;
};

}  // namespace

int main() {
    const std::uint64_t seed = 42;
    std::vector<Criterion> criteria;

    criteria.push_back({"polar identity under the standard map", 20000, [&](std::string& d) {
        return suites_pass({quick("polar-lens", 1, 100, seed),
                            quick("polar-lens", 2, 100, seed + 1),
                            quick("polar-lens", 3, 100, seed + 2)},
                           d);
    }});

    criteria.push_back({"composition and inverse laws", 10000, [&](std::string& d) {
        return suites_pass({quick("composition", 1, 100, seed),
                            quick("composition", 2, 200, seed + 1),
                            quick("composition", 3, 200, seed + 2)},
                           d);
    }});

    criteria.push_back({"interval preservation", 10000, [&](std::string& d) {
        return suites_pass({quick("interval-preservation", 2, 250, seed),
                            quick("interval-preservation", 3, 250, seed + 1)},
                           d);
    }});

    criteria.push_back({"transitivity and uniqueness of reconstruction", 15000,
                        [&](std::string& d) {
        return suites_pass({quick("transitivity-uniqueness", 2, 100, seed),
                            quick("transitivity-uniqueness", 3, 100, seed + 1)},
                           d);
    }});

    criteria.push_back({"canonical factorization of non-affine maps", 10000,
                        [&](std::string& d) {
        return suites_pass({quick("canonical-form", 1, 70, seed),
                            quick("canonical-form", 2, 70, seed + 1),
                            quick("canonical-form", 3, 60, seed + 2)},
                           d);
    }});

    criteria.push_back({"cross-ratio preservation and permutation identities", 5000,
                        [&](std::string& d) {
        return suites_pass({quick("cross-ratio", 1, 500, seed)}, d);
    }});

    criteria.push_back({"legendre involution and order reversal", 30000, [&](std::string& d) {
        return suites_pass({quick("legendre-involution", 1, 100, seed),
                            quick("legendre-involution", 2, 100, seed + 1)},
                           d);
    }});

    criteria.push_back({"epigraph inversion: involution, oracle, extremal exchange", 30000,
                        [&](std::string& d) {
        return suites_pass({quick("j-involution", 1, 100, seed),
                            quick("j-involution", 2, 100, seed + 1),
                            quick("extremal-exchange", 1, 50, seed + 2)},
                           d);
    }});

    criteria.push_back({"geometric duality: involution, oracle, fixed points", 30000,
                        [&](std::string& d) {
        return suites_pass({quick("a-duality", 1, 100, seed),
                            quick("a-duality", 2, 100, seed + 1)},
                           d);
    }});

    criteria.push_back({"order isomorphisms over a window", 30000, [&](std::string& d) {
        return suites_pass({quick("cvx-admissible", 1, 10, seed),
                            quick("cvx-admissible", 2, 10, seed + 1)},
                           d);
    }});

    criteria.push_back({"one-dimensional table and window classification", 20000,
                        [&](std::string& d) {
        bool ok = suites_pass({quick("cvx0-table", 1, 400, seed)}, d);

        // The slab involution: admissible, fiber-inverting, and its own target.
        const QMat slab{{q(1), q(0), q(0)}, {q(-1), q(0), q(1)}, {q(1), q(1), q(0)}};
        const auto vs = classify_cvx0(slab, segment01());
        ok &= expect(vs.status == AdmissibilityStatus::cvx0_J_type,
                     "slab matrix not classified as fiber-inverting", d);
        const bool slab_target = vs.target_window && set_equal(*vs.target_window, segment01());
        ok &= expect(slab_target, "slab target window mismatch", d);

        // Orthant-to-simplex exchange.
        const QMat orth{{q(1), q(0), q(0), q(0)},
                        {q(0), q(1), q(0), q(0)},
                        {q(0), q(0), q(0), q(1)},
                        {q(1), q(1), q(1), q(0)}};
        const auto vo = classify_cvx0(orth, orthant2());
        ok &= expect(vo.status == AdmissibilityStatus::cvx0_J_type,
                     "orthant matrix not classified as fiber-inverting", d);
        const bool orth_target = vo.target_window && set_equal(*vo.target_window, simplex2());
        ok &= expect(orth_target, "orthant target window mismatch", d);

        // Fiber inversion over a bounded window with the origin interior is impossible.
        const auto vr = classify_cvx0(j_epigraph_map(2).mat(), square_sym2());
        ok &= expect(vr.status == AdmissibilityStatus::rejected,
                     "fiber inversion over a bounded symmetric window was accepted", d);
        ok &= expect(vr.reason == "remark-interior-origin",
                     "unexpected rejection reason for the bounded window", d);
        ok &= expect(!jtype_window_check(square_sym2()),
                     "window check accepted a bounded window with interior origin", d);
        ok &= expect(jtype_window_check(orthant2()), "window check rejected the orthant", d);
        ok &= expect(jtype_window_check(segment01()), "window check rejected the slab", d);
        return ok;
    }});

    criteria.push_back({"gallery regressions", 5000, [&](std::string& d) {
        bool ok = suites_pass({quick("gallery", 2, 20, seed)}, d);

        const ProjectiveMap ball = f_ball(2, q(3, 5));
        const bool pinned =
            apply(ball, QVec{q(3, 5), q(4, 5)}) == QVec{q(15, 17), q(8, 17)};
        ok &= expect(pinned, "ball map pinned value mismatch", d);

        const ProjectiveMap trap = f_trapezoid(q(1));
        const QVec a{q(0), q(0)}, b{q(1), q(0)}, c{q(1), q(2)}, e{q(0), q(1)};
        const bool cycle = apply(trap, a) == b && apply(trap, b) == c &&
                           apply(trap, c) == e && apply(trap, e) == a;
        ok &= expect(cycle, "trapezoid vertex cycle broken", d);
        return ok;
    }});

    const auto t0 = std::chrono::steady_clock::now();
    std::size_t passed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const Criterion& c = criteria[i];
        std::string detail;
        const auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = c.check(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const long ms = static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                              std::chrono::steady_clock::now() - start)
                                              .count());
        if (ms >= c.limit_ms) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += "time limit exceeded";
        }
        if (ok) ++passed;
        std::cout << std::setw(2) << (i + 1) << "/" << criteria.size() << "  " << std::left
                  << std::setw(58) << c.name << std::right << (ok ? "PASS" : "FAIL")
                  << std::setw(7) << ms << " ms  (limit " << c.limit_ms << " ms)";
        if (!ok && !detail.empty()) std::cout << "  -- " << detail;
        std::cout << "\n";
    }
    const long total = static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                             std::chrono::steady_clock::now() - t0)
                                             .count());
    std::cout << "acceptance: " << passed << "/" << criteria.size() << " criteria passed in "
              << total << " ms\n";
    return passed == criteria.size() ? 0 : 1;
}
