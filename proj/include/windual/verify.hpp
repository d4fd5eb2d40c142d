#pragma once

#include "windual/orderiso.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace windual {

// Size ceilings for generated instances. Coordinates are rationals p/q with
// |p| <= max_numerator and 1 <= q <= max_denominator; the defaults keep
// double-description intermediates tame.
struct SizeBounds {
    std::size_t max_vertices = 6;
    std::size_t max_pieces = 4;
    long max_numerator = 1000;
    long max_denominator = 1000;
};

struct TrialConfig {
    std::string suite;
    std::size_t dim = 2;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    SizeBounds bounds;
};

struct FirstFailure {
    std::size_t trial = 0;
    std::string inputs_json;  // reproducer: the generated inputs, serialized
};

// passed + failed == trials; first_failure is the smallest failing index.
struct SuiteReport {
    std::string suite;
    std::size_t trials = 0;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::uint64_t seed = 0;
    std::optional<FirstFailure> first_failure;
    std::int64_t wall_time_ms = 0;
};

// SplitMix64 stream seeded by hashing (seed, stream index). The same pair
// reproduces the same draws on every platform, so failures replay exactly.
class TrialRng {
  public:
    TrialRng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();
    // Uniform in [lo, hi], inclusive; requires lo <= hi.
    long next_long(long lo, long hi);
    Rational next_rational(const SizeBounds& b);
    Rational next_positive_rational(const SizeBounds& b);
    QVec next_vector(std::size_t dim, const SizeBounds& b);

  private:
    std::uint64_t state_;
};

// Constraint a generated polytope must satisfy.
struct GenConstraint {
    enum class Kind { contains_zero_interior, inside_halfspace, window_for_cvx0 };
    Kind kind = Kind::contains_zero_interior;
    QVec normal;      // inside_halfspace: fit inside {x : <normal, x> <= offset}
    Rational offset;

    static GenConstraint zero_interior();
    static GenConstraint inside(QVec normal, Rational offset);
    static GenConstraint cvx0_window();
};

enum class FnClass { cvx, cvx0 };

// Random bounded polytope satisfying the constraint (cvx0 windows may add a
// recession ray). Rejection sampling; throws GenerationError when the retry
// budget runs out.
Polyhedron gen_polytope(const TrialConfig& cfg, TrialRng& rng, const GenConstraint& c);

// cvx: random pieces on a random window; cvx0: pieces <a,x>+b with b <= 0
// plus the zero piece, on a window containing 0 — nonnegative and 0 at 0 by
// construction.
PLConvexFunction gen_plfunc(const TrialConfig& cfg, TrialRng& rng, FnClass cls);

// Random invertible map whose denominator row is strictly positive on the
// domain's vertices and nonnegative on its rays; non-affine unless `affine`
// is requested (then the denominator row is (0, 1)).
ProjectiveMap gen_flmap(const TrialConfig& cfg, TrialRng& rng, const Polyhedron& domain,
                        bool affine = false);

// Brute-force references, structurally independent of the transforms they
// check: they read an epigraph representation of f directly and solve the
// one-variable optimum by enumeration, never through a projective image.
//
// oracle_j: inf { r > 0 : f(x/r) <= 1/r }, by facet-crossing candidates.
// oracle_a: sup { (<x,y> - 1) / f(y) : f(y) > 0 } with sup of nothing = 0,
//           +inf outside the polar of the zero set, by generator sweep.
ExtRat oracle_j_pointwise(const PLConvexFunction& f, const QVec& x);
ExtRat oracle_a_pointwise(const PLConvexFunction& f, const QVec& x);

// Runs cfg.trials independent trials of the named suite. All randomness is
// drawn from (cfg.seed, trial index), so reports are deterministic up to
// wall_time_ms. Unknown names and trials < 1 are usage errors.
SuiteReport run_suite(const TrialConfig& cfg);

// The suite names run_suite accepts, in a stable order.
const std::vector<std::string>& suite_names();

}  // namespace windual
