#pragma once

#include "windual/plfunc.hpp"

#include <optional>
#include <string>

namespace windual {

// Classification of a candidate (n+2)x(n+2) matrix acting on homogeneous
// (base, fiber) coordinates of Q^n x Q: does it induce an order isomorphism
// on the convex-function lattice over the window, and of which kind?
enum class AdmissibilityStatus { rejected, cvx_admissible, cvx0_I_type, cvx0_J_type };

struct AdmissibilityVerdict {
    AdmissibilityStatus status = AdmissibilityStatus::rejected;
    std::string reason;                       // failure code; empty when accepted
    std::optional<Polyhedron> target_window;  // present iff accepted
};

enum class TransformKind { cvx, cvx0 };

// An accepted matrix packaged with its windows; `map` acts on epigraphs in
// Q^{n+1} and is scaled so denominators are nonnegative over the source.
struct InducedTransform {
    TransformKind kind;
    ProjectiveMap map;
    Polyhedron source_window;
    Polyhedron target_window;
};

// Full-lattice admissibility over a window with interior: the matrix must
// fix fibers (no fiber term in base or denominator rows), scale the fiber
// by exactly the denominator, and keep the window strictly off the
// denominator hyperplane.
AdmissibilityVerdict classify_cvx(const QMat& m, const Polyhedron& k1);

// Geometric-class admissibility over a window containing 0. Accepts the
// increasing-fiber (I) form (Ax, y)/(<u,x>+d) and the inverting-fiber (J)
// form (Ax, <v,x>+b)/(<u,x>+y), checking the window generator conditions.
AdmissibilityVerdict classify_cvx0(const QMat& m, const Polyhedron& k1);

// classify_* + packaging; throws PreconditionError when the matrix is
// rejected.
InducedTransform make_cvx_transform(const QMat& m, const Polyhedron& k1);
InducedTransform make_cvx0_transform(const QMat& m, const Polyhedron& k1);

// The order isomorphism itself: epigraph image under the map. The function
// must belong to the source class (window inside the source window; for
// cvx0 additionally nonnegative with f(0) = 0).
PLConvexFunction induce(const InducedTransform& t, const PLConvexFunction& f);

// One-dimensional windows [0, end) (bounded) or [0, +inf), stored by their
// closures.
struct Interval1D {
    bool bounded = false;
    Rational end;

    static Interval1D half_line() { return {false, Rational(0)}; }
    static Interval1D up_to(Rational x) { return {true, std::move(x)}; }
};

enum class TableKind { I, J };

// The eight closed forms of 1-D geometric-class isomorphisms between the
// four window pairs, parametrized by a, b > 0.
InducedTransform table_1d(const Interval1D& i1, const Interval1D& i2, TableKind kind,
                          const Rational& a, const Rational& b);

// F(x, y) = (x, y) / (z - x): Cvx0([0,z)) -> Cvx0([0,inf)).
InducedTransform f_z(const Rational& z);

// Can the window carry some inverting-fiber (J-type) transform? True iff
// its nonzero vertices lie on a common affine hyperplane <w,x> = -1 with
// every recession ray orthogonal to w.
bool jtype_window_check(const Polyhedron& k);

}  // namespace windual
