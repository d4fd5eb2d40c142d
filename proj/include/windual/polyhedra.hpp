#pragma once

#include "windual/projective.hpp"

#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace windual {

// Inequality description: the set {x : <a, x> <= b for each row}.
struct HRep {
    std::size_t dim = 0;
    std::vector<std::pair<QVec, Rational>> ineqs;
};

// Generator description: conv(vertices) + cone(rays). An empty vertex list
// means the empty set; rays are nonzero. Lineality shows up as opposite ray
// pairs.
struct VRep {
    std::size_t dim = 0;
    std::vector<QVec> vertices;
    std::vector<QVec> rays;

    bool operator==(const VRep& o) const {
        return dim == o.dim && vertices == o.vertices && rays == o.rays;
    }
};

// A closed convex polyhedron in Q^n. Values are immutable; the dual
// representation and the canonicalized forms are memoized behind a lock, so
// concurrent readers are safe.
class Polyhedron {
  public:
    static Polyhedron from_hrep(HRep h);
    static Polyhedron from_vrep(VRep v);
    static Polyhedron empty_set(std::size_t dim);
    static Polyhedron full_space(std::size_t dim);
    static Polyhedron point(const QVec& x);

    std::size_t dim() const;
    bool is_empty() const;

    // Any available representation, converting once if necessary; the result
    // need not be canonical but always describes the set exactly.
    HRep hrep_any() const;
    VRep vrep_any() const;

    struct State;

  private:
    explicit Polyhedron(std::shared_ptr<State> s) : s_(std::move(s)) {}
    std::shared_ptr<State> s_;

    friend VRep to_vrep(const Polyhedron&);
    friend HRep to_hrep(const Polyhedron&);
};

// Canonical representations: minimized, deduplicated, lexicographically
// sorted; equal sets produce identical structures.
VRep to_vrep(const Polyhedron& p);
HRep to_hrep(const Polyhedron& p);

// {y : <x, y> <= 1 for all x in p}; requires 0 in p.
Polyhedron polar(const Polyhedron& p);

// Closure of the image of p under f. Every generator must sit on the
// nonnegative side of f's denominator, and at least one must be strictly
// positive; generators on the hyperplane itself map to recession rays.
Polyhedron projective_image(const ProjectiveMap& f, const Polyhedron& p);

// Smallest closed convex set containing both arguments.
Polyhedron convex_hull_join(const Polyhedron& p, const Polyhedron& q);
Polyhedron intersect(const Polyhedron& p, const Polyhedron& q);

bool contains_point(const Polyhedron& p, const QVec& x);
bool is_subset(const Polyhedron& p, const Polyhedron& q);

// Equality runs two independent routes (canonical generators and mutual
// containment) and insists they agree.
bool set_equal(const Polyhedron& p, const Polyhedron& q);

// sup { <dir, x> : x in p }; +inf when a ray points the right way, -inf for
// the empty set.
ExtRat support_value(const Polyhedron& p, const QVec& dir);

Polyhedron translate(const Polyhedron& p, const QVec& t);
Polyhedron negate(const Polyhedron& p);

// Exact projection forgetting the last coordinate.
Polyhedron drop_last_coordinate(const Polyhedron& p);

}  // namespace windual
