#include "windual/polyhedra.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <mutex>

namespace windual {

namespace {

void sort_dedup(std::vector<QVec>& xs) {
    std::sort(xs.begin(), xs.end(), lex_less);
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

// ---------------------------------------------------------------------------
// Double description on cones {z : <h, z> <= 0}.
// ---------------------------------------------------------------------------

struct ConeDesc {
    std::vector<QVec> lines;
    std::vector<QVec> rays;
};

// Incremental construction of a minimal generator description: a lineality
// basis plus extreme rays modulo lineality. Each ray carries the exact set
// of processed constraints it satisfies with equality; two rays combine on
// a new constraint only when no third ray is tight on their common set.
ConeDesc cone_dd(std::size_t m, const std::vector<QVec>& constraints) {
    struct RayRec {
        QVec r;
        boost::dynamic_bitset<> tight;
    };
    const std::size_t kcount = constraints.size();
    std::vector<QVec> lines;
    for (std::size_t i = 0; i < m; ++i) lines.push_back(QVec::unit(m, i));
    std::vector<RayRec> rays;

    for (std::size_t k = 0; k < kcount; ++k) {
        const QVec& h = constraints[k];

        std::size_t pivot = lines.size();
        for (std::size_t i = 0; i < lines.size(); ++i) {
            if (dot(h, lines[i]) != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < lines.size()) {
            // A line leaves the hyperplane: slide every other generator onto
            // the hyperplane along it and keep its inner half as a ray.
            QVec l0 = lines[pivot];
            Rational p0 = dot(h, l0);
            lines.erase(lines.begin() + pivot);
            for (QVec& l : lines) {
                Rational pi = dot(h, l);
                if (pi != 0) l = primitive(l - l0.scaled(Rational(pi / p0)));
            }
            for (RayRec& rr : rays) {
                Rational s = dot(h, rr.r);
                if (s != 0) rr.r = primitive(rr.r - l0.scaled(Rational(s / p0)));
                rr.tight.set(k);
            }
            RayRec nr;
            nr.r = primitive(p0 > 0 ? -l0 : l0);
            nr.tight.resize(kcount);
            for (std::size_t b = 0; b < k; ++b) nr.tight.set(b);
            rays.push_back(std::move(nr));
            continue;
        }

        // All lines stay; split the rays by the sign of <h, r>.
        std::vector<Rational> s(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            s[i] = dot(h, rays[i].r);
            if (s[i] > 0) {
                pos.push_back(i);
            } else if (s[i] < 0) {
                neg.push_back(i);
            } else {
                rays[i].tight.set(k);
            }
        }
        if (pos.empty()) continue;

        std::vector<RayRec> fresh;
        for (std::size_t i : pos) {
            for (std::size_t j : neg) {
                boost::dynamic_bitset<> common = rays[i].tight & rays[j].tight;
                bool adjacent = true;
                for (std::size_t t = 0; t < rays.size() && adjacent; ++t) {
                    if (t == i || t == j) continue;
                    if (common.is_subset_of(rays[t].tight)) adjacent = false;
                }
                if (!adjacent) continue;
                QVec r = primitive(rays[j].r.scaled(s[i]) - rays[i].r.scaled(s[j]));
                if (r.is_zero()) continue;
                RayRec nr;
                nr.r = std::move(r);
                nr.tight.resize(kcount);
                for (std::size_t b = 0; b <= k; ++b) {
                    if (dot(constraints[b], nr.r) == 0) nr.tight.set(b);
                }
                fresh.push_back(std::move(nr));
            }
        }
        std::vector<RayRec> kept;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (s[i] <= 0) kept.push_back(std::move(rays[i]));
        }
        for (RayRec& nr : fresh) {
            bool dup = false;
            for (const RayRec& kr : kept) dup = dup || kr.r == nr.r;
            if (!dup) kept.push_back(std::move(nr));
        }
        rays = std::move(kept);
    }

    ConeDesc out;
    out.lines = std::move(lines);
    for (RayRec& rr : rays) out.rays.push_back(std::move(rr.r));
    return out;
}

// Canonical basis of a span: reduced row echelon rows for eliminating pivot
// coordinates, plus primitive-integer copies for output.
struct LinBasis {
    std::vector<QVec> unit_rows;
    std::vector<QVec> primitive_rows;
    std::vector<std::size_t> pivots;
};

LinBasis lineality_basis(const std::vector<QVec>& lines, std::size_t m) {
    LinBasis b;
    if (lines.empty()) return b;
    QMat mat(lines.size(), m);
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = 0; j < m; ++j) mat.at(i, j) = lines[i][j];
    b.pivots = rref(mat);
    for (std::size_t i = 0; i < b.pivots.size(); ++i) {
        b.unit_rows.push_back(mat.row(i));
        b.primitive_rows.push_back(primitive(mat.row(i)));
    }
    return b;
}

QVec reduce_mod(const LinBasis& b, QVec v) {
    for (std::size_t i = 0; i < b.pivots.size(); ++i) {
        Rational c = v[b.pivots[i]];
        if (c != 0) v = v - b.unit_rows[i].scaled(c);
    }
    return v;
}

// ---------------------------------------------------------------------------
// Representation conversion via homogenization.
// ---------------------------------------------------------------------------

VRep h_to_v(const HRep& h) {
    const std::size_t n = h.dim;
    std::vector<QVec> cons;
    for (const auto& [a, b] : h.ineqs) {
        QVec c(n + 1);
        for (std::size_t i = 0; i < n; ++i) c[i] = a[i];
        c[n] = -b;
        cons.push_back(std::move(c));
    }
    {
        QVec c(n + 1);
        c[n] = -1;
        cons.push_back(std::move(c));
    }
    ConeDesc cd = cone_dd(n + 1, cons);

    bool feasible = false;
    for (const QVec& r : cd.rays) feasible = feasible || r[n] > 0;
    if (!feasible) return VRep{n, {}, {}};

    std::vector<QVec> verts, rays, lins;
    for (const QVec& l : cd.lines) {
        QVec x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = l[i];
        lins.push_back(std::move(x));
    }
    for (const QVec& r : cd.rays) {
        QVec x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = r[i];
        if (r[n] > 0) {
            verts.push_back(x.scaled(Rational(1 / r[n])));
        } else {
            rays.push_back(std::move(x));
        }
    }

    LinBasis b = lineality_basis(lins, n);
    for (QVec& v : verts) v = reduce_mod(b, v);
    std::vector<QVec> outr;
    for (QVec& r : rays) {
        QVec rr = primitive(reduce_mod(b, std::move(r)));
        if (!rr.is_zero()) outr.push_back(std::move(rr));
    }
    for (const QVec& l : b.primitive_rows) {
        outr.push_back(l);
        outr.push_back(-l);
    }
    sort_dedup(verts);
    sort_dedup(outr);
    return VRep{n, std::move(verts), std::move(outr)};
}

HRep v_to_h(const VRep& v) {
    const std::size_t n = v.dim;
    if (v.vertices.empty()) return HRep{n, {{QVec::zero(n), Rational(-1)}}};

    // Dual side: valid inequalities <a,x> <= -beta form the cone cut out by
    // one constraint per generator.
    std::vector<QVec> cons;
    for (const QVec& vert : v.vertices) {
        QVec c(n + 1);
        for (std::size_t i = 0; i < n; ++i) c[i] = vert[i];
        c[n] = 1;
        cons.push_back(std::move(c));
    }
    for (const QVec& ray : v.rays) {
        QVec c(n + 1);
        for (std::size_t i = 0; i < n; ++i) c[i] = ray[i];
        c[n] = 0;
        cons.push_back(std::move(c));
    }
    ConeDesc cd = cone_dd(n + 1, cons);

    LinBasis b = lineality_basis(cd.lines, n + 1);
    std::vector<QVec> rows;
    for (const QVec& r : cd.rays) {
        QVec rr = primitive(reduce_mod(b, r));
        rows.push_back(std::move(rr));
    }
    for (const QVec& l : b.primitive_rows) {
        rows.push_back(l);
        rows.push_back(-l);
    }
    sort_dedup(rows);

    HRep out{n, {}};
    for (const QVec& row : rows) {
        QVec a(n);
        for (std::size_t i = 0; i < n; ++i) a[i] = row[i];
        if (a.is_zero()) continue;
        out.ineqs.push_back({std::move(a), Rational(-row[n])});
    }
    return out;
}

QVec drop_last(const QVec& v) {
    QVec x(v.dim() - 1);
    for (std::size_t i = 0; i + 1 < v.dim(); ++i) x[i] = v[i];
    return x;
}

}  // namespace

// ---------------------------------------------------------------------------
// Polyhedron value semantics with memoized dual representation.
// ---------------------------------------------------------------------------

struct Polyhedron::State {
    std::size_t dim = 0;
    std::mutex mu;
    std::optional<HRep> h;
    std::optional<VRep> v;
    bool h_canonical = false;
    bool v_canonical = false;
};

Polyhedron Polyhedron::from_hrep(HRep h) {
    for (const auto& [a, b] : h.ineqs) {
        if (a.dim() != h.dim) throw ShapeError("inequality dimension mismatch");
    }
    auto s = std::make_shared<State>();
    s->dim = h.dim;
    s->h = std::move(h);
    return Polyhedron(std::move(s));
}

Polyhedron Polyhedron::from_vrep(VRep v) {
    for (const QVec& x : v.vertices) {
        if (x.dim() != v.dim) throw ShapeError("vertex dimension mismatch");
    }
    for (const QVec& r : v.rays) {
        if (r.dim() != v.dim) throw ShapeError("ray dimension mismatch");
        if (r.is_zero()) throw UsageError("rays must be nonzero");
    }
    if (v.vertices.empty() && !v.rays.empty()) {
        throw UsageError("a generator description needs at least one point");
    }
    auto s = std::make_shared<State>();
    s->dim = v.dim;
    s->v = std::move(v);
    return Polyhedron(std::move(s));
}

Polyhedron Polyhedron::empty_set(std::size_t dim) { return from_vrep(VRep{dim, {}, {}}); }

Polyhedron Polyhedron::full_space(std::size_t dim) { return from_hrep(HRep{dim, {}}); }

Polyhedron Polyhedron::point(const QVec& x) { return from_vrep(VRep{x.dim(), {x}, {}}); }

std::size_t Polyhedron::dim() const { return s_->dim; }

bool Polyhedron::is_empty() const {
    std::lock_guard<std::mutex> g(s_->mu);
    if (!s_->v) {
        s_->v = h_to_v(*s_->h);
        s_->v_canonical = true;
    }
    return s_->v->vertices.empty();
}

HRep Polyhedron::hrep_any() const {
    std::lock_guard<std::mutex> g(s_->mu);
    if (!s_->h) {
        s_->h = v_to_h(*s_->v);
        s_->h_canonical = true;
    }
    return *s_->h;
}

VRep Polyhedron::vrep_any() const {
    std::lock_guard<std::mutex> g(s_->mu);
    if (!s_->v) {
        s_->v = h_to_v(*s_->h);
        s_->v_canonical = true;
    }
    return *s_->v;
}

VRep to_vrep(const Polyhedron& p) {
    auto& s = *p.s_;
    std::lock_guard<std::mutex> g(s.mu);
    if (s.v && s.v_canonical) return *s.v;
    if (!s.h) {
        s.h = v_to_h(*s.v);
        s.h_canonical = true;
    }
    s.v = h_to_v(*s.h);
    s.v_canonical = true;
    return *s.v;
}

HRep to_hrep(const Polyhedron& p) {
    auto& s = *p.s_;
    std::lock_guard<std::mutex> g(s.mu);
    if (s.h && s.h_canonical) return *s.h;
    if (!s.v) {
        s.v = h_to_v(*s.h);
        s.v_canonical = true;
    }
    s.h = v_to_h(*s.v);
    s.h_canonical = true;
    return *s.h;
}

Polyhedron polar(const Polyhedron& p) {
    if (!contains_point(p, QVec::zero(p.dim()))) {
        throw PreconditionError("polar requires the origin to belong to the set");
    }
    VRep v = p.vrep_any();
    HRep out{p.dim(), {}};
    for (const QVec& vert : v.vertices) out.ineqs.push_back({vert, Rational(1)});
    for (const QVec& ray : v.rays) out.ineqs.push_back({ray, Rational(0)});
    return Polyhedron::from_hrep(std::move(out));
}

Polyhedron projective_image(const ProjectiveMap& f, const Polyhedron& p) {
    if (f.dim() != p.dim()) throw ShapeError("map and set dimension mismatch");
    const std::size_t n = f.dim();
    if (p.is_empty()) return Polyhedron::empty_set(n);

    VRep v = p.vrep_any();
    std::vector<QVec> verts, rays;
    bool positive = false;
    auto push = [&](const QVec& hom) {
        QVec w = f.mat() * hom;
        const Rational& tau = w[n];
        if (tau < 0) {
            throw DomainError("set crosses the defining hyperplane of the map");
        }
        QVec x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = w[i];
        if (tau > 0) {
            positive = true;
            verts.push_back(x.scaled(Rational(1 / tau)));
        } else {
            rays.push_back(primitive(std::move(x)));
        }
    };
    for (const QVec& vert : v.vertices) {
        QVec hom(n + 1);
        for (std::size_t i = 0; i < n; ++i) hom[i] = vert[i];
        hom[n] = 1;
        push(hom);
    }
    for (const QVec& ray : v.rays) {
        QVec hom(n + 1);
        for (std::size_t i = 0; i < n; ++i) hom[i] = ray[i];
        hom[n] = 0;
        push(hom);
    }
    if (!positive) {
        throw DomainError("set lies entirely on the defining hyperplane of the map");
    }
    return Polyhedron::from_vrep(VRep{n, std::move(verts), std::move(rays)});
}

Polyhedron convex_hull_join(const Polyhedron& p, const Polyhedron& q) {
    if (p.dim() != q.dim()) throw ShapeError("join dimension mismatch");
    if (p.is_empty()) return q;
    if (q.is_empty()) return p;
    VRep a = p.vrep_any();
    VRep b = q.vrep_any();
    a.vertices.insert(a.vertices.end(), b.vertices.begin(), b.vertices.end());
    a.rays.insert(a.rays.end(), b.rays.begin(), b.rays.end());
    return Polyhedron::from_vrep(std::move(a));
}

Polyhedron intersect(const Polyhedron& p, const Polyhedron& q) {
    if (p.dim() != q.dim()) throw ShapeError("intersection dimension mismatch");
    HRep a = p.hrep_any();
    HRep b = q.hrep_any();
    a.ineqs.insert(a.ineqs.end(), b.ineqs.begin(), b.ineqs.end());
    return Polyhedron::from_hrep(std::move(a));
}

bool contains_point(const Polyhedron& p, const QVec& x) {
    if (x.dim() != p.dim()) throw ShapeError("point dimension mismatch");
    HRep h = p.hrep_any();
    for (const auto& [a, b] : h.ineqs) {
        if (dot(a, x) > b) return false;
    }
    return true;
}

bool is_subset(const Polyhedron& p, const Polyhedron& q) {
    if (p.dim() != q.dim()) throw ShapeError("subset dimension mismatch");
    if (p.is_empty()) return true;
    if (q.is_empty()) return false;
    VRep v = p.vrep_any();
    HRep h = q.hrep_any();
    for (const auto& [a, b] : h.ineqs) {
        for (const QVec& vert : v.vertices) {
            if (dot(a, vert) > b) return false;
        }
        for (const QVec& ray : v.rays) {
            if (dot(a, ray) > 0) return false;
        }
    }
    return true;
}

bool set_equal(const Polyhedron& p, const Polyhedron& q) {
    if (p.dim() != q.dim()) throw ShapeError("equality dimension mismatch");
    bool via_canonical = to_vrep(p) == to_vrep(q);
    bool via_containment = is_subset(p, q) && is_subset(q, p);
    if (via_canonical != via_containment) {
        throw Error("canonical and containment equality disagree");
    }
    return via_canonical;
}

ExtRat support_value(const Polyhedron& p, const QVec& dir) {
    if (dir.dim() != p.dim()) throw ShapeError("direction dimension mismatch");
    if (p.is_empty()) return ExtRat::minus_inf();
    VRep v = p.vrep_any();
    for (const QVec& ray : v.rays) {
        if (dot(dir, ray) > 0) return ExtRat::plus_inf();
    }
    Rational best = dot(dir, v.vertices.front());
    for (const QVec& vert : v.vertices) {
        Rational val = dot(dir, vert);
        if (val > best) best = val;
    }
    return ExtRat::finite(std::move(best));
}

Polyhedron translate(const Polyhedron& p, const QVec& t) {
    if (t.dim() != p.dim()) throw ShapeError("translation dimension mismatch");
    if (p.is_empty()) return p;
    VRep v = p.vrep_any();
    for (QVec& vert : v.vertices) vert = vert + t;
    return Polyhedron::from_vrep(std::move(v));
}

Polyhedron negate(const Polyhedron& p) {
    if (p.is_empty()) return p;
    VRep v = p.vrep_any();
    for (QVec& vert : v.vertices) vert = -vert;
    for (QVec& ray : v.rays) ray = -ray;
    return Polyhedron::from_vrep(std::move(v));
}

Polyhedron drop_last_coordinate(const Polyhedron& p) {
    if (p.dim() == 0) throw ShapeError("no coordinate to drop");
    const std::size_t n = p.dim() - 1;
    if (p.is_empty()) return Polyhedron::empty_set(n);
    VRep v = p.vrep_any();
    VRep out{n, {}, {}};
    for (const QVec& vert : v.vertices) out.vertices.push_back(drop_last(vert));
    for (const QVec& ray : v.rays) {
        QVec r = drop_last(ray);
        if (!r.is_zero()) out.rays.push_back(std::move(r));
    }
    return Polyhedron::from_vrep(std::move(out));
}

}  // namespace windual
