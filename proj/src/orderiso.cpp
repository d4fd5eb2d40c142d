#include "windual/orderiso.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace windual {

namespace {

// Block accessors for an (n+2)x(n+2) matrix on homogeneous (x, y, tau).
QVec top_col(const QMat& m, std::size_t n, std::size_t j) {
    QVec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = m.at(i, j);
    return v;
}

QVec row_head(const QMat& m, std::size_t n, std::size_t i) {
    QVec v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = m.at(i, j);
    return v;
}

QMat top_block(const QMat& m, std::size_t n) {
    QMat a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a.at(i, j) = m.at(i, j);
    return a;
}

AdmissibilityVerdict reject(std::string reason) {
    return AdmissibilityVerdict{AdmissibilityStatus::rejected, std::move(reason), std::nullopt};
}

bool full_dimensional(const Polyhedron& p) {
    if (p.is_empty()) return false;
    const VRep gen = to_vrep(p);
    std::vector<QVec> dirs;
    for (std::size_t i = 1; i < gen.vertices.size(); ++i)
        dirs.push_back(gen.vertices[i] - gen.vertices[0]);
    for (const auto& r : gen.rays) dirs.push_back(r);
    if (dirs.empty()) return p.dim() == 0;
    QMat m(dirs.size(), p.dim());
    for (std::size_t i = 0; i < dirs.size(); ++i)
        for (std::size_t j = 0; j < p.dim(); ++j) m.at(i, j) = dirs[i][j];
    return rank(m) == p.dim();
}

// The target window of an accepted cvx0 matrix: x-projection of the image
// of window x [0, inf), i.e. of the window indicator's epigraph.
Polyhedron cvx0_target(const QMat& normalized, const Polyhedron& k1) {
    const ProjectiveMap f(k1.dim() + 1, normalized);
    return drop_last_coordinate(projective_image(f, indicator(k1).epigraph()));
}

}  // namespace

AdmissibilityVerdict classify_cvx(const QMat& m, const Polyhedron& k1) {
    const std::size_t n = k1.dim();
    if (m.rows() != n + 2 || m.cols() != n + 2)
        throw ShapeError("matrix must act on homogeneous (base, fiber) coordinates");
    if (k1.is_empty() || !full_dimensional(k1))
        throw PreconditionError("classify_cvx needs a window with interior");

    if (det(m) == 0) return reject("singular-matrix");
    if (m.at(n + 1, n) != 0) return reject("cylinder-crosses-hyperplane");
    if (!top_col(m, n, n).is_zero()) return reject("base-depends-on-fiber");

    // det != 0 with zero fiber column elsewhere forces a pivot here.
    const QMat ms = m.scaled(Rational(1 / m.at(n, n)));
    const QVec v = row_head(ms, n, n + 1);
    const Rational d = ms.at(n + 1, n + 1);

    const VRep gen = to_vrep(k1);
    for (const auto& x : gen.vertices)
        if (!(dot(v, x) + d > 0)) return reject("window-meets-hyperplane");
    for (const auto& r : gen.rays)
        if (dot(v, r) < 0) return reject("window-meets-hyperplane");

    // Base map [A u; v^T d] on Q^n, invertible since det(m) = det(base).
    QMat base(n + 1, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) base.at(i, j) = ms.at(i, j);
        base.at(i, n) = ms.at(i, n + 1);
    }
    for (std::size_t j = 0; j < n; ++j) base.at(n, j) = ms.at(n + 1, j);
    base.at(n, n) = d;
    Polyhedron k2 = projective_image(ProjectiveMap(n, base), k1);
    return AdmissibilityVerdict{AdmissibilityStatus::cvx_admissible, "", std::move(k2)};
}

AdmissibilityVerdict classify_cvx0(const QMat& m, const Polyhedron& k1) {
    const std::size_t n = k1.dim();
    if (m.rows() != n + 2 || m.cols() != n + 2)
        throw ShapeError("matrix must act on homogeneous (base, fiber) coordinates");
    if (!contains_point(k1, QVec::zero(n)))
        throw PreconditionError("classify_cvx0 needs a window containing the origin");

    if (det(m) == 0) return reject("singular-matrix");
    if (!top_col(m, n, n).is_zero() || !top_col(m, n, n + 1).is_zero())
        return reject("moves-zero-fiber");

    const Rational a = m.at(n, n), b = m.at(n, n + 1);
    const Rational c = m.at(n + 1, n), d = m.at(n + 1, n + 1);
    const VRep gen = to_vrep(k1);

    if (b == 0 && c == 0) {
        // Increasing-fiber candidate (Ax, y)/(<u,x>+d); a != 0 since the
        // fiber column would otherwise vanish.
        const QMat ms = m.scaled(Rational(1 / a));
        if (!row_head(ms, n, n).is_zero()) return reject("zero-fiber-not-preserved");
        if (!(ms.at(n + 1, n + 1) > 0)) return reject("zero-fiber-not-preserved");
        if (det(top_block(ms, n)) == 0) return reject("singular-base");
        const QVec u = row_head(ms, n, n + 1);
        const Rational dd = ms.at(n + 1, n + 1);
        for (const auto& x : gen.vertices)
            if (dot(u, x) + dd < 0) return reject("window-meets-hyperplane");
        for (const auto& r : gen.rays)
            if (dot(u, r) < 0) return reject("window-meets-hyperplane");
        return AdmissibilityVerdict{AdmissibilityStatus::cvx0_I_type, "", cvx0_target(ms, k1)};
    }

    if (a == 0 && d == 0) {
        // Inverting-fiber candidate (Ax, <v,x>+b)/(<u,x>+y); c != 0 since
        // the fiber column would otherwise vanish.
        const QMat ms = m.scaled(Rational(1 / c));
        if (!(ms.at(n, n + 1) > 0)) return reject("zero-fiber-not-preserved");
        if (det(top_block(ms, n)) == 0) return reject("singular-base");
        const QVec v = row_head(ms, n, n);
        const QVec u = row_head(ms, n, n + 1);
        const Rational bb = ms.at(n, n + 1);
        bool ok = true;
        for (const auto& x : gen.vertices) {
            if (dot(u, x) < 0) ok = false;
            if (!x.is_zero() && dot(v, x) + bb != 0) ok = false;
        }
        for (const auto& r : gen.rays)
            if (dot(v, r) != 0 || dot(u, r) < 0) ok = false;
        if (!ok) {
            // A bounded window with 0 interior can never be a truncated
            // cone; report that geometry specifically.
            bool interior = true;
            for (const auto& [ha, hb] : to_hrep(k1).ineqs)
                if (!(hb > 0)) interior = false;
            if (gen.rays.empty() && interior) return reject("remark-interior-origin");
            return reject("truncated-cone-violated");
        }
        return AdmissibilityVerdict{AdmissibilityStatus::cvx0_J_type, "", cvx0_target(ms, k1)};
    }

    return reject("zero-fiber-not-preserved");
}

InducedTransform make_cvx_transform(const QMat& m, const Polyhedron& k1) {
    AdmissibilityVerdict v = classify_cvx(m, k1);
    if (v.status == AdmissibilityStatus::rejected)
        throw PreconditionError("matrix not admissible: " + v.reason);
    const std::size_t n = k1.dim();
    return InducedTransform{TransformKind::cvx,
                            ProjectiveMap(n + 1, m.scaled(Rational(1 / m.at(n, n)))),
                            k1, std::move(*v.target_window)};
}

InducedTransform make_cvx0_transform(const QMat& m, const Polyhedron& k1) {
    AdmissibilityVerdict v = classify_cvx0(m, k1);
    if (v.status == AdmissibilityStatus::rejected)
        throw PreconditionError("matrix not admissible: " + v.reason);
    const std::size_t n = k1.dim();
    const Rational pivot = v.status == AdmissibilityStatus::cvx0_I_type ? m.at(n, n)
                                                                        : m.at(n + 1, n);
    return InducedTransform{TransformKind::cvx0, ProjectiveMap(n + 1, m.scaled(Rational(1 / pivot))),
                            k1, std::move(*v.target_window)};
}

PLConvexFunction induce(const InducedTransform& t, const PLConvexFunction& f) {
    const std::size_t n = t.source_window.dim();
    if (f.dim() != n) throw ShapeError("function dimension mismatch");
    if (t.kind == TransformKind::cvx) {
        if (!is_subset(f.window(), t.source_window))
            throw PreconditionError("function window escapes the source window");
        Polyhedron epi = projective_image(t.map, f.epigraph());
        // The base map: drop the fiber row and column (both zero there).
        QMat base(n + 1, n + 1);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) base.at(i, j) = t.map.mat().at(i, j);
            base.at(i, n) = t.map.mat().at(i, n + 1);
        }
        for (std::size_t j = 0; j < n; ++j) base.at(n, j) = t.map.mat().at(n + 1, j);
        base.at(n, n) = t.map.mat().at(n + 1, n + 1);
        Polyhedron window = projective_image(ProjectiveMap(n, base), f.window());
        return PLConvexFunction::from_epigraph(std::move(window), std::move(epi));
    }
    if (!in_cvx0(f) || !is_subset(f.epigraph(), indicator(t.source_window).epigraph()))
        throw PreconditionError("function is not in the geometric class over the source window");
    Polyhedron epi = projective_image(t.map, f.epigraph());
    Polyhedron window = drop_last_coordinate(epi);
    return PLConvexFunction::from_epigraph(std::move(window), std::move(epi));
}

InducedTransform table_1d(const Interval1D& i1, const Interval1D& i2, TableKind kind,
                          const Rational& a, const Rational& b) {
    if (!(a > 0) || !(b > 0)) throw PreconditionError("table parameters must be positive");
    if ((i1.bounded && !(i1.end > 0)) || (i2.bounded && !(i2.end > 0)))
        throw PreconditionError("bounded windows need a positive endpoint");
    const Rational x1 = i1.end, x2 = i2.end;
    const Rational z(0), one(1);
    QMat m(3, 3);
    if (kind == TableKind::I) {
        if (!i1.bounded && !i2.bounded)
            m = QMat{{a, z, z}, {z, Rational(a * b), z}, {z, z, one}};
        else if (i1.bounded && !i2.bounded)
            m = QMat{{a, z, z}, {z, Rational(a * b), z}, {Rational(-1), z, x1}};
        else if (!i1.bounded && i2.bounded)
            m = QMat{{Rational(a * x2), z, z}, {z, Rational(a * b * x2), z}, {a, z, one}};
        else
            m = QMat{{x2, z, z}, {z, Rational(b * x2), z}, {Rational(1 - a), z, Rational(a * x1)}};
    } else {
        if (!i1.bounded && !i2.bounded)
            m = QMat{{b, z, z}, {z, z, Rational(a * b)}, {z, one, z}};
        else if (i1.bounded && !i2.bounded)
            m = QMat{{b, z, z}, {Rational(-a * b), z, Rational(a * b * x1)}, {z, one, z}};
        else if (!i1.bounded && i2.bounded)
            m = QMat{{Rational(b * x2), z, z}, {z, z, Rational(a * b * x2)}, {b, one, z}};
        else
            m = QMat{{Rational(b * x2), z, z},
                     {Rational(-a * b * x2), z, Rational(a * b * x2 * x1)},
                     {b, one, z}};
    }
    auto window = [](const Interval1D& i) {
        if (i.bounded) return Polyhedron::from_vrep(VRep{1, {QVec{Rational(0)}, QVec{i.end}}, {}});
        return Polyhedron::from_vrep(VRep{1, {QVec{Rational(0)}}, {QVec{Rational(1)}}});
    };
    return InducedTransform{TransformKind::cvx0, ProjectiveMap(2, m), window(i1), window(i2)};
}

InducedTransform f_z(const Rational& z) {
    if (!(z > 0)) throw PreconditionError("f_z needs a positive endpoint");
    return table_1d(Interval1D::up_to(z), Interval1D::half_line(), TableKind::I, Rational(1),
                    Rational(1));
}

bool jtype_window_check(const Polyhedron& k) {
    if (!contains_point(k, QVec::zero(k.dim())))
        throw PreconditionError("jtype_window_check needs a window containing the origin");
    const VRep gen = to_vrep(k);
    std::vector<std::pair<QVec, Rational>> rows;
    for (const auto& x : gen.vertices)
        if (!x.is_zero()) rows.emplace_back(x, Rational(-1));
    for (const auto& r : gen.rays) rows.emplace_back(r, Rational(0));
    if (rows.empty()) return true;
    QMat sys(rows.size(), k.dim());
    QMat aug(rows.size(), k.dim() + 1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < k.dim(); ++j) {
            sys.at(i, j) = rows[i].first[j];
            aug.at(i, j) = rows[i].first[j];
        }
        aug.at(i, k.dim()) = rows[i].second;
    }
    return rank(sys) == rank(aug);
}

}  // namespace windual
