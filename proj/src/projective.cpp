#include "windual/projective.hpp"

namespace windual {

bool Hyperplane::same_set(const Hyperplane& o) const {
    if (normal.dim() != o.normal.dim()) return false;
    QVec a(normal.dim() + 1), b(normal.dim() + 1);
    for (std::size_t i = 0; i < normal.dim(); ++i) {
        a[i] = normal[i];
        b[i] = o.normal[i];
    }
    a[normal.dim()] = offset;
    b[normal.dim()] = o.offset;
    QMat m(2, a.dim());
    for (std::size_t j = 0; j < a.dim(); ++j) {
        m.at(0, j) = a[j];
        m.at(1, j) = b[j];
    }
    return rank(m) == 1;
}

ProjectiveMap::ProjectiveMap(std::size_t dim, QMat mat, bool sign_normalized)
    : n_(dim), m_(std::move(mat)), sign_normalized_(sign_normalized) {
    if (m_.rows() != n_ + 1 || m_.cols() != n_ + 1) {
        throw ShapeError("projective matrix must be (n+1)x(n+1)");
    }
    if (det(m_) == 0) throw SingularMatrixError("projective matrix must be invertible");
}

ProjectiveMap ProjectiveMap::scaled(const Rational& s) const {
    if (s == 0) throw DomainError("projective scale must be nonzero");
    return ProjectiveMap(n_, m_.scaled(s), sign_normalized_);
}

namespace {

QVec homogenize(const QVec& x) {
    QVec h(x.dim() + 1);
    for (std::size_t i = 0; i < x.dim(); ++i) h[i] = x[i];
    h[x.dim()] = 1;
    return h;
}

}  // namespace

QVec apply(const ProjectiveMap& f, const QVec& x) {
    if (x.dim() != f.dim()) throw ShapeError("point dimension mismatch");
    QVec w = f.mat() * homogenize(x);
    const Rational& den = w[f.dim()];
    if (den == 0) {
        throw OnHyperplaneError("point lies on the defining hyperplane");
    }
    QVec r(f.dim());
    for (std::size_t i = 0; i < f.dim(); ++i) r[i] = w[i] / den;
    return r;
}

Rational map_denominator(const ProjectiveMap& f, const QVec& x) {
    if (x.dim() != f.dim()) throw ShapeError("point dimension mismatch");
    Rational den = f.mat().at(f.dim(), f.dim());
    for (std::size_t j = 0; j < f.dim(); ++j) den += f.mat().at(f.dim(), j) * x[j];
    return den;
}

Rational map_denominator_linear(const ProjectiveMap& f, const QVec& r) {
    if (r.dim() != f.dim()) throw ShapeError("direction dimension mismatch");
    Rational den = 0;
    for (std::size_t j = 0; j < f.dim(); ++j) den += f.mat().at(f.dim(), j) * r[j];
    return den;
}

ProjectiveMap compose(const ProjectiveMap& f, const ProjectiveMap& g) {
    if (f.dim() != g.dim()) throw ShapeError("composition dimension mismatch");
    return ProjectiveMap(f.dim(), f.mat() * g.mat());
}

ProjectiveMap inverse_map(const ProjectiveMap& f) {
    return ProjectiveMap(f.dim(), inverse(f.mat()));
}

bool is_affine(const ProjectiveMap& f) {
    for (std::size_t j = 0; j < f.dim(); ++j) {
        if (f.mat().at(f.dim(), j) != 0) return false;
    }
    return true;
}

std::optional<Hyperplane> defining_hyperplane(const ProjectiveMap& f) {
    if (is_affine(f)) return std::nullopt;
    QVec c(f.dim());
    for (std::size_t j = 0; j < f.dim(); ++j) c[j] = f.mat().at(f.dim(), j);
    return Hyperplane{c, -f.mat().at(f.dim(), f.dim())};
}

std::optional<Hyperplane> image_boundary(const ProjectiveMap& f) {
    if (is_affine(f)) return std::nullopt;
    // The boundary of the image is the affine trace of the image of the
    // hyperplane at infinity, read off the last column of the inverse
    // matrix (transposed coordinates of that projective hyperplane).
    QMat inv = inverse(f.mat());
    QVec g(f.dim());
    for (std::size_t j = 0; j < f.dim(); ++j) g[j] = inv.at(f.dim(), j);
    return Hyperplane{g, -inv.at(f.dim(), f.dim())};
}

bool agree_up_to_scalar(const ProjectiveMap& f, const ProjectiveMap& g) {
    if (f.dim() != g.dim()) return false;
    const std::size_t m = f.dim() + 1;
    Rational lambda = 0;
    for (std::size_t i = 0; i < m && lambda == 0; ++i) {
        for (std::size_t j = 0; j < m && lambda == 0; ++j) {
            if (g.mat().at(i, j) != 0) {
                lambda = f.mat().at(i, j) / g.mat().at(i, j);
            } else if (f.mat().at(i, j) != 0) {
                return false;
            }
        }
    }
    if (lambda == 0) return false;
    return f.mat() == g.mat().scaled(lambda);
}

ProjectiveMap sign_normalize_at(const ProjectiveMap& f, const QVec& x) {
    Rational den = map_denominator(f, x);
    if (den == 0) throw OnHyperplaneError("reference point lies on the defining hyperplane");
    QMat m = den > 0 ? f.mat() : f.mat().scaled(-1);
    return ProjectiveMap(f.dim(), std::move(m), true);
}

ProjectiveMap translation_map(const QVec& v) {
    QMat m = QMat::identity(v.dim() + 1);
    for (std::size_t i = 0; i < v.dim(); ++i) m.at(i, v.dim()) = v[i];
    return ProjectiveMap(v.dim(), std::move(m));
}

ProjectiveMap linear_map(const QMat& a) {
    if (a.rows() != a.cols()) throw ShapeError("linear part must be square");
    QMat m(a.rows() + 1, a.rows() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.rows(); ++j) m.at(i, j) = a.at(i, j);
    m.at(a.rows(), a.rows()) = 1;
    return ProjectiveMap(a.rows(), std::move(m));
}

CanonicalForm canonical_form(const ProjectiveMap& f, const QVec& x0) {
    if (is_affine(f)) throw PreconditionError("affine maps have no canonical form");
    const std::size_t n = f.dim();
    Rational dprime = map_denominator(f, x0);
    if (dprime == 0) throw OnHyperplaneError("base point lies on the defining hyperplane");
    QVec y0 = apply(f, x0);

    // G(x) = F(x + x0) - y0, scaled so the denominator constant is -1; the
    // translation column of G vanishes because G(0) = 0.
    QMat ghat = compose(compose(translation_map(-y0), f), translation_map(x0)).mat();
    ghat = ghat.scaled(Rational(-1) / dprime);
    QMat aprime(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) aprime.at(i, j) = ghat.at(i, j);
    QVec cprime(n);
    for (std::size_t j = 0; j < n; ++j) cprime[j] = ghat.at(n, j);

    std::size_t pivot = 0;
    while (pivot < n && cprime[pivot] == 0) ++pivot;
    if (pivot == n) throw PreconditionError("affine maps have no canonical form");

    QMat c(n, n);
    // First column c'/<c',c'> gives <col, c'> = 1; the rest is a basis of
    // the orthogonal complement built from coordinate vectors.
    Rational cc = dot(cprime, cprime);
    for (std::size_t i = 0; i < n; ++i) c.at(i, 0) = cprime[i] / cc;
    std::size_t next = 1;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == pivot) continue;
        c.at(j, next) = 1;
        c.at(pivot, next) -= cprime[j] / cprime[pivot];
        ++next;
    }

    QMat b = inverse(aprime * c);
    return CanonicalForm{std::move(b), std::move(c), std::move(y0)};
}

ProjectiveMap from_simplex_data(const std::vector<QVec>& x, const QVec& y, const QVec& p) {
    const std::size_t n = y.dim();
    if (x.size() != n + 1) throw ShapeError("need n+1 simplex vertices");
    for (const auto& xi : x) {
        if (xi.dim() != n) throw ShapeError("simplex vertex dimension mismatch");
    }
    if (p.dim() != n) throw ShapeError("target point dimension mismatch");

    QMat m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) m.at(i, j) = x[j + 1][i] - x[0][i];
    }
    if (det(m) == 0) throw SingularMatrixError("simplex vertices are affinely dependent");
    QMat minv = inverse(m);
    QVec z = minv * (y - x[0]);

    Rational zsum = 0, psum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (z[i] <= 0) throw PreconditionError("interior point is not strictly inside the simplex");
        if (p[i] <= 0) throw PreconditionError("target point is not strictly inside the simplex");
        zsum += z[i];
        psum += p[i];
    }
    if (zsum >= 1) throw PreconditionError("interior point is not strictly inside the simplex");
    if (psum >= 1) throw PreconditionError("target point is not strictly inside the simplex");

    // Diagonal second stage fixing the simplex vertices and moving z to p.
    Rational d = (1 - psum) / (1 - zsum);
    QMat g(n + 1, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        g.at(i, i) = p[i] / z[i];
        g.at(n, i) = p[i] / z[i] - d;
    }
    g.at(n, n) = d;

    QMat t(n + 1, n + 1);
    QVec shift = minv * x[0];
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) t.at(i, j) = minv.at(i, j);
        t.at(i, n) = -shift[i];
    }
    t.at(n, n) = 1;

    return ProjectiveMap(n, g * t);
}

Rational cross_ratio(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
    if (c == b || d == b || d == a) {
        throw DomainError("degenerate cross-ratio");
    }
    return ((c - a) / (c - b)) / ((d - a) / (d - b));
}

ProjectiveMap f0(std::size_t n) {
    if (n == 0) throw ShapeError("dimension must be positive");
    QMat m = QMat::identity(n + 1);
    m.at(n, 0) = 1;
    m.at(n, n) = -1;
    return ProjectiveMap(n, std::move(m));
}

ProjectiveMap f_ball(std::size_t n, const Rational& lam) {
    if (n == 0) throw ShapeError("dimension must be positive");
    if (lam <= 0 || lam >= 1) throw PreconditionError("ball parameter must lie in (0,1)");
    Rational a = 1 / lam;
    auto c = rational_sqrt(Rational(a * a - 1));
    if (!c) {
        throw PreconditionError("ball parameter needs a*a-1 to be a rational square");
    }
    QMat m(n + 1, n + 1);
    m.at(0, 0) = a;
    m.at(0, n) = 1;
    m.at(n, 0) = 1;
    m.at(n, n) = a;
    for (std::size_t i = 1; i < n; ++i) m.at(i, i) = *c;
    return ProjectiveMap(n, std::move(m));
}

ProjectiveMap f_trapezoid(const Rational& alpha) {
    if (alpha <= 0) throw PreconditionError("trapezoid parameter must be positive");
    Rational a1 = alpha + 1;
    QMat m{{alpha, Rational(-1), Rational(1)},
           {a1 * a1, Rational(0), Rational(0)},
           {alpha, alpha, Rational(1)}};
    return ProjectiveMap(2, std::move(m));
}

}  // namespace windual
