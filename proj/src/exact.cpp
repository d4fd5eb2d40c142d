#include "windual/exact.hpp"

#include <algorithm>
#include <sstream>

namespace windual {

namespace mp = boost::multiprecision;

std::string rational_to_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) {
        os << '/' << denominator(r);
    }
    return os.str();
}

Rational rational_from_string(const std::string& s) {
    auto bad = [&]() { throw UsageError("malformed rational: \"" + s + "\""); };
    std::size_t slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    auto is_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i) {
            if (t[i] < '0' || t[i] > '9') return false;
        }
        return true;
    };
    if (!is_int(num) || !is_int(den)) bad();
    Integer p(num), q(den);
    if (q == 0) throw UsageError("zero denominator in rational: \"" + s + "\"");
    return Rational(p, q);
}

QVec QVec::operator+(const QVec& o) const {
    if (dim() != o.dim()) throw ShapeError("vector dimension mismatch");
    QVec r(dim());
    for (std::size_t i = 0; i < dim(); ++i) r[i] = e_[i] + o[i];
    return r;
}

QVec QVec::operator-(const QVec& o) const {
    if (dim() != o.dim()) throw ShapeError("vector dimension mismatch");
    QVec r(dim());
    for (std::size_t i = 0; i < dim(); ++i) r[i] = e_[i] - o[i];
    return r;
}

QVec QVec::operator-() const {
    QVec r(dim());
    for (std::size_t i = 0; i < dim(); ++i) r[i] = -e_[i];
    return r;
}

QVec QVec::scaled(const Rational& s) const {
    QVec r(dim());
    for (std::size_t i = 0; i < dim(); ++i) r[i] = e_[i] * s;
    return r;
}

bool QVec::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Rational& x) { return x == 0; });
}

QVec QVec::unit(std::size_t dim, std::size_t i) {
    QVec r(dim);
    r[i] = 1;
    return r;
}

Rational dot(const QVec& a, const QVec& b) {
    if (a.dim() != b.dim()) throw ShapeError("vector dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

bool lex_less(const QVec& a, const QVec& b) {
    return std::lexicographical_compare(a.entries().begin(), a.entries().end(),
                                        b.entries().begin(), b.entries().end());
}

QMat::QMat(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows_ * cols_) throw ShapeError("entry count does not match shape");
}

QMat::QMat(std::initializer_list<std::initializer_list<Rational>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    a_.reserve(rows_ * cols_);
    for (const auto& row : init) {
        if (row.size() != cols_) throw ShapeError("ragged matrix initializer");
        a_.insert(a_.end(), row.begin(), row.end());
    }
}

bool QMat::operator==(const QMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

QMat QMat::operator*(const QMat& o) const {
    if (cols_ != o.rows_) throw ShapeError("matrix product shape mismatch");
    QMat r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& x = at(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                r.at(i, j) += x * o.at(k, j);
            }
        }
    }
    return r;
}

QVec QMat::operator*(const QVec& v) const {
    if (cols_ != v.dim()) throw ShapeError("matrix-vector shape mismatch");
    QVec r(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < cols_; ++j) s += at(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

QMat QMat::operator+(const QMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("matrix sum shape mismatch");
    QMat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

QMat QMat::scaled(const Rational& s) const {
    QMat r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
    return r;
}

QMat QMat::transposed() const {
    QMat r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

QVec QMat::row(std::size_t i) const {
    QVec r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

QVec QMat::col(std::size_t j) const {
    QVec r(rows_);
    for (std::size_t i = 0; i < rows_; ++i) r[i] = at(i, j);
    return r;
}

QMat QMat::identity(std::size_t n) {
    QMat r(n, n);
    for (std::size_t i = 0; i < n; ++i) r.at(i, i) = 1;
    return r;
}

Rational det(const QMat& m) {
    if (m.rows() != m.cols()) throw ShapeError("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;

    // Clear denominators row by row, then run fraction-free (Bareiss)
    // elimination over the integers.
    std::vector<Integer> a(n * n);
    Rational scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < n; ++j) l = lcm(l, denominator(m.at(i, j)));
        scale *= l;
        for (std::size_t j = 0; j < n; ++j) {
            Rational x = m.at(i, j) * l;
            a[i * n + j] = numerator(x);
        }
    }

    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k * n + k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p * n + k] == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i * n + j] = (a[k * n + k] * a[i * n + j] - a[i * n + k] * a[k * n + j]) / prev;
            }
            a[i * n + k] = 0;
        }
        prev = a[k * n + k];
    }
    return Rational(a[n * n - 1]) * sign / scale;
}

namespace {

// Gauss-Jordan elimination of [m | rhs]; returns false when m is singular.
bool gauss_jordan(QMat& m, QMat& rhs) {
    const std::size_t n = m.rows();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m.at(p, k) == 0) ++p;
        if (p == n) return false;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
            for (std::size_t j = 0; j < rhs.cols(); ++j) std::swap(rhs.at(k, j), rhs.at(p, j));
        }
        Rational piv = m.at(k, k);
        for (std::size_t j = 0; j < n; ++j) m.at(k, j) /= piv;
        for (std::size_t j = 0; j < rhs.cols(); ++j) rhs.at(k, j) /= piv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || m.at(i, k) == 0) continue;
            Rational f = m.at(i, k);
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) -= f * m.at(k, j);
            for (std::size_t j = 0; j < rhs.cols(); ++j) rhs.at(i, j) -= f * rhs.at(k, j);
        }
    }
    return true;
}

}  // namespace

QMat inverse(const QMat& m) {
    if (m.rows() != m.cols()) throw ShapeError("inverse of non-square matrix");
    QMat work = m;
    QMat rhs = QMat::identity(m.rows());
    if (!gauss_jordan(work, rhs)) throw SingularMatrixError("matrix is singular");
    return rhs;
}

QVec solve(const QMat& m, const QVec& rhs) {
    if (m.rows() != m.cols()) throw ShapeError("solve with non-square matrix");
    if (m.rows() != rhs.dim()) throw ShapeError("solve shape mismatch");
    QMat work = m;
    QMat b(m.rows(), 1);
    for (std::size_t i = 0; i < m.rows(); ++i) b.at(i, 0) = rhs[i];
    if (!gauss_jordan(work, b)) throw SingularMatrixError("matrix is singular");
    return b.col(0);
}

std::vector<std::size_t> rref(QMat& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m.at(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(r, j), m.at(p, j));
        }
        Rational piv = m.at(r, c);
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(r, j) /= piv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Rational f = m.at(i, c);
            for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(const QMat& m) {
    QMat work = m;
    return rref(work).size();
}

std::optional<Rational> rational_sqrt(const Rational& r) {
    if (r < 0) return std::nullopt;
    Integer pn = numerator(r), pd = denominator(r);
    Integer rn, rd;
    Integer sn = sqrt(pn, rn);
    if (rn != 0) return std::nullopt;
    Integer sd = sqrt(pd, rd);
    if (rd != 0) return std::nullopt;
    return Rational(sn, sd);
}

QVec primitive(const QVec& v) {
    Integer l = 1;
    for (std::size_t i = 0; i < v.dim(); ++i) l = lcm(l, denominator(v[i]));
    Integer g = 0;
    for (std::size_t i = 0; i < v.dim(); ++i) g = gcd(g, numerator(Rational(v[i] * l)));
    if (g == 0) return v;
    QVec r(v.dim());
    Rational f = Rational(l, g);
    for (std::size_t i = 0; i < v.dim(); ++i) r[i] = v[i] * f;
    return r;
}

}  // namespace windual
