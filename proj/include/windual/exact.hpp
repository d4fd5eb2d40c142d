#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace windual {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

// Error taxonomy. DomainError covers violated mathematical preconditions
// (exit code 1 at the CLI); UsageError covers malformed invocations and
// inputs (exit code 2).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ShapeError : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct SingularMatrixError : DomainError {
    using DomainError::DomainError;
};
struct OnHyperplaneError : DomainError {
    using DomainError::DomainError;
};
struct PreconditionError : DomainError {
    using DomainError::DomainError;
};
struct GenerationError : DomainError {
    using DomainError::DomainError;
};
struct UsageError : Error {
    using Error::Error;
};

std::string rational_to_string(const Rational& r);
Rational rational_from_string(const std::string& s);

// A rational extended with the two infinities; the value field is only
// meaningful for finite elements.
struct ExtRat {
    enum class Kind { Finite, PlusInf, MinusInf };

    Kind kind = Kind::Finite;
    Rational value;

    static ExtRat finite(Rational v) { return ExtRat{Kind::Finite, std::move(v)}; }
    static ExtRat plus_inf() { return ExtRat{Kind::PlusInf, Rational(0)}; }
    static ExtRat minus_inf() { return ExtRat{Kind::MinusInf, Rational(0)}; }

    bool is_finite() const { return kind == Kind::Finite; }
    bool is_plus_inf() const { return kind == Kind::PlusInf; }
    bool is_minus_inf() const { return kind == Kind::MinusInf; }

    bool operator==(const ExtRat& o) const {
        if (kind != o.kind) return false;
        return kind != Kind::Finite || value == o.value;
    }
    bool operator!=(const ExtRat& o) const { return !(*this == o); }
    bool operator<(const ExtRat& o) const {
        if (kind == o.kind) return kind == Kind::Finite && value < o.value;
        if (kind == Kind::MinusInf) return true;
        if (kind == Kind::PlusInf) return false;
        return o.kind == Kind::PlusInf;
    }
    bool operator<=(const ExtRat& o) const { return *this < o || *this == o; }
    bool operator>(const ExtRat& o) const { return o < *this; }
    bool operator>=(const ExtRat& o) const { return o <= *this; }
};

class QVec {
  public:
    QVec() = default;
    explicit QVec(std::size_t dim) : e_(dim) {}
    QVec(std::initializer_list<Rational> init) : e_(init) {}
    explicit QVec(std::vector<Rational> entries) : e_(std::move(entries)) {}

    std::size_t dim() const { return e_.size(); }
    Rational& operator[](std::size_t i) { return e_[i]; }
    const Rational& operator[](std::size_t i) const { return e_[i]; }
    const std::vector<Rational>& entries() const { return e_; }

    bool operator==(const QVec& o) const { return e_ == o.e_; }
    bool operator!=(const QVec& o) const { return !(*this == o); }

    QVec operator+(const QVec& o) const;
    QVec operator-(const QVec& o) const;
    QVec operator-() const;
    QVec scaled(const Rational& s) const;
    bool is_zero() const;

    static QVec zero(std::size_t dim) { return QVec(dim); }
    static QVec unit(std::size_t dim, std::size_t i);

  private:
    std::vector<Rational> e_;
};

Rational dot(const QVec& a, const QVec& b);

// Strict lexicographic order on entries; used for canonical generator
// ordering.
bool lex_less(const QVec& a, const QVec& b);

class QMat {
  public:
    QMat() : rows_(0), cols_(0) {}
    QMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    QMat(std::size_t rows, std::size_t cols, std::vector<Rational> entries);
    QMat(std::initializer_list<std::initializer_list<Rational>> init);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const QMat& o) const;
    bool operator!=(const QMat& o) const { return !(*this == o); }

    QMat operator*(const QMat& o) const;
    QVec operator*(const QVec& v) const;
    QMat operator+(const QMat& o) const;
    QMat scaled(const Rational& s) const;
    QMat transposed() const;
    QVec row(std::size_t i) const;
    QVec col(std::size_t j) const;

    static QMat identity(std::size_t n);
    static QMat zero(std::size_t rows, std::size_t cols) { return QMat(rows, cols); }

  private:
    std::size_t rows_, cols_;
    std::vector<Rational> a_;
};

Rational det(const QMat& m);
QMat inverse(const QMat& m);
QVec solve(const QMat& m, const QVec& rhs);
std::size_t rank(const QMat& m);

// Reduced row echelon form with unit pivots; returns the pivot column of
// each nonzero row. The input is transformed in place and nonzero rows are
// compacted to the top.
std::vector<std::size_t> rref(QMat& m);

// Exact square root of a nonnegative rational, when one exists.
std::optional<Rational> rational_sqrt(const Rational& r);

// Scales a nonzero vector by a positive rational so that entries are
// coprime integers; the zero vector is returned unchanged.
QVec primitive(const QVec& v);

}  // namespace windual
