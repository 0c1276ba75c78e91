/*
 * exact.hpp
 * ---------
 * Arbitrary-precision rational scalars and dense rational matrices with
 * exact linear algebra (rref, rank, kernel basis, inverse).
 *
 * Rational values are always reduced to lowest terms with a positive
 * denominator; zero is 0/1. They serialize as "p/q", or "p" when q = 1.
 */
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace courant {

class Rational {
public:
    Rational() = default;
    Rational(long n) : v_(n) {}
    Rational(long n, long d) {
        if (d == 0) throw std::domain_error("rational: zero denominator");
        v_ = mpq_class(n, d);
        v_.canonicalize();
    }
    explicit Rational(const mpz_class& n, const mpz_class& d = 1) {
        if (d == 0) throw std::domain_error("rational: zero denominator");
        v_ = mpq_class(n, d);
        v_.canonicalize();
    }

    /// Parses "p/q" or "p" (base 10). Throws std::invalid_argument on bad input.
    static Rational parse(const std::string& s);

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }

    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

    Rational operator-() const {
        Rational r;
        r.v_ = -v_;
        return r;
    }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    /// Three-way comparison: -1, 0, +1.
    int cmp(const Rational& o) const { return ::cmp(v_, o.v_); }

    std::string str() const { return v_.get_str(); }

private:
    mpq_class v_{};
};

/// Dense row-major matrix over Rational.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static RatMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    RatMatrix transpose() const;
    bool is_zero() const;
    bool is_symmetric() const;

    RatMatrix& operator+=(const RatMatrix& o);
    RatMatrix& operator-=(const RatMatrix& o);
    friend RatMatrix operator+(RatMatrix a, const RatMatrix& b) { return a += b; }
    friend RatMatrix operator-(RatMatrix a, const RatMatrix& b) { return a -= b; }
    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
    friend RatMatrix operator*(const Rational& s, RatMatrix m);
    friend bool operator==(const RatMatrix& a, const RatMatrix& b);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

/// Row-reduces M in place to reduced row-echelon form; returns pivot columns.
std::vector<std::size_t> rref_inplace(RatMatrix& M);

std::size_t rank(RatMatrix M);

/// Basis of the right null space as column vectors, each normalized so its
/// first nonzero entry is 1. Basis size = cols - rank.
std::vector<RatMatrix> kernel_basis(const RatMatrix& M);

/// Exact inverse; throws std::domain_error if M is singular or not square.
RatMatrix inverse(const RatMatrix& M);

RatMatrix mat_pow(const RatMatrix& M, unsigned k);

}  // namespace courant
