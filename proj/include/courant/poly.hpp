/*
 * poly.hpp
 * --------
 * Sparse polynomials in three commuting variables over Rational, plus
 * univariate polynomials, an expression parser, and canonical printing.
 *
 * Terms are kept in descending graded lexicographic order with x > y > z
 * (total degree first, ties broken lexicographically), so begin() is the
 * leading term. Zero coefficients are never stored.
 *
 * Expression grammar (whitespace insignificant, no implicit multiplication):
 *
 *   expr     := ['+'|'-'] term (('+'|'-') term)*
 *   term     := factor ('*' factor)*
 *   factor   := base ('^' uint)?
 *   base     := rational | var | '(' expr ')'
 *   rational := uint ('/' uint)?
 *   var      := one of the names supplied by the caller
 */
#pragma once

#include "courant/exact.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace courant {

/// Exponent triple of a monomial.
struct Monomial3 {
    std::array<unsigned, 3> e{0, 0, 0};

    unsigned total() const { return e[0] + e[1] + e[2]; }
    friend bool operator==(const Monomial3&, const Monomial3&) = default;
};

/// Strict-weak order placing larger monomials first (graded lex, x > y > z).
struct GradedLexDescending {
    bool operator()(const Monomial3& a, const Monomial3& b) const {
        unsigned ta = a.total(), tb = b.total();
        if (ta != tb) return ta > tb;
        return a.e > b.e;
    }
};

class Poly3 {
public:
    using TermMap = std::map<Monomial3, Rational, GradedLexDescending>;

    Poly3() = default;

    static Poly3 constant(const Rational& c);
    static Poly3 variable(int idx);  // 0 -> x, 1 -> y, 2 -> z
    static Poly3 monomial(const Monomial3& m, const Rational& c);

    bool is_zero() const { return terms_.empty(); }
    /// Total degree; -1 for the zero polynomial.
    int degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.total()); }
    /// Largest exponent of variable idx across all terms.
    unsigned degree_in(int idx) const;

    const TermMap& terms() const { return terms_; }
    Rational coeff(const Monomial3& m) const;
    void add_term(const Monomial3& m, const Rational& c);

    Poly3 operator-() const;
    Poly3& operator+=(const Poly3& o);
    Poly3& operator-=(const Poly3& o);
    friend Poly3 operator+(Poly3 a, const Poly3& b) { return a += b; }
    friend Poly3 operator-(Poly3 a, const Poly3& b) { return a -= b; }
    friend Poly3 operator*(const Poly3& a, const Poly3& b);
    friend Poly3 operator*(const Rational& s, const Poly3& p);
    friend bool operator==(const Poly3& a, const Poly3& b) { return a.terms_ == b.terms_; }

    Poly3 pow(unsigned k) const;

    /// Simultaneous substitution x -> images[0], y -> images[1], z -> images[2].
    Poly3 substitute(const std::array<Poly3, 3>& images) const;
    Rational evaluate(const std::array<Rational, 3>& point) const;
    Poly3 homogeneous_component(unsigned d) const;

private:
    TermMap terms_;
};

/// Quotient p / d when the division is exact, std::nullopt otherwise.
/// Throws std::domain_error when d = 0.
std::optional<Poly3> exact_divide(const Poly3& p, const Poly3& d);

/// Dense univariate polynomial; coeffs_[i] is the coefficient of t^i.
/// Canonical form: no trailing zeros, so the zero polynomial is empty.
class UniPoly {
public:
    UniPoly() = default;
    static UniPoly constant(const Rational& c);
    static UniPoly from_coeffs(std::vector<Rational> coeffs);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    UniPoly operator-() const;
    UniPoly& operator+=(const UniPoly& o);
    UniPoly& operator-=(const UniPoly& o);
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const Rational& s, UniPoly p);
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

    /// Remainder of *this modulo m; throws std::domain_error when m = 0.
    UniPoly mod(const UniPoly& m) const;

    Rational evaluate(const Rational& t) const;
    /// Horner evaluation at a Poly3 argument.
    Poly3 evaluate_poly(const Poly3& arg) const;
    /// Horner evaluation at a square matrix argument.
    RatMatrix evaluate_matrix(const RatMatrix& J) const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(const std::string& msg, std::size_t off)
        : std::runtime_error(msg + " (byte " + std::to_string(off) + ")"), offset(off) {}
};

/// Parses an expression whose variables are vars[0..2] (position i maps to
/// Poly3::variable(i)). Unused trailing names may be omitted.
Poly3 parse_poly3(const std::string& text,
                  const std::array<std::string, 3>& vars = {"x", "y", "z"});

/// Parses a univariate expression in the named variable.
UniPoly parse_unipoly(const std::string& text, const std::string& var = "t");

std::string to_string(const Poly3& p,
                      const std::array<std::string, 3>& names = {"x", "y", "z"});
std::string to_string(const UniPoly& p, const std::string& name = "t");

}  // namespace courant
