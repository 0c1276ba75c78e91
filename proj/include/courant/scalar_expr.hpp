/*
 * scalar_expr.hpp
 * ---------------
 * The ring of formal functions used as section coefficients: rational linear
 * combinations of products of atoms, where an atom is an abstract symbol with
 * a word of derivations applied to it.
 *
 * Derivations D_1..D_n commute only up to structure constants:
 * applying D_b then D_a (a < b outermost) rewrites through
 * eps_{ab}^c so every stored word is non-decreasing. Words are stored in
 * application order (word[0] acts first) and
 * printed outermost-first, so the stored word {1, 2} prints as "D2 D1 f".
 *
 * Word length is capped by a configurable depth bound (default 2); exceeding
 * it is a hard error, not a truncation.
 */
#pragma once

#include "courant/exact.hpp"

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace courant {

/// Derivation indices in application order: word[0] is applied first.
using DerivationWord = std::vector<int>;

struct Atom {
    std::string symbol;
    DerivationWord word;

    friend bool operator==(const Atom&, const Atom&) = default;
    friend bool operator<(const Atom& a, const Atom& b) {
        if (a.symbol != b.symbol) return a.symbol < b.symbol;
        return a.word < b.word;
    }
};

/// A commutative product of atoms, kept sorted; repeats encode powers.
using AtomProduct = std::vector<Atom>;

struct DepthExceededError : std::runtime_error {
    explicit DepthExceededError(int bound)
        : std::runtime_error("derivation depth bound " + std::to_string(bound) + " exceeded") {}
};

/// Structure constants of the derivation algebra plus the depth bound.
class DerivationAlgebra {
public:
    DerivationAlgebra() = default;
    /// entries hold (a, b, c) -> eps_{ab}^c with 1-based indices; either or
    /// both orientations may be given, the antisymmetric mirror is implied.
    /// Conflicting duplicates throw std::invalid_argument.
    DerivationAlgebra(int derivations, int depth_bound,
                      const std::map<std::array<int, 3>, Rational>& entries);

    int derivations() const { return derivations_; }
    int depth_bound() const { return depth_bound_; }
    void set_depth_bound(int bound);

    Rational eps(int a, int b, int c) const;
    const std::map<std::array<int, 3>, Rational>& entries() const { return eps_; }

    /// Jacobi identity of the bracket [D_a, D_b] = sum_c eps_{ab}^c D_c.
    bool jacobi_holds() const;

private:
    int derivations_ = 0;
    int depth_bound_ = 2;
    std::map<std::array<int, 3>, Rational> eps_;  // both orientations stored
};

class ScalarExpr {
public:
    ScalarExpr() = default;

    static ScalarExpr constant(const Rational& c);
    static ScalarExpr symbol(const std::string& name);
    static ScalarExpr atom(const Atom& a);

    bool is_zero() const { return terms_.empty(); }
    const std::map<AtomProduct, Rational>& terms() const { return terms_; }
    Rational coeff(const AtomProduct& m) const;
    void add_term(const AtomProduct& m, const Rational& c);

    ScalarExpr operator-() const;
    ScalarExpr& operator+=(const ScalarExpr& o);
    ScalarExpr& operator-=(const ScalarExpr& o);
    friend ScalarExpr operator+(ScalarExpr a, const ScalarExpr& b) { return a += b; }
    friend ScalarExpr operator-(ScalarExpr a, const ScalarExpr& b) { return a -= b; }
    friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b);
    friend ScalarExpr operator*(const Rational& s, const ScalarExpr& e);
    friend bool operator==(const ScalarExpr& a, const ScalarExpr& b) { return a.terms_ == b.terms_; }

    void collect_symbols(std::set<std::string>& out) const;

private:
    std::map<AtomProduct, Rational> terms_;
};

/// D_a applied to expr, with products expanded by the Leibniz rule and all
/// words renormalized through the structure constants of alg.
/// Throws DepthExceededError when a word would exceed the bound.
ScalarExpr apply_derivation(const ScalarExpr& expr, int a, const DerivationAlgebra& alg);

/// Pretty form "2*D2(D1(f))*g"; file form "2*D2 D1 f*g".
std::string to_string(const ScalarExpr& e, bool pretty = true);
std::string to_string(const Atom& a, bool pretty = true);

/// Parses a scalar expression: signed sums of '*'-separated factors, each a
/// rational literal or an atom like "f", "D1 f", "D2 D1 f", "D2(D1(f))".
/// Leftmost derivation is outermost. Atom words are renormalized through alg,
/// so the result is canonical; depth violations throw DepthExceededError.
ScalarExpr parse_scalar(const std::string& text, const DerivationAlgebra& alg);

}  // namespace courant
