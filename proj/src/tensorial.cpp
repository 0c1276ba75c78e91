#include "courant/tensorial.hpp"

#include <map>
#include <tuple>

namespace courant {

namespace {

Poly3 var(int i) { return Poly3::variable(i); }

int sign_of(Variant v) { return v == Variant::skew ? -1 : 1; }

int parity_sign(int sigma, unsigned exponent) {
    return (sigma == -1 && exponent % 2 == 1) ? -1 : 1;
}

/// Lifts a univariate polynomial to a Poly3 in the variable idx.
Poly3 lift_unipoly(const UniPoly& p, int idx) {
    Poly3 out;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        Monomial3 m;
        m.e[static_cast<std::size_t>(idx)] = static_cast<unsigned>(i);
        out.add_term(m, p.coeffs()[i]);
    }
    return out;
}

/// Collapses a Poly3 supported on a single variable to a UniPoly.
UniPoly collapse_unipoly(const Poly3& p, int idx) {
    std::vector<Rational> coeffs(static_cast<std::size_t>(p.degree() + 1), Rational(0));
    for (const auto& [m, c] : p.terms()) coeffs[m.e[static_cast<std::size_t>(idx)]] = c;
    return UniPoly::from_coeffs(std::move(coeffs));
}

}  // namespace

Poly3 shifted_generator(Variant variant) {
    Poly3 x = var(0), y = var(1), z = var(2);
    if (variant == Variant::skew) return (x + y) * (y + z) * (z + x);
    return (x - y) * (y - z) * (x - z);
}

CriterionReport coefficient_criterion(const Poly3& p, Variant variant) {
    const int sigma = sign_of(variant);

    // (family, i, t) -> signed coefficient sum. The map order gives the
    // documented violation ordering for free.
    std::map<std::tuple<int, int, int>, Rational> sums;
    for (const auto& [m, c] : p.terms()) {
        const int e0 = static_cast<int>(m.e[0]);
        const int e1 = static_cast<int>(m.e[1]);
        const int e2 = static_cast<int>(m.e[2]);
        sums[{1, e0, e1 + e2}] += Rational(parity_sign(sigma, m.e[1])) * c;
        sums[{2, e2, e0 + e1}] += Rational(parity_sign(sigma, m.e[0])) * c;
        sums[{3, e1, e0 + e2}] += Rational(parity_sign(sigma, m.e[2])) * c;
    }

    CriterionReport report;
    for (const auto& [key, residual] : sums) {
        if (residual.is_zero()) continue;
        auto [family, i, t] = key;
        report.violations.push_back({family, i, t, residual});
    }
    report.tensorial = report.violations.empty();
    if (report.tensorial) {
        auto q = exact_divide(p, shifted_generator(variant));
        if (!q)
            throw std::logic_error("tensorial: coefficient equations hold but division fails");
        report.quotient = std::move(*q);
    }
    return report;
}

VarietyReport variety_criterion(const Poly3& p, Variant variant) {
    Poly3 u = var(0), v = var(1);
    Poly3 su = variant == Variant::skew ? -u : u;

    VarietyReport r;
    r.A = p.substitute({v, su, u});
    r.B = p.substitute({su, v, u});
    r.C = p.substitute({su, u, v});
    r.tensorial = r.A.is_zero() && r.B.is_zero() && r.C.is_zero();
    return r;
}

CriterionReport divisibility_criterion(const Poly3& p, Variant variant) {
    CriterionReport report;
    auto q = exact_divide(p, shifted_generator(variant));
    if (q) {
        report.tensorial = true;
        report.quotient = std::move(*q);
    } else {
        report.violations = coefficient_criterion(p, variant).violations;
        report.tensorial = false;
        if (report.violations.empty())
            throw std::logic_error("tensorial: division fails but coefficient equations hold");
    }
    return report;
}

GradedComponent graded_dimension(int D, Variant variant) {
    if (D < 0) throw std::invalid_argument("tensorial: negative degree");
    const unsigned deg = static_cast<unsigned>(D);
    const int sigma = sign_of(variant);

    // Degree-D monomials in descending graded-lex order.
    std::vector<Monomial3> monomials;
    for (unsigned e0 = deg + 1; e0-- > 0;)
        for (unsigned e1 = deg - e0 + 1; e1-- > 0;)
            monomials.push_back(Monomial3{{e0, e1, deg - e0 - e1}});

    // Three families of D+1 equations each, one column per monomial.
    RatMatrix M(3 * (deg + 1), monomials.size());
    for (std::size_t col = 0; col < monomials.size(); ++col) {
        const Monomial3& m = monomials[col];
        M.at(0 * (deg + 1) + m.e[0], col) += Rational(parity_sign(sigma, m.e[1]));
        M.at(1 * (deg + 1) + m.e[2], col) += Rational(parity_sign(sigma, m.e[0]));
        M.at(2 * (deg + 1) + m.e[1], col) += Rational(parity_sign(sigma, m.e[2]));
    }

    std::vector<RatMatrix> kernel = kernel_basis(M);

    GradedComponent out;
    out.dim = static_cast<int>(kernel.size());
    if (kernel.empty()) return out;

    // Canonicalize: kernel vectors as rows, reduced echelon form over the
    // monomial columns, rows back to polynomials.
    RatMatrix B(kernel.size(), monomials.size());
    for (std::size_t r = 0; r < kernel.size(); ++r)
        for (std::size_t c = 0; c < monomials.size(); ++c) B.at(r, c) = kernel[r].at(c, 0);
    rref_inplace(B);

    for (std::size_t r = 0; r < kernel.size(); ++r) {
        Poly3 p;
        for (std::size_t c = 0; c < monomials.size(); ++c) p.add_term(monomials[c], B.at(r, c));
        out.basis.push_back(std::move(p));
    }
    return out;
}

Poly3 minimality_polynomial(const UniPoly& P) {
    return P.evaluate_poly(var(0) + var(1) + var(2));
}

Poly3 reduce_mod_minimal(const Poly3& p, const UniPoly& m) {
    if (m.degree() < 1)
        throw std::invalid_argument("tensorial: reduction requires a modulus of degree >= 1");

    // t^e mod m, cached by exponent.
    std::vector<UniPoly> table;
    auto reduced_power = [&](unsigned e) -> const UniPoly& {
        while (table.size() <= e) {
            if (table.empty()) {
                table.push_back(UniPoly::constant(Rational(1)).mod(m));
            } else {
                UniPoly t = UniPoly::from_coeffs({Rational(0), Rational(1)});
                table.push_back((table.back() * t).mod(m));
            }
        }
        return table[e];
    };

    Poly3 out;
    for (const auto& [mono, c] : p.terms()) {
        Poly3 term = Poly3::constant(c);
        for (int v = 0; v < 3; ++v) {
            unsigned e = mono.e[static_cast<std::size_t>(v)];
            if (e > 0) term = term * lift_unipoly(reduced_power(e), v);
        }
        out += term;
    }
    return out;
}

PolyTensReport polynomially_tensorial(const Poly3& p, const UniPoly& m, PolyTensMode mode) {
    if (m.is_zero()) throw std::invalid_argument("tensorial: zero modulus");

    VarietyReport vr = variety_criterion(p, Variant::skew);

    if (mode == PolyTensMode::modular) {
        // A constant nonzero modulus generates the unit ideal.
        if (m.degree() == 0) return {true, std::nullopt};
        for (const Poly3* restriction : {&vr.A, &vr.B, &vr.C}) {
            Poly3 red = reduce_mod_minimal(*restriction, m);
            if (!red.is_zero()) return {false, std::move(red)};
        }
        return {true, std::nullopt};
    }

    // Literal reading: the coefficient equations must hold verbatim, and the
    // three single-variable restrictions must agree modulo m.
    if (!coefficient_criterion(p, Variant::skew).tensorial) {
        for (const Poly3* restriction : {&vr.A, &vr.B, &vr.C})
            if (!restriction->is_zero()) return {false, *restriction};
        throw std::logic_error("tensorial: coefficient equations fail but all restrictions vanish");
    }

    std::array<UniPoly, 3> restrictions;
    Poly3 zero;
    restrictions[0] = collapse_unipoly(p.substitute({var(0), zero, zero}), 0);
    restrictions[1] = collapse_unipoly(p.substitute({zero, var(0), zero}), 0);
    restrictions[2] = collapse_unipoly(p.substitute({zero, zero, var(0)}), 0);
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = a + 1; b < 3; ++b) {
            UniPoly diff = (restrictions[a] - restrictions[b]).mod(m);
            if (!diff.is_zero()) return {false, lift_unipoly(diff, 0)};
        }
    return {true, std::nullopt};
}

}  // namespace courant
