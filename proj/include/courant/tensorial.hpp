/*
 * tensorial.hpp
 * -------------
 * Decides whether a trivariate polynomial acts tensorially, via three
 * independent routes that must agree:
 *
 *   1. coefficient equations: for each degree-D part, three families of
 *      linear relations among coefficients, indexed by (i, t) with i+t = D;
 *   2. restriction to three planes, reported as bivariate polynomials
 *      A, B, C in (u, v);
 *   3. exact divisibility by a degree-3 generator (one per variant).
 *
 * The skew variant uses alternating signs and the planes y+z = 0, z+x = 0,
 * x+y = 0, with generator S = (x+y)(y+z)(z+x). The symmetric variant uses
 * constant signs and the planes y-z = 0, z-x = 0, x-y = 0, with generator
 * S' = (x-y)(y-z)(x-z).
 */
#pragma once

#include "courant/poly.hpp"

#include <optional>
#include <vector>

namespace courant {

enum class Variant { skew, symmetric };

struct Violation {
    int family;  // 1, 2, or 3
    int i;       // outer index of the failing equation
    int t;       // complementary degree, i + t = D
    Rational residual;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct CriterionReport {
    bool tensorial = false;
    std::vector<Violation> violations;   // empty iff tensorial
    std::optional<Poly3> quotient;       // present iff tensorial
};

/// The degree-3 generator of the ideal: S for skew, S' for symmetric.
Poly3 shifted_generator(Variant variant);

/// Route 1. Violations are sorted by (family, i, t).
CriterionReport coefficient_criterion(const Poly3& p, Variant variant);

struct VarietyReport {
    Poly3 A, B, C;  // bivariate restrictions, written in (u, v)
    bool tensorial = false;
};

/// Route 2: restrictions of p to the three planes of the variant.
VarietyReport variety_criterion(const Poly3& p, Variant variant);

/// Route 3: exact division by the generator. On failure the violation list
/// is populated from the coefficient equations so the report invariant holds.
CriterionReport divisibility_criterion(const Poly3& p, Variant variant);

struct GradedComponent {
    int dim = 0;
    std::vector<Poly3> basis;  // canonical: coefficient rows in reduced echelon form
};

/// Dimension and canonical basis of the degree-D tensorial subspace.
GradedComponent graded_dimension(int D, Variant variant);

/// Q(x, y, z) = P(x + y + z).
Poly3 minimality_polynomial(const UniPoly& P);

/// Independently reduces each variable's exponents modulo m (deg m >= 1).
Poly3 reduce_mod_minimal(const Poly3& p, const UniPoly& m);

enum class PolyTensMode { modular, literal };

struct PolyTensReport {
    bool ok = false;
    std::optional<Poly3> witness;  // a nonzero obstruction when !ok
};

/// Tensoriality of p relative to a minimal polynomial m (nonzero).
///
/// modular: the three plane restrictions must each vanish after reducing
/// powers of u and v modulo m.
///
/// literal: the coefficient equations must hold for p itself, and the three
/// single-variable restrictions p(t,0,0), p(0,t,0), p(0,0,t) must be
/// congruent modulo m.
PolyTensReport polynomially_tensorial(const Poly3& p, const UniPoly& m, PolyTensMode mode);

}  // namespace courant
