/*
 * algebroid.hpp
 * -------------
 * Symbolic engine for constant-structure algebroids with a pairing, an
 * anchor, and a bracket: rank-r module over the formal scalar ring, with
 * the bracket extended to function-scaled sections by the Leibniz rules
 *
 *   [[x, f y]] = f [[x, y]] + pi(x)(f) y
 *   [[f x, y]] = f [[x, y]] - pi(y)(f) x + 2 <x, y> Dee f
 *
 * where (Dee f) is the section with <Dee f, z> = 1/2 pi(z)(f). On top of the
 * bracket: the trilinear forms tau_C and theta, the polynomial action on
 * them, torsion tensors, tensoriality defects, and eigenvalue extraction.
 *
 * Validation modes: proto_courant additionally requires the compatibility
 * axiom  pi(x)<y,z> = <[[x,y]],z> + <[[x,z]],y> = <[[y,z]],x> + <[[z,y]],x>
 * to hold symbolically; almost_leibniz skips it.
 */
#pragma once

#include "courant/poly.hpp"
#include "courant/scalar_expr.hpp"

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace courant {

struct StructEntry {
    int i, j, k;  // 1-based frame indices
    Rational c;
};

struct CommEntry {
    int a, b, c;  // 1-based derivation indices
    Rational e;
};

enum class AlgebroidMode { proto_courant, almost_leibniz };

struct AlgebroidData {
    int rank = 0;
    int derivations = 0;
    std::vector<StructEntry> structure;  // bracket constants c_{ij}^k
    RatMatrix metric;                    // rank x rank, symmetric invertible
    RatMatrix anchor;                    // rank x derivations
    std::vector<CommEntry> commutators;  // derivation commutators eps_{ab}^c
    AlgebroidMode mode = AlgebroidMode::proto_courant;
    std::vector<std::string> frame_names;  // optional; defaults to e1..er
};

struct Section {
    std::vector<ScalarExpr> coeffs;

    friend bool operator==(const Section&, const Section&) = default;
};

Section operator+(Section a, const Section& b);
Section operator-(Section a, const Section& b);
Section scale(const ScalarExpr& f, Section s);
Section apply_matrix(const RatMatrix& J, const Section& s);
bool is_zero(const Section& s);

enum class Symmetry { skew, symmetric, none };

struct Endomorphism {
    RatMatrix matrix;
    Symmetry symmetry = Symmetry::none;  // computed against the metric
};

struct AxiomViolation {
    int equation;  // 1: first printed equality, 2: second
    int i, j, k;   // frame triple, 1-based
    bool scaled;   // true when the frames carry fresh function factors
    ScalarExpr residual;
};

struct AxiomReport {
    bool ok = true;
    std::vector<AxiomViolation> violations;
};

struct AlgebroidError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AxiomError : AlgebroidError {
    AxiomReport report;
    explicit AxiomError(AxiomReport r)
        : AlgebroidError("algebroid: compatibility axiom fails ("
                         + std::to_string(r.violations.size()) + " residuals)"),
          report(std::move(r)) {}
};

enum class TrilinearForm { tauC, theta };

class Algebroid {
public:
    /// Validates and freezes the data. In proto_courant mode the
    /// compatibility axiom is checked symbolically; failure throws AxiomError.
    static Algebroid build(AlgebroidData data, int depth_bound = 2);

    /// Generalized tangent bundle of a Lie algebra given by commutators
    /// [D_a, D_b] = sum_c eps_{ab}^c D_c. Frames X_1..X_n, a_1..a_n with the
    /// tautological pairing <X_i, a_j> = 1/2 delta_ij, anchor pi(X_i) = D_i,
    /// pi(a_i) = 0. Throws when the Jacobi identity fails.
    static AlgebroidData from_lie_algebra(const std::vector<CommEntry>& eps, int n);

    const AlgebroidData& data() const { return data_; }
    int rank() const { return data_.rank; }
    int derivations() const { return data_.derivations; }
    const DerivationAlgebra& derivation_algebra() const { return dalg_; }
    const std::string& frame_name(int i) const;  // 1-based

    Section zero_section() const;
    Section frame(int i) const;  // 1-based
    /// Constant section from a rational coefficient vector.
    Section constant_section(const std::vector<Rational>& coeffs) const;

    ScalarExpr inner(const Section& s, const Section& t) const;
    ScalarExpr anchor_act(const Section& s, const ScalarExpr& f) const;
    Section dee(const ScalarExpr& f) const;
    Section bracket(const Section& s, const Section& t) const;

    AxiomReport check_courant_axiom() const;

    Endomorphism classify_endomorphism(const RatMatrix& J) const;

    ScalarExpr tau_C(const Section& x, const Section& y, const Section& z) const;
    ScalarExpr theta(const Section& x, const Section& y, const Section& z) const;

    /// sum over terms a_{ijk} of P of a_{ijk} * form(J^i x, J^j y, J^k z).
    ScalarExpr act(const Poly3& P, const RatMatrix& J, TrilinearForm form,
                   const Section& x, const Section& y, const Section& z) const;

    Section nijenhuis_torsion(const RatMatrix& J, const Section& x, const Section& y) const;
    Section shifted_torsion(const RatMatrix& J, const Section& x, const Section& y) const;

    /// act with the shift P(x+y+z) of P, against tau_C.
    ScalarExpr minimality_tensor(const RatMatrix& J, const UniPoly& P, const Section& x,
                                 const Section& y, const Section& z) const;

    /// act(P, ..., with a fresh function symbol scaling the slot argument)
    /// minus the symbol times act(P, ..., unscaled); zero iff the action is
    /// function-linear in that slot on these sections.
    ScalarExpr tensoriality_defect(const Poly3& P, const RatMatrix& J, const Section& x,
                                   const Section& y, const Section& z, int slot) const;

    /// Swap residuals in slots (2,3) and (1,2) vanish, and P acts to zero on
    /// the theta form.
    bool alternating_check(const Poly3& P, const RatMatrix& J, const Section& x,
                           const Section& y, const Section& z) const;

    struct EigenReport {
        // Multipliers read off the symbolic defects with J eigen-diagonal on
        // two tangent frames: A(lambda,mu), B(mu,lambda), C(lambda,mu).
        std::array<Rational, 3> symbolic;
        // The plane restrictions of P evaluated at the matching points.
        std::array<Rational, 3> evaluated;
        bool agree = false;
    };

    /// Requires abelian generalized-tangent data of rank >= 4. Builds
    /// J = diag(lambda, mu, 0, ..., -lambda, -mu, 0, ...) and compares the
    /// defect multipliers with the evaluated plane restrictions of P.
    EigenReport eigen_necessity(const Poly3& P, const Rational& lambda, const Rational& mu) const;

    std::string section_to_string(const Section& s, bool pretty = true) const;

private:
    Algebroid() = default;

    ScalarExpr form_value(TrilinearForm form, const Section& x, const Section& y,
                          const Section& z) const;
    ScalarExpr defect_with_symbol(const Poly3& P, const RatMatrix& J, const Section& x,
                                  const Section& y, const Section& z, int slot,
                                  const std::string& symbol) const;
    void require_section(const Section& s) const;

    AlgebroidData data_;
    RatMatrix metric_inv_;
    DerivationAlgebra dalg_;
    // (i, j) -> nonzero (k, c_{ij}^k), all 0-based.
    std::map<std::pair<int, int>, std::vector<std::pair<int, Rational>>> c_;
};

/// Monic minimal polynomial of a square matrix.
UniPoly minimal_polynomial(const RatMatrix& J);

/// Whether m(J) = 0 exactly.
bool annihilator_check(const RatMatrix& J, const UniPoly& m);

/// The rank-6 generalized tangent bundle of the 3-dimensional nilpotent Lie
/// algebra with [D_1, D_2] = D_3, the nilpotent skew endomorphism
/// X_1 -> X_2 -> X_3 + a_3, X_3 -> -a_2, a_2 -> -a_1, a_3 -> -a_2 (a_1 -> 0),
/// and the sections x = y = X_3 + a_3. With this pair <x,y> = 1, J(y) = -2a_2
/// and the first-slot torsion defect is the nonzero section 2*D3(f)*a1.
struct HeisenbergExample {
    AlgebroidData data;
    Algebroid algebroid;
    Endomorphism J;
    Section x, y;
};
HeisenbergExample heisenberg_example();

// Randomized inputs for the property suites. All outputs are exact and are
// re-validated by construction checks, never assumed.

/// Structure constants of a random nilpotent Lie algebra on n generators
/// (two-step or filiform core, optionally conjugated by a random
/// unitriangular basis change). Jacobi is verified before returning.
std::vector<CommEntry> random_nilpotent_commutators(std::mt19937_64& rng, int n);

/// J with metric*J antisymmetric, from a random integer antisymmetric matrix.
RatMatrix random_skew_endomorphism(std::mt19937_64& rng, const RatMatrix& metric);

/// Metric-symmetric J with J^2 = identity: reflection across a random
/// nondegenerate subspace along its orthogonal complement.
RatMatrix random_symmetric_involution(std::mt19937_64& rng, const RatMatrix& metric);

}  // namespace courant
