#pragma once

#include "qes/poly.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace qes {

// Exponent quartic coefficient of the ansatz, fixed once and for all.
// psi = f(x) exp(-g(x)) with g = b1 x + b2 x^2 + b3 x^3 + kB4 x^4; the
// positive sign of kB4 is what makes psi normalizable along the real line.
inline constexpr double kB4 = 0.25;

/**
 * Exponent parameters (b1, b2, b3).
 *
 * Each parameter must be purely real or purely imaginary, and b2 must be
 * real; components below 1e-14 relative are snapped to exact zero first.
 * Mixed components (both parts nonzero) are rejected: the two supported
 * regimes are b1, b3 purely imaginary (potential can be PT-symmetric) and
 * b1, b3 purely real (symmetry explicitly broken).
 */
struct AnsatzParams {
    Complex b1{0.0};
    Complex b2{0.0};
    Complex b3{0.0};

    static AnsatzParams validated(Complex b1, Complex b2, Complex b3);

    // True when b1 and b3 are purely imaginary (zero counts), so the
    // exponent is compatible with PT symmetry.
    bool pt_mode() const;

    // g(x) = b1 x + b2 x^2 + b3 x^3 + kB4 x^4
    ComplexPoly exponent() const;
};

/**
 * A polynomial-times-Gaussian-type state psi(x) = f(x) exp(-g(x)).
 *
 * Invariants enforced at construction: f is nonzero and monic; g has degree
 * 4 with leading coefficient kB4 and zero constant term. Both are stored
 * with those values made exact.
 */
class PolyExpState {
public:
    PolyExpState(ComplexPoly f, ComplexPoly g);

    const ComplexPoly& f() const { return f_; }
    const ComplexPoly& g() const { return g_; }

    Complex psi(Complex x) const { return f_(x) * std::exp(-g_(x)); }
    // psi'/psi = f'/f - g'
    Complex log_deriv(Complex x) const;

private:
    ComplexPoly f_;
    ComplexPoly g_;
};

/**
 * V(x) = sum_{i=1..6} c[i-1] x^i. No constant term: the energy origin is
 * part of the eigenvalue, not the potential. Constructed family members
 * always have c6 = 1/2 (it equals 2 kB4^2 for the quartic exponent).
 */
struct SexticPotential {
    std::array<Complex, 6> c{};  // c[0] multiplies x, ..., c[5] multiplies x^6

    ComplexPoly as_poly() const;
    static SexticPotential from_poly(const ComplexPoly& p);
    Complex operator()(Complex x) const { return as_poly()(x); }

    // Odd coefficients purely imaginary, even ones purely real, within the
    // canonicalization threshold.
    bool is_pt_symmetric() const { return pt_symmetric(as_poly()); }
};

struct Eigenpair {
    Complex energy{0.0};
    PolyExpState state;
};

// Result of the coefficient-level symmetry classification.
//  - potential_pt: V equals its reflection-conjugation image.
//  - state_parity: per eigenpair, +1 / -1 when the conjugate-reflected
//    wavefunction equals +/- itself, nullopt otherwise.
//  - explicitly_broken: the potential fails the symmetry (real odd
//    couplings act as explicit breaking parameters).
struct SymmetryReport {
    bool potential_pt = false;
    std::vector<std::optional<int>> state_parity;
    bool explicitly_broken = false;
};

/**
 * One solved member of the sextic family: the potential together with the
 * eigenpairs known in closed form, classification, and the inputs it was
 * built from. Factories in construct.hpp enforce that every eigenpair
 * passes the algebraic residual check before an instance is handed out.
 */
struct QESSolution {
    std::string case_tag;  // "constant" | "linear" | "quadratic"
    AnsatzParams params;
    SexticPotential potential;
    std::vector<Eigenpair> eigenpairs;
    SymmetryReport symmetry;
    // Set when a merged double root of the zero-location condition produced
    // this solution (branch collision), so one solution stands for two.
    bool degenerate_root = false;
};

}  // namespace qes
