#pragma once

#include "qes/types.hpp"

#include <optional>
#include <vector>

namespace qes {

/**
 * The closed-form families. Every factory enforces, before returning, that
 * each eigenpair satisfies the algebraic residual identity to 1e-10 on the
 * worst coefficient, and that a PT-symmetric potential comes with real
 * energies (|Im E| <= 1e-12 * max(1, |Re E|)). The analytic values are never
 * replaced by numerics; the checks only gate them.
 */

// f = 1. One level: E = b2 - b1^2/2.
QESSolution construct_constant(const AnsatzParams& params);

/**
 * f = x + a0, one solution per distinct root a0 of
 *   a0^3 - 3 b3 a0^2 + 2 b2 a0 - b1 = 0.
 *
 * For purely imaginary b1, b3 the substitution a0 = i y turns this into a
 * cubic with real coefficients, which is solved in y so that axis-pure
 * roots stay exactly on the axis (no post-hoc snapping of results). A
 * merged double root yields a single solution with degenerate_root set.
 * Solutions are ordered by (Re, Im) of a0. E = -b1^2/2 + 3 b2 - 3 a0 b3
 * + a0^2.
 */
std::vector<QESSolution> construct_linear(const AnsatzParams& params);

/**
 * f = x^2 + a1 x + a0 with a1 = 2 b3 and b1 = 2 b3 (b2 - b3^2) forced by
 * the closure of the construction; only b2 (real) and b3 (real or purely
 * imaginary) remain free. Two levels
 *   E(+/-) = -2 b3^2 (b2 - b3^2)^2 + 3 b2 - b3^2 +/- sqrt(D),
 *   D = (2 b2 - 3 b3^2)^2 + 2 >= 2,
 * paired with a0 = (2 b2 - b3^2 -/+ sqrt(D)) / 2 (upper level takes the
 * lower a0 branch). eigenpairs[0] holds E+. The gap E+ - E- = 2 sqrt(D)
 * never closes, and for admissible inputs D is real, so both levels are
 * real even when the potential is complex. If the cross pairing of energy
 * and prefactor ever failed the residual identity the constructor throws
 * instead of silently repairing it.
 */
QESSolution construct_quadratic(Complex b2, Complex b3);

/**
 * The engine behind all closed forms, for arbitrary monic f and quartic g
 * (leading coefficient 1/4, zero constant term):
 *
 *   V - E = g'^2/2 - g''/2 + (f''/2 - f' g') / f
 *
 * The polynomial division makes sense of the last term: its quotient feeds
 * V, and (E, f e^{-g}) is a genuine eigenpair exactly when the remainder
 * vanishes. The remainder is returned as data, not policed: for f of
 * degree 1 it reproduces the cubic root condition of construct_linear, for
 * degree 2 the quadratic-case constraints, and for higher degree it is the
 * obstruction a future solver would have to zero out. E is fixed by the
 * convention that V has no constant term.
 */
struct GeneralDerivation {
    SexticPotential potential;
    Complex energy{0.0};
    ComplexPoly remainder;
};

GeneralDerivation derive_general(const ComplexPoly& f, const ComplexPoly& g);

/**
 * Coefficient-level symmetry classification, independent of how the
 * solution was built. The potential is PT-symmetric when it equals its
 * reflection-conjugation image; a state has definite parity eta in {+1,-1}
 * when the exponent is reflection-invariant and the prefactor maps to
 * eta times itself, and no parity otherwise. explicitly_broken mirrors
 * !potential_pt (real odd couplings are the breaking parameters).
 */
SymmetryReport classify_symmetry(const QESSolution& sol);

/**
 * Reduction of even potentials to the one-parameter normal form
 *   V = x^6/2 + gamma x^4 + (gamma^2 + mu) x^2 / 2.
 *
 * Present only when V has even powers alone; then gamma = c4 and
 * mu = 2 c2 - gamma^2. The sector is the (n, r) with mu = -3 - 4 n - 2 r,
 * r in {0, 1}, when the solution's own prefactor degree matches it via
 * deg f = 2 n + r (r is the parity of f, n counts nodes of the even part),
 * and absent when no such match exists.
 */
struct TurbinerSector {
    int n = 0;
    int r = 0;
};

struct TurbinerForm {
    double gamma = 0.0;
    double mu = 0.0;
    std::optional<TurbinerSector> sector;
};

std::optional<TurbinerForm> turbiner_reduce(const QESSolution& sol);

}  // namespace qes
