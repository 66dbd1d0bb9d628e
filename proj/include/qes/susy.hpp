#pragma once

#include "qes/types.hpp"

namespace qes {

/**
 * Polynomial plus second-order (and first-order) pole terms:
 *   value(x) = poly(x) + sum_i strength_i / (x - location_i)^order_i.
 * Pole locations must stay off the real axis by more than axis_tol so the
 * function is smooth where the dynamics lives.
 */
struct RationalPotential {
    ComplexPoly poly;
    std::vector<PoleTerm> poles;

    Complex operator()(Complex x) const;
};

// W = -psi'/psi for psi = f e^{-g}: polynomial part g', one simple pole of
// strength -m at each root of f (m = multiplicity).
struct Superpotential {
    ComplexPoly poly;
    std::vector<PoleTerm> poles;

    Complex operator()(Complex x) const;
};

// Throws RealAxisPole when any root of f lies within axis_tol of the real
// axis.
Superpotential superpotential(const PolyExpState& state, double axis_tol = 1e-8);

/**
 * Partner potential of (V, psi): removing the factor psi from the kinetic
 * term flips the sign of the superpotential derivative, which lands on the
 * closed form
 *   Vt = V + g'' + sum_i m_i / (x - r_i)^2
 * over the roots r_i of f with multiplicities m_i. All cross terms between
 * distinct roots cancel identically, so the pole strengths are exactly the
 * multiplicities. No numerical differentiation anywhere.
 */
RationalPotential partner_potential(const ComplexPoly& v_poly, const PolyExpState& state,
                                    double axis_tol = 1e-8);
RationalPotential partner_potential(const SexticPotential& v, const PolyExpState& state,
                                    double axis_tol = 1e-8);

/**
 * The centrifugal-type potential U = l(l+1)/2 (x - r)^{-2} annihilates
 * Psi0(x) = (x - r)^{-l} exactly at zero energy. pole must be off-axis.
 */
struct ZeroMode {
    RationalPotential potential;
    Complex pole;
    int l = 1;

    Complex psi0(Complex x) const;
    // -1/2 Psi0'' + U Psi0, evaluated with closed-form derivatives.
    Complex ode_residual(Complex x) const;
};

ZeroMode zero_mode(Complex r, int l, double axis_tol = 1e-8);

/**
 * Exact scattering solution at momentum k > 0 for the single second-order
 * pole of strength 1 (the l = 1 case):
 *   psi_k(x) = e^{ikx} (1 + i / (k (x - r))).
 * It solves -1/2 psi'' + (x-r)^{-2} psi = k^2/2 psi with no reflected wave
 * and unit transmission. Derivatives are closed-form; ode_residual lets
 * callers verify the solution independently before trusting it.
 */
struct JostWave {
    double k = 1.0;
    Complex pole;

    Complex value(double x) const;
    Complex deriv(double x) const;
    Complex second_deriv(double x) const;
    Complex ode_residual(double x) const;
};

JostWave jost_exact(double k, Complex r, double axis_tol = 1e-8);

}  // namespace qes
