#include "qes/susy.hpp"

#include <algorithm>
#include <cmath>

namespace qes {

namespace {

Complex pole_sum(const std::vector<PoleTerm>& poles, Complex x) {
    Complex acc = 0.0;
    for (const auto& p : poles) {
        Complex d = x - p.location;
        Complex term = p.strength / d;
        for (int k = 1; k < p.order; ++k) term /= d;
        acc += term;
    }
    return acc;
}

// Roots of f sorted by (Re, Im); every root must be off the real axis.
std::vector<RootMult> off_axis_roots(const ComplexPoly& f, double axis_tol) {
    if (f.degree() < 1) return {};
    auto roots = poly_roots(f);
    for (const auto& rm : roots)
        if (std::abs(rm.root.imag()) <= axis_tol)
            throw RealAxisPole("prefactor root within " + std::to_string(axis_tol) +
                               " of the real axis: the construction needs off-axis nodes");
    return roots;
}

}  // namespace

Complex RationalPotential::operator()(Complex x) const { return poly(x) + pole_sum(poles, x); }

Complex Superpotential::operator()(Complex x) const { return poly(x) + pole_sum(poles, x); }

Superpotential superpotential(const PolyExpState& state, double axis_tol) {
    Superpotential w;
    w.poly = state.g().derivative();
    for (const auto& rm : off_axis_roots(state.f(), axis_tol))
        w.poles.push_back({rm.root, Complex(-rm.multiplicity, 0.0), 1});
    return w;
}

RationalPotential partner_potential(const ComplexPoly& v_poly, const PolyExpState& state,
                                    double axis_tol) {
    RationalPotential vt;
    vt.poly = v_poly + state.g().derivative().derivative();
    for (const auto& rm : off_axis_roots(state.f(), axis_tol))
        vt.poles.push_back({rm.root, Complex(rm.multiplicity, 0.0), 2});
    return vt;
}

RationalPotential partner_potential(const SexticPotential& v, const PolyExpState& state,
                                    double axis_tol) {
    return partner_potential(v.as_poly(), state, axis_tol);
}

Complex ZeroMode::psi0(Complex x) const {
    Complex d = x - pole;
    Complex val = 1.0;
    for (int k = 0; k < l; ++k) val /= d;
    return val;
}

Complex ZeroMode::ode_residual(Complex x) const {
    const Complex d = x - pole;
    const Complex psi = psi0(x);
    const Complex psi2 = static_cast<double>(l) * static_cast<double>(l + 1) * psi / (d * d);
    return -0.5 * psi2 + potential(x) * psi;
}

ZeroMode zero_mode(Complex r, int l, double axis_tol) {
    if (l < 1) throw InvalidInput("zero_mode: l must be a positive integer");
    if (std::abs(r.imag()) <= axis_tol)
        throw RealAxisPole("zero_mode: pole must be off the real axis");
    ZeroMode zm;
    zm.pole = r;
    zm.l = l;
    zm.potential.poles.push_back({r, Complex(0.5 * l * (l + 1), 0.0), 2});
    return zm;
}

Complex JostWave::value(double x) const {
    const Complex u = Complex(x) - pole;
    return std::exp(Complex(0.0, k * x)) * (1.0 + Complex(0.0, 1.0) / (k * u));
}

Complex JostWave::deriv(double x) const {
    const Complex u = Complex(x) - pole;
    const Complex ik(0.0, k);
    return std::exp(Complex(0.0, k * x)) * (ik + Complex(-1.0, 0.0) / u - Complex(0.0, 1.0) / (k * u * u));
}

Complex JostWave::second_deriv(double x) const {
    const Complex u = Complex(x) - pole;
    const Complex phase = std::exp(Complex(0.0, k * x));
    return phase * (Complex(-k * k, 0.0) - Complex(0.0, k) / u + 2.0 / (u * u) +
                    Complex(0.0, 2.0) / (k * u * u * u));
}

Complex JostWave::ode_residual(double x) const {
    const Complex u = Complex(x) - pole;
    return -0.5 * second_deriv(x) + value(x) / (u * u) - 0.5 * k * k * value(x);
}

JostWave jost_exact(double k, Complex r, double axis_tol) {
    if (!(k > 0.0)) throw InvalidInput("jost_exact: k must be positive");
    if (std::abs(r.imag()) <= axis_tol)
        throw RealAxisPole("jost_exact: pole must be off the real axis");
    return {k, r};
}

}  // namespace qes
