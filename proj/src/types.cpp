#include "qes/types.hpp"

#include <cmath>

namespace qes {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Complex snap_axis(Complex z) {
    const double m = std::max(std::abs(z.real()), std::abs(z.imag()));
    double re = z.real(), im = z.imag();
    if (std::abs(re) <= 1e-14 * m) re = 0.0;
    if (std::abs(im) <= 1e-14 * m) im = 0.0;
    return {re, im};
}

bool axis_pure(Complex z) { return z.real() == 0.0 || z.imag() == 0.0; }

}  // namespace

AnsatzParams AnsatzParams::validated(Complex b1, Complex b2, Complex b3) {
    for (Complex z : {b1, b2, b3})
        if (!finite(z)) throw InvalidInput("exponent parameters must be finite");
    AnsatzParams p{snap_axis(b1), snap_axis(b2), snap_axis(b3)};
    if (!axis_pure(p.b1))
        throw InvalidInput("b1 must be purely real or purely imaginary; got both parts nonzero");
    if (!axis_pure(p.b3))
        throw InvalidInput("b3 must be purely real or purely imaginary; got both parts nonzero");
    if (p.b2.imag() != 0.0)
        throw InvalidInput("b2 must be real");
    const bool b1_re = p.b1.real() != 0.0, b1_im = p.b1.imag() != 0.0;
    const bool b3_re = p.b3.real() != 0.0, b3_im = p.b3.imag() != 0.0;
    if ((b1_re && b3_im) || (b1_im && b3_re))
        throw InvalidInput(
            "b1 and b3 must agree on mode: both purely imaginary or both purely real");
    return p;
}

bool AnsatzParams::pt_mode() const { return b1.real() == 0.0 && b3.real() == 0.0; }

ComplexPoly AnsatzParams::exponent() const {
    return ComplexPoly{0.0, b1, b2, b3, kB4};
}

PolyExpState::PolyExpState(ComplexPoly f, ComplexPoly g) {
    if (f.is_zero()) throw InvalidInput("state prefactor polynomial is zero");
    const Complex flead = f.coeff(f.degree());
    if (std::abs(flead - 1.0) > 1e-12)
        throw InvalidInput("state prefactor polynomial must be monic");
    if (g.degree() != 4) throw InvalidInput("state exponent must have degree 4");
    if (std::abs(g.coeff(4) - kB4) > 1e-12)
        throw InvalidInput("state exponent must have leading coefficient 1/4");
    if (std::abs(g.coeff(0)) > 1e-12 * std::max(1.0, g.max_abs_coeff()))
        throw InvalidInput("state exponent must have zero constant term");

    // Make the invariants exact so downstream algebra stays clean.
    std::vector<Complex> fc(f.coeffs());
    for (auto& z : fc) z /= flead;
    fc.back() = 1.0;
    std::vector<Complex> gc(g.coeffs());
    gc[0] = 0.0;
    gc[4] = kB4;
    f_ = poly_from_raw(std::move(fc));
    g_ = poly_from_raw(std::move(gc));
}

Complex PolyExpState::log_deriv(Complex x) const {
    return f_.derivative()(x) / f_(x) - g_.derivative()(x);
}

ComplexPoly SexticPotential::as_poly() const {
    return poly_from_raw({0.0, c[0], c[1], c[2], c[3], c[4], c[5]});
}

SexticPotential SexticPotential::from_poly(const ComplexPoly& p) {
    if (p.degree() > 6) throw InvalidInput("potential degree exceeds 6");
    if (std::abs(p.coeff(0)) > 1e-12 * std::max(1.0, p.max_abs_coeff()))
        throw InvalidInput("potential must have zero constant term");
    SexticPotential v;
    for (int i = 1; i <= 6; ++i) v.c[static_cast<size_t>(i - 1)] = p.coeff(i);
    return v;
}

}  // namespace qes
