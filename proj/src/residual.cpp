#include "qes/verify.hpp"

namespace qes {

ResidualReport residual_coefficients(const ComplexPoly& v_poly, Complex energy,
                                     const PolyExpState& state) {
    const ComplexPoly& f = state.f();
    const ComplexPoly fp = f.derivative();
    const ComplexPoly fpp = fp.derivative();
    const ComplexPoly gp = state.g().derivative();
    const ComplexPoly gpp = gp.derivative();

    ComplexPoly kin = fpp - 2.0 * (fp * gp) - f * gpp + f * (gp * gp);
    ComplexPoly res = -0.5 * kin + (v_poly - ComplexPoly::constant(energy)) * f;
    const double m = res.max_abs_coeff();
    return {std::move(res), m};
}

ResidualReport residual_coefficients(const SexticPotential& v, Complex energy,
                                     const PolyExpState& state) {
    return residual_coefficients(v.as_poly(), energy, state);
}

ResidualReport residual_coefficients(const RationalPotential& v, Complex energy,
                                     const PolyExpState& state) {
    if (!v.poles.empty())
        throw InvalidInput("residual_coefficients: potential must be polynomial (no pole terms)");
    return residual_coefficients(v.poly, energy, state);
}

}  // namespace qes
