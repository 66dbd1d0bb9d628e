#include "qes/verify.hpp"

#include <cmath>

namespace qes {

namespace {

void require_confining(const ComplexPoly& v) {
    const int n = v.degree();
    if (n < 2 || n % 2 != 0 || !(v.coeff(n).real() > 0.0))
        throw InvalidInput(
            "shooting/grid need a confining polynomial potential "
            "(even degree, positive real leading coefficient)");
}

struct EndState {
    Complex u, du;
    double log_scale;  // log of the factor divided out along the way
};

// RK4 for u'' = q(x) u from x0 over nsteps of size h, renormalizing the
// state every step. Solutions grow like exp(x^4/4) and would overflow
// long before the match point; the divided-out magnitude is accumulated
// in log space. The mismatch is normalized at the end, so the scale only
// matters as a diagnostic.
EndState integrate_side(const ComplexPoly& v, Complex energy, double x0, double h, long nsteps,
                        Complex u, Complex du) {
    const auto q = [&](double x) { return 2.0 * (v(Complex(x)) - energy); };
    Complex q0 = q(x0);
    double log_scale = 0.0;
    for (long i = 0; i < nsteps; ++i) {
        const double x = x0 + static_cast<double>(i) * h;
        const Complex qh = q(x + 0.5 * h);
        const Complex q1 = q(x + h);

        const Complex k1u = du, k1v = q0 * u;
        const Complex k2u = du + 0.5 * h * k1v, k2v = qh * (u + 0.5 * h * k1u);
        const Complex k3u = du + 0.5 * h * k2v, k3v = qh * (u + 0.5 * h * k2u);
        const Complex k4u = du + h * k3v, k4v = q1 * (u + h * k3u);

        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        du += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        q0 = q1;

        const double m = std::max(std::abs(u), std::abs(du));
        if (m > 0.0) {
            u /= m;
            du /= m;
            log_scale += std::log(m);
        }
    }
    return {u, du, log_scale};
}

}  // namespace

Complex shoot_mismatch(const ComplexPoly& v_poly, Complex energy, const ShootOptions& opt) {
    require_confining(v_poly);
    const double L = opt.domain;
    if (!(L > 0.0) || !(opt.step > 0.0) || std::abs(opt.match_point) >= L)
        throw InvalidInput("shooting: need domain > 0, step > 0, |match_point| < domain");

    const double span_l = opt.match_point + L;
    const double span_r = L - opt.match_point;
    const long n_l = std::max(8L, std::lround(span_l / opt.step));
    const long n_r = std::max(8L, std::lround(span_r / opt.step));

    // Decay-consistent boundary data: u'/u = +/- sqrt(2 (V - E)) at the
    // walls (principal branch), growing toward the interior.
    const Complex kap_l = std::sqrt(2.0 * (v_poly(Complex(-L)) - energy));
    const Complex kap_r = std::sqrt(2.0 * (v_poly(Complex(L)) - energy));
    const EndState left =
        integrate_side(v_poly, energy, -L, span_l / static_cast<double>(n_l), n_l, 1.0, kap_l);
    const EndState right =
        integrate_side(v_poly, energy, L, -span_r / static_cast<double>(n_r), n_r, 1.0, -kap_r);

    const double norm_l = std::hypot(std::abs(left.u), std::abs(left.du));
    const double norm_r = std::hypot(std::abs(right.u), std::abs(right.du));
    return (left.u * right.du - left.du * right.u) / (norm_l * norm_r);
}

ShootResult shoot_eigenvalue(const ComplexPoly& v_poly, Complex guess, const ShootOptions& opt) {
    Complex energy = guess;
    double final_abs = 0.0;
    bool converged = false;
    for (int it = 0; it < opt.max_iter; ++it) {
        const Complex m = shoot_mismatch(v_poly, energy, opt);
        final_abs = std::abs(m);
        if (final_abs <= opt.tol) {
            converged = true;
            break;
        }
        const double h = 1e-6 * std::max(1.0, std::abs(energy));
        const Complex m_plus = shoot_mismatch(v_poly, energy + h, opt);
        const Complex m_minus = shoot_mismatch(v_poly, energy - h, opt);
        const Complex deriv = (m_plus - m_minus) / (2.0 * h);
        if (std::abs(deriv) < 1e-300)
            throw NonConvergence("shooting: mismatch derivative vanished", final_abs);
        Complex step = m / deriv;
        if (std::abs(step) > 2.0) step *= 2.0 / std::abs(step);
        energy -= step;
    }
    if (!converged)
        throw NonConvergence("shooting: no convergence within max_iter", final_abs);

    if (opt.check_step) {
        ShootOptions half = opt;
        half.step = 0.5 * opt.step;
        half.check_step = false;
        const ShootResult fine = shoot_eigenvalue(v_poly, energy, half);
        if (std::abs(fine.energy - energy) > 10.0 * opt.tol)
            throw StepTooCoarse("shooting: step-halving moved the eigenvalue by " +
                                std::to_string(std::abs(fine.energy - energy)));
    }
    return {energy, final_abs};
}

ShootResult shoot_eigenvalue(const SexticPotential& v, Complex guess, const ShootOptions& opt) {
    return shoot_eigenvalue(v.as_poly(), guess, opt);
}

}  // namespace qes
