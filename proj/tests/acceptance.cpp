// Acceptance suite: one line per criterion, [PASS]/[FAIL] plus the measured
// figure and its pinned tolerance. Exit code 0 only if every line passes.

#include "qes/construct.hpp"
#include "qes/susy.hpp"
#include "qes/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

using namespace qes;

namespace {

int failures = 0;

void report(int index, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", index, detail.c_str());
    if (!ok) ++failures;
}

void guarded(int index, const std::function<void()>& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report(index, false, std::string("unexpected exception: ") + e.what());
    }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

double min_distance(const std::vector<Complex>& values, Complex target) {
    double best = std::numeric_limits<double>::infinity();
    for (const Complex& v : values) best = std::min(best, std::abs(v - target));
    return best;
}

// --------------------------------------------------------------------------

void criterion_residuals() {
    std::mt19937 rng(20250814u);
    auto draw = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    double worst = 0.0;
    int pairs = 0;
    for (int i = 0; i < 1000; ++i) {
        const bool pt = (i / 3) % 2 == 0;
        auto odd = [&]() {
            const double v = draw(-2.0, 2.0);
            return pt ? Complex(0, v) : Complex(v, 0);
        };
        std::vector<QESSolution> sols;
        switch (i % 3) {
            case 0:
                sols.push_back(construct_constant(
                    AnsatzParams::validated(odd(), draw(-2.0, 2.0), odd())));
                break;
            case 1:
                sols = construct_linear(
                    AnsatzParams::validated(odd(), draw(-2.0, 2.0), odd()));
                break;
            default:
                sols.push_back(construct_quadratic(draw(-2.0, 2.0), odd()));
                break;
        }
        for (const auto& sol : sols)
            for (const auto& ep : sol.eigenpairs) {
                worst = std::max(
                    worst, residual_coefficients(sol.potential, ep.energy, ep.state).max_abs);
                ++pairs;
            }
    }
    report(1, worst <= 1e-10,
           "1000 random draws, " + std::to_string(pairs) + " eigenpairs, max residual " +
               fmt(worst) + " (tol 1e-10)");
}

void criterion_complex_branch_level() {
    const auto sols = construct_linear(AnsatzParams::validated(0.0, 1.0, 0.0));
    bool ok = true;
    double worst_shoot = 0.0, worst_grid = 0.0, worst_time = 0.0;
    for (size_t idx : {size_t(0), size_t(2)}) {  // a0 = -/+ i sqrt2
        const auto t0 = std::chrono::steady_clock::now();
        const ComplexPoly v = sols[idx].potential.as_poly();
        const auto sr = shoot_eigenvalue(v, Complex(1.2, 0.0));
        worst_shoot = std::max(worst_shoot, std::abs(sr.energy - 1.0));
        const auto eigs = grid_diagonalize(v, 4.5, 3200, 5);
        worst_grid = std::max(worst_grid, min_distance(eigs, 1.0));
        worst_time = std::max(worst_time, seconds_since(t0));
    }
    ok = worst_shoot <= 1e-6 && worst_grid <= 1e-4 && worst_time < 5.0;
    report(2, ok,
           "level 1 on both branches: shoot dev " + fmt(worst_shoot) +
               " (tol 1e-6), grid dev " + fmt(worst_grid) + " (tol 1e-4), slowest " +
               fmt(worst_time) + " s (< 5 s)");
}

void criterion_single_level_exact() {
    bool ok = true;
    for (double b2 : {0.5, 1.0, 2.0}) {
        const auto sols = construct_linear(AnsatzParams::validated(0.0, b2, 0.0));
        const QESSolution* zero_branch = nullptr;
        for (const auto& s : sols)
            if (s.eigenpairs[0].state.f().coeff(0) == Complex(0.0)) zero_branch = &s;
        ok = ok && zero_branch && zero_branch->eigenpairs[0].energy == Complex(3.0 * b2, 0.0);
    }
    report(3, ok, std::string("zero-root branch level equals 3 b2 exactly for b2 in "
                              "{1/2, 1, 2}: ") + (ok ? "bit-exact" : "mismatch"));
}

void criterion_two_level_gap() {
    std::mt19937 rng(777u);
    auto draw = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    const double floor = 2.0 * std::sqrt(2.0) - 1e-12;
    double min_gap = std::numeric_limits<double>::infinity();
    double worst_im = 0.0;
    for (int i = 0; i < 200; ++i) {
        const bool imag = i % 2 == 0;
        const double b3v = draw(-1.5, 1.5);
        const auto sol = construct_quadratic(draw(-2.0, 2.0),
                                             imag ? Complex(0, b3v) : Complex(b3v, 0));
        min_gap = std::min(min_gap,
                           (sol.eigenpairs[0].energy - sol.eigenpairs[1].energy).real());
        if (imag)
            for (const auto& ep : sol.eigenpairs)
                worst_im = std::max(worst_im, std::abs(ep.energy.imag()));
    }
    report(4, min_gap >= floor && worst_im <= 1e-12,
           "200 draws: min gap " + fmt(min_gap) + " >= 2 sqrt2 - 1e-12, max |Im E| " +
               fmt(worst_im) + " (tol 1e-12)");
}

void criterion_normal_form() {
    double worst = 0.0;
    bool sectors = true;
    for (double gamma : {1.0, 2.0, 3.0}) {
        const auto form = turbiner_reduce(construct_quadratic(gamma / 2.0, 0.0));
        if (!form || !form->sector) {
            sectors = false;
            continue;
        }
        worst = std::max({worst, std::abs(form->gamma - gamma), std::abs(form->mu + 7.0)});
        sectors = sectors && form->sector->n == 1 && form->sector->r == 0;
    }
    const auto lin = construct_linear(AnsatzParams::validated(0.0, 1.0, 0.0));
    const auto lform = turbiner_reduce(lin[1]);
    if (!lform || !lform->sector) {
        sectors = false;
    } else {
        worst = std::max({worst, std::abs(lform->gamma - 2.0), std::abs(lform->mu + 5.0)});
        sectors = sectors && lform->sector->n == 0 && lform->sector->r == 1;
    }
    report(5, worst <= 1e-14 && sectors,
           "mu = -7 (n=1, r=0) and mu = -5 (n=0, r=1); worst identity error " + fmt(worst) +
               " (tol 1e-14)");
}

void criterion_shift_covariance() {
    std::mt19937 rng(31337u);
    auto draw = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double b2 = draw(-2.0, 2.0);
        const Complex b3(0, draw(-1.5, 1.5));
        const double w = (b3 * b3).real();
        const auto sol = construct_quadratic(b2, b3);
        const auto even = construct_quadratic(b2 - 1.5 * w, 0.0);
        const double delta = 2.0 * w * (b2 - w) * (b2 - w) - 3.5 * w;

        const ComplexPoly moved = poly_shift(even.potential.as_poly(), b3);
        const ComplexPoly target =
            sol.potential.as_poly() + ComplexPoly::constant(delta);
        worst = std::max(worst, max_coeff_distance(moved, target));
        for (int j : {0, 1})
            worst = std::max(worst,
                             std::abs(sol.eigenpairs[static_cast<size_t>(j)].energy -
                                      (even.eigenpairs[static_cast<size_t>(j)].energy - delta)));
    }
    report(6, worst <= 1e-11,
           "100 draws: worst coefficient/energy mismatch " + fmt(worst) + " (tol 1e-11)");
}

void criterion_partner() {
    // Nodeless state: the partner stays polynomial.
    const auto c = construct_constant(AnsatzParams::validated(0.0, 1.0, 0.0));
    const auto cpart = partner_potential(c.potential, c.eigenpairs[0].state);
    bool ok = cpart.poles.empty();
    double worst = max_coeff_distance(
        cpart.poly, c.potential.as_poly() + ComplexPoly{2.0, 0.0, 3.0});

    // Node-one branches: fixed polynomial part plus one unit pole at the
    // reflected prefactor root.
    const double s2 = std::sqrt(2.0);
    const auto lin = construct_linear(AnsatzParams::validated(0.0, 1.0, 0.0));
    for (size_t idx : {size_t(0), size_t(2)}) {
        const auto& sol = lin[idx];
        const Complex a0 = sol.eigenpairs[0].state.f().coeff(0);
        const auto part = partner_potential(sol.potential, sol.eigenpairs[0].state);
        const ComplexPoly expect{2.0, a0, 2.5, 0.0, 2.0, 0.0, 0.5};
        worst = std::max(worst, max_coeff_distance(part.poly, expect));
        if (part.poles.size() != 1 || part.poles[0].order != 2) {
            ok = false;
            continue;
        }
        worst = std::max(worst, std::abs(part.poles[0].strength - 1.0));
        worst = std::max(worst, std::abs(part.poles[0].location - (-a0)));
        worst = std::max(worst, std::abs(std::abs(part.poles[0].location.imag()) - s2));
    }
    report(7, ok && worst <= 1e-12,
           "polynomial partner for nodeless state; unit pole at -/+ i sqrt(2 b2) for the "
           "node-one branches; worst error " + fmt(worst) + " (tol 1e-12)");
}

void criterion_transparency() {
    RationalPotential u;
    u.poles.push_back({Complex(0, -std::sqrt(2.0)), 1.0, 2});
    double worst_r = 0.0, worst_t = 0.0, worst_match = 0.0, worst_time = 0.0;
    bool have_oracle = true;
    for (double k : {0.5, 1.0, 2.0}) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = scattering_coefficients(u, k, 50.0);
        worst_time = std::max(worst_time, seconds_since(t0));
        worst_r = std::max(worst_r, std::abs(r.reflection));
        worst_t = std::max(worst_t, std::abs(1.0 - std::abs(r.transmission)));
        if (r.oracle_error)
            worst_match = std::max(worst_match, *r.oracle_error);
        else
            have_oracle = false;
    }
    report(8,
           have_oracle && worst_r <= 1e-4 && worst_t <= 1e-4 && worst_match <= 1e-6 &&
               worst_time < 1.0,
           "k in {1/2, 1, 2}: max |R| " + fmt(worst_r) + ", max |1-|T|| " + fmt(worst_t) +
               " (tol 1e-4), closed-form match " + fmt(worst_match) +
               " (tol 1e-6 on [-20,20]), slowest " + fmt(worst_time) + " s (< 1 s)");
}

void criterion_zero_modes() {
    const Complex r(0, -std::sqrt(2.0));
    double worst = 0.0;
    for (int l : {1, 2, 3}) {
        const ZeroMode zm = zero_mode(r, l);
        for (double x = -6.0; x <= 6.0; x += 0.25)
            worst = std::max(worst, std::abs(zm.ode_residual(x)));
    }
    report(9, worst <= 1e-12,
           "l in {1,2,3}, pole at -i sqrt2: max pointwise residual " + fmt(worst) +
               " (tol 1e-12)");
}

void criterion_symmetry_classification() {
    bool flags = true;
    const auto broken = construct_linear(AnsatzParams::validated(0.0, -1.0, 0.0));
    flags = flags && broken[0].symmetry.explicitly_broken &&
            !broken[0].symmetry.potential_pt && broken[2].symmetry.explicitly_broken;
    const auto pt = construct_linear(AnsatzParams::validated(0.0, 1.0, 0.0));
    flags = flags && pt[0].symmetry.potential_pt && pt[2].symmetry.potential_pt &&
            pt[2].symmetry.state_parity[0] == -1 && pt[0].symmetry.state_parity[0] == -1;

    // Coefficient-level classification must agree with a 64-point numerical
    // test of V(x) = conj(V(-x)) and psi(x) = eta conj(psi(-x)).
    bool agree = true;
    double worst_sym = 0.0;
    std::vector<QESSolution> samples{broken[0], broken[2], pt[0], pt[2],
                                     construct_constant(AnsatzParams::validated(
                                         Complex(0, 1), 1.0, 0.0))};
    for (const auto& sol : samples) {
        double vdev = 0.0, vscale = 1.0;
        double pdev = 0.0, pscale = 0.0;
        const auto& ep = sol.eigenpairs[0];
        const auto eta = sol.symmetry.state_parity[0];
        for (int i = 0; i < 64; ++i) {
            const double x = -3.2 + 6.4 * static_cast<double>(i) / 63.0;
            const Complex vx = sol.potential(x);
            vdev = std::max(vdev, std::abs(std::conj(sol.potential(-x)) - vx));
            vscale = std::max(vscale, std::abs(vx));
            const Complex px = ep.state.psi(x);
            pscale = std::max(pscale, std::abs(px));
            if (eta)
                pdev = std::max(pdev,
                                std::abs(std::conj(ep.state.psi(-x)) -
                                         static_cast<double>(*eta) * px));
        }
        const bool numeric_pt = vdev <= 1e-10 * vscale;
        agree = agree && numeric_pt == sol.symmetry.potential_pt;
        if (sol.symmetry.potential_pt) worst_sym = std::max(worst_sym, vdev / vscale);
        if (eta) {
            agree = agree && pdev <= 1e-10 * std::max(1.0, pscale);
            worst_sym = std::max(worst_sym, pdev / std::max(1.0, pscale));
        }
    }
    report(10, flags && agree,
           "broken/PT flags and parities as constructed; coefficient and 64-point checks "
           "agree, worst symmetric deviation " + fmt(worst_sym) + " (tol 1e-10)");
}

void criterion_oracle_concordance() {
    std::mt19937 rng(4242u);
    auto draw = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    double worst_agree = 0.0, worst_bound = 0.0;
    bool step_ok = true;
    for (int i = 0; i < 5; ++i) {
        const auto sol = construct_quadratic(draw(-1.0, 1.5), Complex(0, draw(-1.0, 1.0)));
        const ComplexPoly v = sol.potential.as_poly();
        const Complex low = sol.eigenpairs[1].energy;  // lower of the two levels

        ShootOptions opt;
        opt.tol = 1e-9;
        opt.check_step = true;  // step-halving must stay within its own bound
        Complex shot;
        try {
            shot = shoot_eigenvalue(v, low, opt).energy;
        } catch (const StepTooCoarse&) {
            step_ok = false;
            continue;
        }

        const GridEstimate est = grid_error_estimate(v, 4.5, 2400, 6);  // values at N=4800
        worst_agree = std::max(worst_agree, min_distance(est.eigenvalues, shot));

        const auto finer = grid_diagonalize(v, 4.5, 9600, 6);
        for (size_t j = 0; j < est.eigenvalues.size(); ++j) {
            const double shift = min_distance(finer, est.eigenvalues[j]);
            if (est.richardson[j] > 0.0)
                worst_bound = std::max(worst_bound, shift / (2.0 * est.richardson[j]));
        }
    }
    report(11, step_ok && worst_agree <= 1e-4 && worst_bound <= 1.0,
           "5 random symmetric instances: worst shoot/grid distance " + fmt(worst_agree) +
               " (tol 1e-4); N-doubling shifts / (2x Richardson) max " + fmt(worst_bound) +
               "; step-halving within bound: " + (step_ok ? "yes" : "no"));
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    guarded(1, criterion_residuals);
    guarded(2, criterion_complex_branch_level);
    guarded(3, criterion_single_level_exact);
    guarded(4, criterion_two_level_gap);
    guarded(5, criterion_normal_form);
    guarded(6, criterion_shift_covariance);
    guarded(7, criterion_partner);
    guarded(8, criterion_transparency);
    guarded(9, criterion_zero_modes);
    guarded(10, criterion_symmetry_classification);
    guarded(11, criterion_oracle_concordance);
    std::printf("%d of 11 criteria passed in %.1f s\n", 11 - failures, seconds_since(t0));
    return failures == 0 ? 0 : 1;
}
