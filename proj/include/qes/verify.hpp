#pragma once

#include "qes/susy.hpp"
#include "qes/types.hpp"

#include <optional>

namespace qes {

// Which engine executes embarrassingly parallel loops. Results are
// bit-identical across the two: the parallel path writes each slot by
// index and assembles in input order.
enum class Exec { serial, parallel };

/**
 * Coefficients of -1/2 (f'' - 2 f' g' - f g'' + f g'^2) + (V - E) f.
 *
 * This polynomial is identically zero exactly when (E, f e^{-g}) is an
 * eigenpair of -1/2 d^2/dx^2 + V. Pure polynomial algebra, no sampling.
 */
struct ResidualReport {
    ComplexPoly residual;
    double max_abs = 0.0;
};

ResidualReport residual_coefficients(const ComplexPoly& v_poly, Complex energy,
                                     const PolyExpState& state);
ResidualReport residual_coefficients(const SexticPotential& v, Complex energy,
                                     const PolyExpState& state);
// Polynomial part only; throws InvalidInput when the potential has poles.
ResidualReport residual_coefficients(const RationalPotential& v, Complex energy,
                                     const PolyExpState& state);

/**
 * Two-sided shooting for bound levels of a confining polynomial potential.
 *
 * Integrates u'' = 2 (V - E) u from both walls toward match_point with
 * fixed-step RK4, renormalizing (u, u') every step (solutions scale like
 * exp(x^4/4); the scale factor is tracked in log space). The mismatch
 * M(E) is the Wronskian of the two unit-normalized end states; it vanishes
 * exactly at eigenvalues of the truncated problem. E is refined by complex
 * Newton with a central finite-difference derivative until |M| <= tol.
 */
struct ShootOptions {
    double domain = 4.5;       // integrate over [-domain, domain]
    double step = 1e-3;
    double match_point = 0.0;
    double tol = 1e-10;        // on |M|
    int max_iter = 30;
    // Opt-in: after convergence re-run at half the step and require the
    // two eigenvalues to agree within 10*tol, else StepTooCoarse.
    bool check_step = false;
};

struct ShootResult {
    Complex energy{0.0};
    double mismatch = 0.0;  // final |M|
};

ShootResult shoot_eigenvalue(const ComplexPoly& v_poly, Complex guess,
                             const ShootOptions& opt = {});
ShootResult shoot_eigenvalue(const SexticPotential& v, Complex guess,
                             const ShootOptions& opt = {});
// The raw mismatch, exposed so callers can check reproducibility and
// landscape shape. Deterministic for fixed options.
Complex shoot_mismatch(const ComplexPoly& v_poly, Complex energy, const ShootOptions& opt = {});

/**
 * Dirichlet finite-difference diagonalization on [-domain, domain] with N
 * intervals (N - 1 interior points, central second differences). Returns
 * the `count` eigenvalues of smallest real part, sorted by (Re, Im).
 *
 * Small problems go through a dense complex eigensolver; large ones seed
 * shifted inverse iteration (Rayleigh-quotient refined, transpose inner
 * product) with eigenvalues of a coarse grid. grid_error_estimate runs N
 * and 2N and reports |E_2N - E_N| / 3 per level, the standard second-order
 * Richardson bound on the discretization error of the 2N values.
 */
std::vector<Complex> grid_diagonalize(const ComplexPoly& v_poly, double domain, int N, int count);
// Reference path: always dense, any N (kept as the slow oracle the seeded
// path is tested against).
std::vector<Complex> grid_diagonalize_dense(const ComplexPoly& v_poly, double domain, int N,
                                            int count);

struct GridEstimate {
    std::vector<Complex> eigenvalues;  // at resolution 2N
    std::vector<double> richardson;    // per-level error estimate for them
};
GridEstimate grid_error_estimate(const ComplexPoly& v_poly, double domain, int N, int count);

/**
 * Seeds shoot_eigenvalue from a rectangular grid of starting guesses and
 * collects the distinct converged levels inside the window. Convergence
 * failures are dropped; roots closer than dedup_tol (absolute) merge.
 * Output sorted by (Re, Im). Levels beyond the closed-form pairs are
 * reported as found, with no claim about their reality.
 */
struct ScanWindow {
    double re_min = 0.0, re_max = 0.0;
    double im_min = 0.0, im_max = 0.0;
};

struct SpectrumScanOptions {
    int seeds_re = 16;
    int seeds_im = 5;
    double dedup_tol = 1e-6;
    ShootOptions shoot{};
    Exec exec = Exec::parallel;
};

std::vector<Complex> spectrum_scan(const ComplexPoly& v_poly, const ScanWindow& window,
                                   const SpectrumScanOptions& opt = {});

/**
 * Reflection/transmission of a pole-only potential at momentum k > 0.
 *
 * Integrates -1/2 psi'' + U psi = k^2/2 psi from +domain to -domain with
 * outgoing boundary data and decomposes the solution at -domain into
 * incoming and outgoing components via value and derivative. For the
 * single strength-1 second-order pole both the boundary data and the
 * decomposition basis come from the exact closed-form waves (which are
 * re-verified on a sample grid first); a bare plane-wave basis would be
 * polluted by the slow 1/x^2 tail at any practical domain size.
 * oracle_error is the largest pointwise deviation from the closed form on
 * [-20, 20] when that oracle applies.
 */
struct ScatterResult {
    double k = 0.0;
    Complex reflection{0.0};
    Complex transmission{0.0};
    std::optional<double> oracle_error;
};

ScatterResult scattering_coefficients(const RationalPotential& u, double k, double domain,
                                      double step = 1e-3, bool check_step = false);

}  // namespace qes
