#include "qes/poly.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace qes {

namespace {

// Magnitude scale of p evaluated near |x| = R; used to judge residuals.
double eval_scale(const ComplexPoly& p, double R) {
    const double r = std::max(1.0, R);
    double s = 0.0, rk = 1.0;
    for (int k = 0; k <= p.degree(); ++k, rk *= r) s += std::abs(p.coeff(k)) * rk;
    return std::max(s, 1e-300);
}

Complex newton_polish(const ComplexPoly& p, const ComplexPoly& dp, Complex r) {
    Complex best = r;
    double best_abs = std::abs(p(r));
    for (int it = 0; it < 40; ++it) {
        const Complex d = dp(r);
        if (std::abs(d) == 0.0) break;
        const Complex step = p(r) / d;
        r -= step;
        const double a = std::abs(p(r));
        if (a < best_abs) {
            best = r;
            best_abs = a;
        }
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(r))) break;
    }
    return best;
}

}  // namespace

std::vector<Complex> quadratic_roots(Complex a, Complex b, Complex c) {
    if (std::abs(a) == 0.0) throw InvalidInput("quadratic_roots: leading coefficient is zero");
    const Complex d = std::sqrt(b * b - 4.0 * a * c);
    // Pick the sign that avoids cancellation in b +/- d.
    const Complex s = (std::real(std::conj(b) * d) >= 0.0) ? d : -d;
    const Complex q = -0.5 * (b + s);
    if (std::abs(q) == 0.0) return {-b / (2.0 * a), -b / (2.0 * a)};
    return {q / a, c / q};
}

std::vector<Complex> cubic_roots(Complex a, Complex b, Complex c, Complex d) {
    if (std::abs(a) == 0.0) throw InvalidInput("cubic_roots: leading coefficient is zero");
    const Complex B = b / a, C = c / a, D = d / a;
    // Depressed form t^3 + p t + q with x = t - B/3.
    const Complex p = C - B * B / 3.0;
    const Complex q = D - B * C / 3.0 + 2.0 * B * B * B / 27.0;
    const Complex shift = -B / 3.0;
    if (std::abs(p) == 0.0 && std::abs(q) == 0.0) return {shift, shift, shift};
    const Complex s = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    Complex u3 = -q / 2.0 + s;
    if (std::abs(u3) < std::abs(-q / 2.0 - s)) u3 = -q / 2.0 - s;
    const Complex u = std::pow(u3, 1.0 / 3.0);
    const Complex v = (std::abs(u) == 0.0) ? Complex(0.0) : -p / (3.0 * u);
    const Complex w(-0.5, std::sqrt(3.0) / 2.0);  // primitive cube root of unity
    std::vector<Complex> roots(3);
    Complex wu = u, wv = v;
    for (int k = 0; k < 3; ++k) {
        roots[static_cast<size_t>(k)] = wu + wv + shift;
        wu *= w;
        wv *= std::conj(w);
    }
    return roots;
}

std::vector<RootMult> poly_roots(const ComplexPoly& p) {
    const int n = p.degree();
    if (n < 1) throw InvalidInput("poly_roots: polynomial degree must be >= 1");

    // Companion matrix of the monic normalization.
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    const Complex lead = p.coeff(n);
    for (int i = 0; i < n; ++i) {
        comp(i, n - 1) = -p.coeff(i) / lead;
        if (i + 1 < n) comp(i + 1, i) = 1.0;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NonConvergence("poly_roots: companion eigensolver failed", 0.0);

    // Newton polish on p. When the derivative nearly vanishes at the
    // candidate we are sitting on a multiple root: its split companion
    // approximations stall ~sqrt(eps) away, so re-polish on the derivative
    // chain (simple root of p', p'', ...) and keep that value if p itself
    // stays at noise level there.
    std::vector<ComplexPoly> chain{p};
    for (int k = 0; k < n; ++k) chain.push_back(chain.back().derivative());
    std::vector<Complex> roots(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        Complex r = newton_polish(chain[0], chain[1], solver.eigenvalues()(i));
        for (size_t lvl = 1; lvl + 1 < chain.size(); ++lvl) {
            if (std::abs(chain[lvl](r)) > 1e-7 * eval_scale(chain[lvl], std::abs(r))) break;
            const Complex cand = newton_polish(chain[lvl], chain[lvl + 1], r);
            if (std::abs(chain[0](cand)) <= 1e-12 * eval_scale(chain[0], std::abs(cand)))
                r = cand;
            else
                break;
        }
        roots[static_cast<size_t>(i)] = r;
    }

    // Single-linkage clustering with the relative merge tolerance.
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    std::vector<std::vector<Complex>> clusters;
    for (const Complex& r : roots) {
        bool merged = false;
        for (auto& cl : clusters) {
            for (const Complex& q : cl) {
                const double tol = 1e-8 * std::max({1.0, std::abs(q), std::abs(r)});
                if (std::abs(q - r) <= tol) {
                    cl.push_back(r);
                    merged = true;
                    break;
                }
            }
            if (merged) break;
        }
        if (!merged) clusters.push_back({r});
    }

    std::vector<RootMult> out;
    out.reserve(clusters.size());
    for (const auto& cl : clusters) {
        Complex centroid = 0.0;
        for (const Complex& q : cl) centroid += q;
        centroid /= static_cast<double>(cl.size());
        out.push_back({centroid, static_cast<int>(cl.size())});
    }
    std::sort(out.begin(), out.end(), [](const RootMult& a, const RootMult& b) {
        if (a.root.real() != b.root.real()) return a.root.real() < b.root.real();
        return a.root.imag() < b.root.imag();
    });

    for (const auto& rm : out) {
        const double res = std::abs(p(rm.root));
        if (res > 1e-6 * eval_scale(p, std::abs(rm.root)))
            throw NonConvergence("poly_roots: root residual did not converge", res);
    }
    return out;
}

}  // namespace qes
