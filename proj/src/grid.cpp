#include "qes/verify.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace qes {

namespace {

constexpr int kDenseLimit = 260;   // largest matrix sent to the dense solver
constexpr int kCoarseN = 200;      // seeding resolution for large problems

struct Tridiag {
    std::vector<Complex> diag;
    double off;  // constant off-diagonal -1/(2 dx^2)
};

Tridiag build_matrix(const ComplexPoly& v, double L, int N) {
    const double dx = 2.0 * L / static_cast<double>(N);
    Tridiag t;
    t.off = -0.5 / (dx * dx);
    t.diag.resize(static_cast<size_t>(N - 1));
    for (int j = 1; j < N; ++j) {
        const double x = -L + dx * static_cast<double>(j);
        t.diag[static_cast<size_t>(j - 1)] = 1.0 / (dx * dx) + v(Complex(x));
    }
    return t;
}

bool re_im_less(Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

std::vector<Complex> dense_eigs(const Tridiag& t, int count) {
    const int m = static_cast<int>(t.diag.size());
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        h(i, i) = t.diag[static_cast<size_t>(i)];
        if (i + 1 < m) h(i, i + 1) = h(i + 1, i) = t.off;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(h, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NonConvergence("grid: dense eigensolver failed", 0.0);
    std::vector<Complex> eigs(solver.eigenvalues().data(),
                              solver.eigenvalues().data() + m);
    std::sort(eigs.begin(), eigs.end(), re_im_less);
    eigs.resize(static_cast<size_t>(std::min(count, m)));
    return eigs;
}

// Solve (T - shift) x = b by banded LU with partial pivoting. O(n).
void shifted_solve(const Tridiag& t, Complex shift, std::vector<Complex>& x) {
    const size_t n = t.diag.size();
    std::vector<Complex> dl(n, t.off), d(n), du(n, t.off), du2(n, 0.0);
    for (size_t i = 0; i < n; ++i) d[i] = t.diag[i] - shift;

    // Factor and forward-eliminate in one pass.
    for (size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(d[i]) < std::abs(dl[i + 1])) {
            std::swap(d[i], dl[i + 1]);
            std::swap(du[i], d[i + 1]);
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = 0.0;
            }
            std::swap(x[i], x[i + 1]);
        }
        if (std::abs(d[i]) == 0.0) d[i] = 1e-300;  // exact singularity guard
        const Complex m = dl[i + 1] / d[i];
        d[i + 1] -= m * du[i];
        if (i + 2 < n) du[i + 1] -= m * du2[i];
        x[i + 1] -= m * x[i];
    }
    if (std::abs(d[n - 1]) == 0.0) d[n - 1] = 1e-300;

    // Back substitution (rows carry up to two superdiagonals after pivoting).
    x[n - 1] /= d[n - 1];
    if (n >= 2) x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
    for (size_t k = n; k-- > 2;) {
        const size_t i = k - 2;
        x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
    }
}

Complex transpose_rayleigh(const Tridiag& t, const std::vector<Complex>& v,
                           double* skew) {
    // x^T T x / x^T x with the unconjugated transpose: the discretized
    // operator is complex symmetric, so this quotient is stationary at its
    // eigenvectors. |x^T x| (for unit x) reports the eigenvalue condition:
    // it decays toward zero for near self-orthogonal eigenvectors.
    const size_t n = t.diag.size();
    Complex num = 0.0, den = 0.0;
    for (size_t i = 0; i < n; ++i) {
        Complex tv = t.diag[i] * v[i];
        if (i > 0) tv += t.off * v[i - 1];
        if (i + 1 < n) tv += t.off * v[i + 1];
        num += v[i] * tv;
        den += v[i] * v[i];
    }
    if (skew) *skew = std::abs(den);
    return num / den;
}

// Fixed-shift inverse iteration from a coarse seed; converges to the
// fine-grid eigenvalue nearest the seed. The shift stays at the seed: a
// moving Rayleigh shift can wander into the non-normal wall spectrum when
// the potential is complex, while the coarse seed error is far below the
// level spacing, so the fixed shift keeps the target level dominant.
Complex refine_eigenvalue(const Tridiag& t, Complex seed) {
    const size_t n = t.diag.size();
    std::vector<Complex> v(n);
    // Deterministic start without any grid symmetry (a symmetric start can
    // be exactly orthogonal to odd-parity eigenvectors).
    unsigned long long s = 0x9e3779b97f4a7c15ull;
    for (size_t i = 0; i < n; ++i) {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        v[i] = Complex(static_cast<double>((s >> 20) & 0xffff) / 65536.0 - 0.5,
                       static_cast<double>((s >> 40) & 0xffff) / 65536.0 - 0.5);
    }

    // The quotient carries a roundoff floor proportional to the matrix
    // scale (the second difference cancels ~1/dx^2 pointwise) divided by
    // the eigenvalue condition |v^T v|; a fixed tolerance never settles for
    // the ill-conditioned upper levels of a strongly complex potential.
    const double base =
        256.0 * std::numeric_limits<double>::epsilon() * 2.0 * std::abs(t.off);
    Complex mu = seed;
    bool have_mu = false;
    for (int it = 0; it < 300; ++it) {
        shifted_solve(t, seed, v);
        double norm = 0.0;
        for (const auto& z : v) norm += std::norm(z);
        norm = std::sqrt(norm);
        for (auto& z : v) z /= norm;
        double skew = 1.0;
        const Complex next = transpose_rayleigh(t, v, &skew);
        const double scale = std::max(1.0, std::abs(next));
        const double settle =
            1e-13 * scale +
            std::min(base / std::max(skew, 1e-12), 1e-4 * scale);
        if (have_mu && std::abs(next - mu) <= settle) return next;
        mu = next;
        have_mu = true;
    }
    throw NonConvergence("grid: inverse iteration did not settle", std::abs(mu - seed));
}

std::vector<Complex> diagonalize(const ComplexPoly& v, double L, int N, int count) {
    const Tridiag fine = build_matrix(v, L, N);
    if (static_cast<int>(fine.diag.size()) <= kDenseLimit) return dense_eigs(fine, count);

    const int want = count + 4;
    const std::vector<Complex> seeds = dense_eigs(build_matrix(v, L, kCoarseN), want);
    std::vector<Complex> refined;
    refined.reserve(seeds.size());
    for (const Complex& s : seeds) refined.push_back(refine_eigenvalue(fine, s));

    std::sort(refined.begin(), refined.end(), re_im_less);
    std::vector<Complex> out;
    for (const Complex& z : refined) {
        if (!out.empty() && std::abs(z - out.back()) <=
                                1e-9 * std::max(1.0, std::abs(z)))
            continue;  // two seeds landed on the same fine level
        out.push_back(z);
    }
    out.resize(static_cast<size_t>(std::min<size_t>(out.size(), static_cast<size_t>(count))));
    return out;
}

}  // namespace

std::vector<Complex> grid_diagonalize(const ComplexPoly& v_poly, double domain, int N, int count) {
    if (N < 200) throw InvalidInput("grid: N must be at least 200");
    if (count < 1 || count > N - 1) throw InvalidInput("grid: bad eigenvalue count");
    if (!(domain > 0.0)) throw InvalidInput("grid: domain must be positive");
    const int n = v_poly.degree();
    if (n < 2 || n % 2 != 0 || !(v_poly.coeff(n).real() > 0.0))
        throw InvalidInput("grid: potential must be confining");
    return diagonalize(v_poly, domain, N, count);
}

std::vector<Complex> grid_diagonalize_dense(const ComplexPoly& v_poly, double domain, int N,
                                            int count) {
    if (N < 200) throw InvalidInput("grid: N must be at least 200");
    return dense_eigs(build_matrix(v_poly, domain, N), count);
}

GridEstimate grid_error_estimate(const ComplexPoly& v_poly, double domain, int N, int count) {
    const std::vector<Complex> coarse = grid_diagonalize(v_poly, domain, N, count);
    const std::vector<Complex> fine = grid_diagonalize(v_poly, domain, 2 * N, count);
    GridEstimate est;
    est.eigenvalues = fine;
    est.richardson.resize(fine.size());
    for (size_t i = 0; i < fine.size(); ++i) {
        const Complex ref = (i < coarse.size()) ? coarse[i] : fine[i];
        est.richardson[i] = std::abs(fine[i] - ref) / 3.0;
    }
    return est;
}

}  // namespace qes
