#include "qes/verify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>

namespace qes {

namespace {

bool in_window(Complex e, const ScanWindow& w) {
    const double pad = 1e-9;
    return e.real() >= w.re_min - pad && e.real() <= w.re_max + pad &&
           e.imag() >= w.im_min - pad && e.imag() <= w.im_max + pad;
}

std::optional<Complex> try_seed(const ComplexPoly& v, Complex seed, const ShootOptions& opt) {
    try {
        return shoot_eigenvalue(v, seed, opt).energy;
    } catch (const NonConvergence&) {
        return std::nullopt;
    } catch (const StepTooCoarse&) {
        return std::nullopt;
    }
}

}  // namespace

std::vector<Complex> spectrum_scan(const ComplexPoly& v_poly, const ScanWindow& window,
                                   const SpectrumScanOptions& opt) {
    // Validate up front: inside the seed loop every failure is treated as
    // "this seed found nothing", which must never swallow bad input.
    const int n = v_poly.degree();
    if (n < 2 || n % 2 != 0 || !(v_poly.coeff(n).real() > 0.0))
        throw InvalidInput("spectrum_scan: potential must be confining");
    if (opt.seeds_re < 1 || opt.seeds_im < 1)
        throw InvalidInput("spectrum_scan: seed counts must be positive");
    if (!(window.re_max >= window.re_min) || !(window.im_max >= window.im_min))
        throw InvalidInput("spectrum_scan: empty window rectangle");

    const int total = opt.seeds_re * opt.seeds_im;
    std::vector<std::optional<Complex>> found(static_cast<size_t>(total));
    const auto seed_at = [&](int idx) {
        const int i = idx / opt.seeds_im;
        const int j = idx % opt.seeds_im;
        const double fr = (opt.seeds_re == 1) ? 0.5
                                              : static_cast<double>(i) /
                                                    static_cast<double>(opt.seeds_re - 1);
        const double fi = (opt.seeds_im == 1) ? 0.5
                                              : static_cast<double>(j) /
                                                    static_cast<double>(opt.seeds_im - 1);
        return Complex(window.re_min + fr * (window.re_max - window.re_min),
                       window.im_min + fi * (window.im_max - window.im_min));
    };

    if (opt.exec == Exec::parallel) {
        std::exception_ptr bad;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (int idx = 0; idx < total; ++idx) {
            try {
                found[static_cast<size_t>(idx)] = try_seed(v_poly, seed_at(idx), opt.shoot);
            } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
                if (!bad) bad = std::current_exception();
            }
        }
        if (bad) std::rethrow_exception(bad);
    } else {
        for (int idx = 0; idx < total; ++idx)
            found[static_cast<size_t>(idx)] = try_seed(v_poly, seed_at(idx), opt.shoot);
    }

    std::vector<Complex> levels;
    for (const auto& e : found)
        if (e && in_window(*e, window)) levels.push_back(*e);
    std::sort(levels.begin(), levels.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    std::vector<Complex> out;
    for (const Complex& e : levels) {
        bool dup = false;
        for (const Complex& kept : out)
            if (std::abs(e - kept) <= opt.dedup_tol) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(e);
    }
    return out;
}

}  // namespace qes
