#include "qes/sweep.hpp"

#include <cmath>
#include <exception>

namespace qes {

namespace {

QuadSweepRow sweep_point(double b2, double b3_im) {
    const QESSolution sol = construct_quadratic(b2, Complex(0.0, b3_im));
    QuadSweepRow row;
    row.b2 = b2;
    row.b3_im = b3_im;
    row.e_plus = sol.eigenpairs[0].energy;
    row.e_minus = sol.eigenpairs[1].energy;
    row.pt = sol.symmetry.potential_pt;
    return row;
}

}  // namespace

std::vector<QuadSweepRow> sweep_quadratic(const std::vector<double>& b2_values,
                                          const std::vector<double>& b3_im_values,
                                          Exec exec) {
    for (double v : b2_values)
        if (!std::isfinite(v)) throw InvalidInput("sweep: b2 grid value is not finite");
    for (double v : b3_im_values)
        if (!std::isfinite(v)) throw InvalidInput("sweep: b3 grid value is not finite");

    const int ni = static_cast<int>(b2_values.size());
    const int nj = static_cast<int>(b3_im_values.size());
    std::vector<QuadSweepRow> rows(static_cast<size_t>(ni) * static_cast<size_t>(nj));

    if (exec == Exec::parallel) {
        std::exception_ptr bad;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (int idx = 0; idx < ni * nj; ++idx) {
            try {
                rows[static_cast<size_t>(idx)] =
                    sweep_point(b2_values[static_cast<size_t>(idx / nj)],
                                b3_im_values[static_cast<size_t>(idx % nj)]);
            } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
                if (!bad) bad = std::current_exception();
            }
        }
        if (bad) std::rethrow_exception(bad);
    } else {
        for (int idx = 0; idx < ni * nj; ++idx)
            rows[static_cast<size_t>(idx)] =
                sweep_point(b2_values[static_cast<size_t>(idx / nj)],
                            b3_im_values[static_cast<size_t>(idx % nj)]);
    }
    return rows;
}

}  // namespace qes
