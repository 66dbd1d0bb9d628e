#pragma once

#include "qes/construct.hpp"
#include "qes/verify.hpp"

namespace qes {

// One grid point of a two-level-family sweep over (b2, Im b3): the closed
// forms are cheap enough to tabulate densely for plots. b3 is taken purely
// imaginary here (the regime where both levels stay real).
struct QuadSweepRow {
    double b2 = 0.0;
    double b3_im = 0.0;
    Complex e_plus{0.0};
    Complex e_minus{0.0};
    bool pt = false;
};

/**
 * Cartesian product of the two axis grids, rows ordered lexicographically
 * by (b2, b3_im). The parallel engine fans out over grid points and writes
 * each row by index, so its output is bit-identical to the serial engine.
 */
std::vector<QuadSweepRow> sweep_quadratic(const std::vector<double>& b2_values,
                                          const std::vector<double>& b3_im_values,
                                          Exec exec = Exec::parallel);

}  // namespace qes
