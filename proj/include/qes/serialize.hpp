#pragma once

#include "qes/construct.hpp"
#include "qes/susy.hpp"
#include "qes/verify.hpp"

#include <json.hpp>

#include <string>

namespace qes {

/**
 * JSON mapping used by the CLI and the file formats. Complex numbers are
 * always a two-element array [re, im]; polynomials are coefficient lists,
 * lowest power first. Every top-level document carries "schema": "qes/1"
 * and readers reject anything else. Numbers are emitted in the shortest
 * form that parses back to the identical double, so write-then-read is
 * bit-exact.
 */

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);

nlohmann::json poly_to_json(const ComplexPoly& p);
ComplexPoly poly_from_json(const nlohmann::json& j);

nlohmann::json solution_to_json(const QESSolution& sol);
// Throws InvalidInput on schema/shape violations. Values (energies,
// coefficients) are taken verbatim so that checks downstream, not the
// parser, decide whether they are consistent.
QESSolution solution_from_json(const nlohmann::json& j);

nlohmann::json rational_to_json(const RationalPotential& u);
RationalPotential rational_from_json(const nlohmann::json& j);

nlohmann::json scatter_to_json(const ScatterResult& r);

// Report of `verify` over one solution: the residual gate always runs;
// shooting/grid/scattering sections appear when requested and applicable.
struct ShootCheck {
    Complex energy{0.0};
    double mismatch = 0.0;
    double deviation = 0.0;  // |numeric - analytic|
};

struct GridCheck {
    std::vector<Complex> eigenvalues;
    std::vector<double> richardson;
    double deviation = 0.0;  // distance from the analytic level to the set
};

struct VerificationReport {
    std::string instance;
    double residual_max = 0.0;
    std::vector<ShootCheck> shooting;  // one per eigenpair when run
    std::optional<GridCheck> grid;
    std::vector<ScatterResult> scatter;
    bool passed = false;
};

nlohmann::json report_to_json(const VerificationReport& rep);

}  // namespace qes
