#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qes {

using Complex = std::complex<double>;

// Error hierarchy used across the library. The CLI maps these to exit code 2
// (bad input) unless stated otherwise.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid parameters, malformed polynomials, division by zero, etc.
class InvalidInput : public Error {
public:
    using Error::Error;
};

// An iteration failed to reach its tolerance. Carries the final residual.
class NonConvergence : public Error {
public:
    NonConvergence(const std::string& what, double residual_)
        : Error(what), residual(residual_) {}
    double residual;
};

// Step-halving disagreement exceeded the allowed bound.
class StepTooCoarse : public Error {
public:
    using Error::Error;
};

// A pole landed on (or too close to) the real axis.
class RealAxisPole : public Error {
public:
    using Error::Error;
};

/**
 * Dense polynomial with complex coefficients, stored lowest power first.
 *
 * Canonical form: the leading stored coefficient is nonzero. When a
 * polynomial is built from raw user coefficients, any entry with magnitude
 * below kTruncationRel * (max coefficient magnitude) is snapped to zero;
 * this keeps symmetry classification stable under float noise. Results of
 * arithmetic only trim near-zero *leading* entries (so interior
 * cancellation structure, e.g. in residual polynomials, is preserved).
 *
 * The zero polynomial has an empty coefficient vector and degree() == -1.
 */
class ComplexPoly {
public:
    static constexpr double kTruncationRel = 1e-14;

    ComplexPoly() = default;
    ComplexPoly(std::initializer_list<Complex> coeffs)
        : ComplexPoly(std::vector<Complex>(coeffs)) {}
    explicit ComplexPoly(std::vector<Complex> coeffs);

    // x^power scaled; power >= 0.
    static ComplexPoly monomial(int power, Complex scale = 1.0);
    static ComplexPoly constant(Complex value) { return monomial(0, value); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Complex>& coeffs() const { return c_; }
    // Coefficient of x^k; zero outside the stored range.
    Complex coeff(int k) const;
    double max_abs_coeff() const;

    Complex operator()(Complex x) const;  // Horner evaluation
    ComplexPoly derivative() const;

    ComplexPoly operator-() const;
    ComplexPoly& operator+=(const ComplexPoly& rhs);
    ComplexPoly& operator-=(const ComplexPoly& rhs);

    friend ComplexPoly operator+(ComplexPoly a, const ComplexPoly& b) { return a += b; }
    friend ComplexPoly operator-(ComplexPoly a, const ComplexPoly& b) { return a -= b; }
    friend ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b);
    friend ComplexPoly operator*(Complex s, const ComplexPoly& p);
    friend ComplexPoly operator*(const ComplexPoly& p, Complex s) { return s * p; }
    friend ComplexPoly operator*(double s, const ComplexPoly& p) { return Complex(s) * p; }
    friend ComplexPoly operator*(const ComplexPoly& p, double s) { return Complex(s) * p; }

    bool operator==(const ComplexPoly& rhs) const { return c_ == rhs.c_; }

private:
    std::vector<Complex> c_;

    // Construction path for arithmetic results: trims near-zero leading
    // entries but leaves interior coefficients untouched.
    static ComplexPoly from_raw(std::vector<Complex> coeffs);
    void trim_leading();
    friend ComplexPoly poly_from_raw(std::vector<Complex> coeffs);
};

// Arithmetic-style construction: trims near-zero leading entries, keeps
// interior coefficients exactly. For building results whose small
// coefficients are meaningful (residuals, exact closed forms).
ComplexPoly poly_from_raw(std::vector<Complex> coeffs);

// Largest absolute difference between coefficients (over the union of the
// stored ranges). Convenience for tests and classification.
double max_coeff_distance(const ComplexPoly& a, const ComplexPoly& b);

// Polynomial long division: p = q * d + r with deg(r) < deg(d).
// Throws InvalidInput when d is the zero polynomial.
std::pair<ComplexPoly, ComplexPoly> divmod(const ComplexPoly& p, const ComplexPoly& d);

// p(x + b) expanded in x (Taylor shift, exact binomial arithmetic).
ComplexPoly poly_shift(const ComplexPoly& p, Complex b);

// Coefficient map c_k -> (-1)^k conj(c_k), i.e. p(x) -> conj(p(-conj(x)))
// restricted to the real axis: the image of p under combined reflection and
// conjugation. An involution.
ComplexPoly pt_image(const ComplexPoly& p);

// True when pt_image(p) == p within rel_tol * max|coeff|.
bool pt_symmetric(const ComplexPoly& p, double rel_tol = ComplexPoly::kTruncationRel);

struct RootMult {
    Complex root;
    int multiplicity = 1;
};

/**
 * All complex roots of p with multiplicities.
 *
 * Roots come from the eigenvalues of the monic companion matrix, are
 * polished by Newton iteration on p itself, and are then clustered: roots
 * closer than 1e-8 * max(1, |r|) merge into one root (the cluster centroid)
 * with summed multiplicity. Candidates whose Newton iteration stalls on a
 * nearly vanishing derivative are re-polished against the derivative chain,
 * so exact double roots collapse cleanly instead of straddling the cluster
 * tolerance. Output is sorted by (Re, Im).
 */
std::vector<RootMult> poly_roots(const ComplexPoly& p);

// Closed forms, kept as an independent cross-check of the companion path.
std::vector<Complex> quadratic_roots(Complex a, Complex b, Complex c);
std::vector<Complex> cubic_roots(Complex a, Complex b, Complex c, Complex d);

// One term s / (x - location)^order of a rational function.
struct PoleTerm {
    Complex location;
    Complex strength;
    int order = 1;
};

}  // namespace qes
