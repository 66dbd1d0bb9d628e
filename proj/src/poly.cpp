#include "qes/poly.hpp"

#include <algorithm>
#include <cmath>

namespace qes {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double max_mag(const std::vector<Complex>& c) {
    double m = 0.0;
    for (const auto& z : c) m = std::max(m, std::abs(z));
    return m;
}

}  // namespace

ComplexPoly::ComplexPoly(std::vector<Complex> coeffs) {
    for (const auto& z : coeffs)
        if (!finite(z)) throw InvalidInput("polynomial coefficient is not finite");
    const double cutoff = kTruncationRel * max_mag(coeffs);
    for (auto& z : coeffs)
        if (std::abs(z) < cutoff) z = 0.0;
    c_ = std::move(coeffs);
    trim_leading();
}

ComplexPoly ComplexPoly::from_raw(std::vector<Complex> coeffs) {
    ComplexPoly p;
    p.c_ = std::move(coeffs);
    p.trim_leading();
    return p;
}

ComplexPoly poly_from_raw(std::vector<Complex> coeffs) {
    return ComplexPoly::from_raw(std::move(coeffs));
}

void ComplexPoly::trim_leading() {
    const double cutoff = kTruncationRel * max_mag(c_);
    while (!c_.empty() && std::abs(c_.back()) <= cutoff) c_.pop_back();
}

ComplexPoly ComplexPoly::monomial(int power, Complex scale) {
    if (power < 0) throw InvalidInput("monomial power must be >= 0");
    std::vector<Complex> c(static_cast<size_t>(power) + 1, 0.0);
    c.back() = scale;
    return from_raw(std::move(c));
}

Complex ComplexPoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return 0.0;
    return c_[static_cast<size_t>(k)];
}

double ComplexPoly::max_abs_coeff() const { return max_mag(c_); }

Complex ComplexPoly::operator()(Complex x) const {
    Complex acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

ComplexPoly ComplexPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Complex> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
    return from_raw(std::move(d));
}

ComplexPoly ComplexPoly::operator-() const {
    std::vector<Complex> c(c_);
    for (auto& z : c) z = -z;
    return from_raw(std::move(c));
}

ComplexPoly& ComplexPoly::operator+=(const ComplexPoly& rhs) {
    if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), 0.0);
    for (size_t k = 0; k < rhs.c_.size(); ++k) c_[k] += rhs.c_[k];
    trim_leading();
    return *this;
}

ComplexPoly& ComplexPoly::operator-=(const ComplexPoly& rhs) {
    if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), 0.0);
    for (size_t k = 0; k < rhs.c_.size(); ++k) c_[k] -= rhs.c_[k];
    trim_leading();
    return *this;
}

ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Complex> c(a.c_.size() + b.c_.size() - 1, 0.0);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return ComplexPoly::from_raw(std::move(c));
}

ComplexPoly operator*(Complex s, const ComplexPoly& p) {
    std::vector<Complex> c(p.c_);
    for (auto& z : c) z *= s;
    return ComplexPoly::from_raw(std::move(c));
}

double max_coeff_distance(const ComplexPoly& a, const ComplexPoly& b) {
    const int top = std::max(a.degree(), b.degree());
    double m = 0.0;
    for (int k = 0; k <= top; ++k) m = std::max(m, std::abs(a.coeff(k) - b.coeff(k)));
    return m;
}

std::pair<ComplexPoly, ComplexPoly> divmod(const ComplexPoly& p, const ComplexPoly& d) {
    if (d.is_zero()) throw InvalidInput("polynomial division by zero");
    if (p.degree() < d.degree()) return {ComplexPoly{}, p};

    std::vector<Complex> rem(p.coeffs());
    const int dn = d.degree();
    const Complex lead = d.coeff(dn);
    std::vector<Complex> quot(static_cast<size_t>(p.degree() - dn) + 1, 0.0);
    for (int k = p.degree(); k >= dn; --k) {
        const Complex q = rem[static_cast<size_t>(k)] / lead;
        quot[static_cast<size_t>(k - dn)] = q;
        if (q == Complex(0.0)) continue;
        for (int j = 0; j <= dn; ++j)
            rem[static_cast<size_t>(k - dn + j)] -= q * d.coeff(j);
        rem[static_cast<size_t>(k)] = 0.0;  // eliminated exactly
    }
    rem.resize(static_cast<size_t>(std::max(dn, 0)));
    return {poly_from_raw(std::move(quot)), poly_from_raw(std::move(rem))};
}

ComplexPoly poly_shift(const ComplexPoly& p, Complex b) {
    if (p.is_zero()) return {};
    // Horner on (x + b): acc <- acc*(x+b) + c_k, highest coefficient first.
    std::vector<Complex> acc{p.coeff(p.degree())};
    for (int k = p.degree() - 1; k >= 0; --k) {
        std::vector<Complex> next(acc.size() + 1, 0.0);
        for (size_t j = 0; j < acc.size(); ++j) {
            next[j + 1] += acc[j];
            next[j] += b * acc[j];
        }
        next[0] += p.coeff(k);
        acc = std::move(next);
    }
    return poly_from_raw(std::move(acc));
}

ComplexPoly pt_image(const ComplexPoly& p) {
    std::vector<Complex> c(p.coeffs());
    for (size_t k = 0; k < c.size(); ++k) {
        c[k] = std::conj(c[k]);
        if (k % 2 == 1) c[k] = -c[k];
    }
    return poly_from_raw(std::move(c));
}

bool pt_symmetric(const ComplexPoly& p, double rel_tol) {
    return max_coeff_distance(pt_image(p), p) <= rel_tol * p.max_abs_coeff();
}

}  // namespace qes
