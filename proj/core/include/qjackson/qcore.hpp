#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qjackson/errors.hpp"

namespace qjackson {

using Complex = std::complex<double>;

struct QContext {
    double q = 0.5;
    double product_tol = 1e-17;
    int lattice_cutoff = 16;
    bool adaptive = true;  // double the cutoff until the tail gate passes
    double identity_tol = 1e-8;
    std::int64_t max_terms = std::int64_t{1} << 26;
    int workers = 1;

    double log_q() const;
    // throws ConfigError
    void validate() const;
};

// A point of (C*)^n stored by its q-exponents, x_i = q^{xi_i}.
struct ExponentPoint {
    std::vector<Complex> xi;

    ExponentPoint() = default;
    explicit ExponentPoint(std::vector<Complex> e) : xi(std::move(e)) {}

    int n() const { return static_cast<int>(xi.size()); }
    Complex value(int i, const QContext& ctx) const;
    Complex exponent_sum() const;
    ExponentPoint shifted(int i, double k) const;
    ExponentPoint inverse() const;
    ExponentPoint without(int i) const;
};

bool is_finite(Complex z);
Complex require_finite(Complex z, const char* what);

Complex q_power(Complex c, const QContext& ctx);

// log(1 - e^u), principal branch of the inner logarithm; -inf when e^u == 1 exactly
Complex log1m_exp(Complex u);

Complex qpoch_inf(Complex a, const QContext& ctx);
Complex qpoch_n(Complex a, long N, const QContext& ctx);
Complex theta(Complex a, const QContext& ctx);

// Exponent forms: w is the q-exponent of the argument, so (q^w)_inf and theta(q^w).
// A factor 1 - q^{w+k} with w+k == 0 is exactly zero.
Complex log_qpoch_exp(Complex w, const QContext& ctx);
Complex qpoch_exp(Complex w, const QContext& ctx);
Complex log_theta_exp(Complex w, const QContext& ctx);
Complex theta_exp(Complex w, const QContext& ctx);

// number of factors used for (a)_inf
int qpoch_truncation(double abs_a, const QContext& ctx);

// log (q^{w+s})_inf for s = lo..hi, built by downward recurrence from s = hi
std::vector<Complex> log_qpoch_table(Complex w, int lo, int hi, const QContext& ctx);

}  // namespace qjackson
