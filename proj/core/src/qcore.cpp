#include "qjackson/qcore.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace qjackson {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kMaxFactors = 1 << 20;

}  // namespace

double QContext::log_q() const { return std::log(q); }

void QContext::validate() const {
    if (!(q > 0.0 && q < 1.0)) throw ConfigError("q must lie in (0,1)");
    if (!(product_tol > 0.0)) throw ConfigError("product_tol must be positive");
    if (!(identity_tol > 0.0)) throw ConfigError("identity_tol must be positive");
    if (!(product_tol < identity_tol)) throw ConfigError("product_tol must be below identity_tol");
    if (lattice_cutoff < 1) throw ConfigError("lattice_cutoff must be a positive integer");
    if (max_terms < 1) throw ConfigError("max_terms must be positive");
    if (workers < 1) throw ConfigError("workers must be at least 1");
}

Complex ExponentPoint::value(int i, const QContext& ctx) const { return q_power(xi.at(i), ctx); }

Complex ExponentPoint::exponent_sum() const {
    Complex s = 0.0;
    for (const auto& e : xi) s += e;
    return s;
}

ExponentPoint ExponentPoint::shifted(int i, double k) const {
    ExponentPoint p = *this;
    p.xi.at(i) += k;
    return p;
}

ExponentPoint ExponentPoint::inverse() const {
    ExponentPoint p = *this;
    for (auto& e : p.xi) e = -e;
    return p;
}

ExponentPoint ExponentPoint::without(int i) const {
    ExponentPoint p;
    for (int k = 0; k < n(); ++k)
        if (k != i) p.xi.push_back(xi[k]);
    return p;
}

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Complex require_finite(Complex z, const char* what) {
    if (!is_finite(z)) throw NonFinite(std::string("non-finite value in ") + what);
    return z;
}

Complex q_power(Complex c, const QContext& ctx) { return std::exp(c * ctx.log_q()); }

Complex log1m_exp(Complex u) {
    if (u == Complex(0.0, 0.0)) return {kNegInf, 0.0};
    const double x = u.real();
    const double y = u.imag();
    if (x > 0.7) {
        // |e^u| > 2: factor out -e^u so nothing overflows
        return u + Complex(0.0, std::numbers::pi) + log1m_exp(-u);
    }
    const Complex t = std::exp(u);
    if (std::abs(t) < 0.5) {
        const double re = 0.5 * std::log1p(-2.0 * t.real() + std::norm(t));
        const double im = std::atan2(-t.imag(), 1.0 - t.real());
        return {re, im};
    }
    // 1 - e^u = -expm1(u), evaluated without cancellation near u = 0
    const double s = std::sin(0.5 * y);
    const double em1_re = std::expm1(x) * std::cos(y) - 2.0 * s * s;
    const double em1_im = std::exp(x) * std::sin(y);
    const Complex m(-em1_re, -em1_im);
    if (m == Complex(0.0, 0.0)) return {kNegInf, 0.0};
    return std::log(m);
}

int qpoch_truncation(double abs_a, const QContext& ctx) {
    if (abs_a == 0.0) return 0;
    // tail |log prod_{i>K}(1 - q^i a)| <= 2|a| q^{K+1}/(1-q) once |a| q^{K+1} <= 1/2
    const double lq = ctx.log_q();
    const double need = std::log(ctx.product_tol * (1.0 - ctx.q) / (2.0 * abs_a)) / lq;
    const double half = std::log(0.5 / abs_a) / lq;
    double k1 = std::ceil(std::max(need, half));
    if (k1 < 1.0) k1 = 1.0;
    if (k1 > kMaxFactors) throw Overflow("infinite product needs too many factors");
    return static_cast<int>(k1) - 1;
}

Complex qpoch_inf(Complex a, const QContext& ctx) {
    const int K = qpoch_truncation(std::abs(a), ctx);
    Complex p = 1.0;
    Complex t = a;
    for (int i = 0; i <= K; ++i) {
        p *= (1.0 - t);
        t *= ctx.q;
    }
    if (!is_finite(p)) throw Overflow("qpoch_inf overflow");
    return p;
}

Complex qpoch_n(Complex a, long N, const QContext& ctx) {
    Complex p = 1.0;
    if (N >= 0) {
        Complex t = a;
        for (long i = 0; i < N; ++i) {
            p *= (1.0 - t);
            t *= ctx.q;
        }
        return p;
    }
    for (long i = 1; i <= -N; ++i) {
        const Complex f = 1.0 - a * std::pow(ctx.q, -static_cast<double>(i));
        if (f == Complex(0.0, 0.0)) throw DivisionByZero("qpoch_n: vanishing factor for negative N");
        p *= f;
    }
    return 1.0 / p;
}

Complex theta(Complex a, const QContext& ctx) {
    if (a == Complex(0.0, 0.0)) throw DomainError("theta(0) is undefined");
    return qpoch_inf(a, ctx) * qpoch_inf(ctx.q / a, ctx);
}

Complex log_qpoch_exp(Complex w, const QContext& ctx) {
    const double lq = ctx.log_q();
    const int K = qpoch_truncation(std::exp(w.real() * lq), ctx);
    Complex s = 0.0;
    for (int k = 0; k <= K; ++k) {
        const Complex f = log1m_exp((w + static_cast<double>(k)) * lq);
        if (f.real() == kNegInf) return {kNegInf, 0.0};
        s += f;
    }
    return s;
}

Complex qpoch_exp(Complex w, const QContext& ctx) { return std::exp(log_qpoch_exp(w, ctx)); }

Complex log_theta_exp(Complex w, const QContext& ctx) {
    return log_qpoch_exp(w, ctx) + log_qpoch_exp(1.0 - w, ctx);
}

Complex theta_exp(Complex w, const QContext& ctx) { return std::exp(log_theta_exp(w, ctx)); }

std::vector<Complex> log_qpoch_table(Complex w, int lo, int hi, const QContext& ctx) {
    std::vector<Complex> t(static_cast<std::size_t>(hi - lo + 1));
    const double lq = ctx.log_q();
    t.back() = log_qpoch_exp(w + static_cast<double>(hi), ctx);
    for (int s = hi - 1; s >= lo; --s) {
        const Complex prev = t[static_cast<std::size_t>(s + 1 - lo)];
        const Complex f = log1m_exp((w + static_cast<double>(s)) * lq);
        t[static_cast<std::size_t>(s - lo)] =
            (f.real() == kNegInf || prev.real() == kNegInf) ? Complex(kNegInf, 0.0) : f + prev;
    }
    return t;
}

}  // namespace qjackson
