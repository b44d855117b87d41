#include "internal.hpp"
#include "qjackson/logproduct.hpp"

namespace qjackson {

Complex MGParams::beta() const { return 1.0 - sum_of(a) - sum_of(b) - alpha; }

MGParams MGParams::dual_swap() const {
    MGParams d;
    d.a = b;
    d.b = a;
    d.alpha = beta();
    return d;
}

MGParams MGParams::with_alpha(Complex al) const {
    MGParams d = *this;
    d.alpha = al;
    return d;
}

void MGParams::validate() const {
    if (a.empty() || a.size() != b.size()) throw DomainError("MG parameters need n a's and n b's");
    if (!(alpha.real() > 0.0)) throw DomainError("MG convergence needs |q^alpha| < 1");
    if (!(beta().real() > 0.0)) throw DomainError("MG convergence needs |q a^-1 b^-1| < |q^alpha|");
}

std::string MGParams::echo() const {
    return "a=" + echo_vector(a) + ";b=" + echo_vector(b) + ";alpha=" + echo_complex(alpha);
}

WeightForm mg_weight(const MGParams& p) {
    const int n = p.n();
    WeightForm w;
    w.family = Family::MG;
    w.variant = Variant::Primal;
    w.n = n;
    w.add_power(total_coefs(n), p.alpha);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            w.add_poch(unit_coefs(n, i), -p.a[j], 1, 1);
            w.add_poch(unit_coefs(n, i), p.b[j], 0, -1);
        }
    }
    w.poly = PolyKind::Vandermonde;
    return w;
}

WeightForm mg_dual_weight(const MGParams& p) {
    const int n = p.n();
    WeightForm w;
    w.family = Family::MG;
    w.variant = Variant::Dual;
    w.n = n;
    w.add_power(total_coefs(n), p.beta());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            w.add_poch(unit_coefs(n, i), -p.b[j], 1, 1);
            w.add_poch(unit_coefs(n, i), p.a[j], 0, -1);
        }
    }
    w.poly = PolyKind::DualVandermonde;
    return w;
}

WeightForm mg_macdonald_weight(const MGParams& p) {
    const int n = p.n();
    WeightForm w;
    w.family = Family::MG;
    w.variant = Variant::Macdonald;
    w.n = n;
    for (int i = 0; i < n; ++i) {
        std::vector<int> neg(static_cast<std::size_t>(n), 0);
        neg[static_cast<std::size_t>(i)] = -1;
        for (int j = 0; j < n; ++j) {
            w.add_poch(unit_coefs(n, i), -p.a[j], 1, 1);
            w.add_poch(neg, -p.b[j], 1, 1);
        }
    }
    w.add_poch(total_coefs(n, -1), p.beta() + sum_of(p.a), 0, -1);
    w.add_poch(total_coefs(n, 1), p.alpha + sum_of(p.b), 0, -1);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            std::vector<int> c(static_cast<std::size_t>(n), 0);
            c[static_cast<std::size_t>(i)] = 1;
            c[static_cast<std::size_t>(j)] = -1;
            w.add_poch(c, 0.0, 1, -1);
            for (auto& v : c) v = -v;
            w.add_poch(c, 0.0, 1, -1);
        }
    }
    w.poly = PolyKind::One;
    return w;
}

SumResult mg_lhs(const MGParams& p, const ExponentPoint& x, const SumSpec& spec, const QContext& ctx) {
    return sum_with(mg_weight(p), x, spec, ctx);
}

SumResult mg_dual_lhs(const MGParams& p, const ExponentPoint& x, const SumSpec& spec, const QContext& ctx) {
    return sum_with(mg_dual_weight(p), x, spec, ctx);
}

SumResult mg_macdonald_sum(const MGParams& p, const ExponentPoint& x, const SumSpec& spec, const QContext& ctx) {
    return sum_with(mg_macdonald_weight(p), x, spec, ctx);
}

Complex mg_macdonald_integrand(const MGParams& p, std::span<const int> nu, const ExponentPoint& base,
                               const QContext& ctx) {
    std::vector<Complex> zeta = base.xi;
    for (std::size_t i = 0; i < zeta.size(); ++i) zeta[i] += static_cast<double>(nu[i]);
    return mg_macdonald_weight(p).value(zeta, ctx);
}

Complex mg_constant(const MGParams& p, const QContext& ctx) {
    const int n = p.n();
    LogProduct r(ctx);
    r.factor(1.0 - ctx.q, n).poch(1.0, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.poch(1.0 - p.a[i] - p.b[j]);
    r.poch(p.alpha, -1).poch(p.beta(), -1);
    return r.value();
}

Complex mg_regularizer_h(const MGParams& p, const ExponentPoint& x, const QContext& ctx) {
    const int n = p.n();
    LogProduct r(ctx);
    r.qpow(p.alpha * x.exponent_sum());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) r.qpow(x.xi[j]).theta(x.xi[i] - x.xi[j]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.theta(p.b[j] + x.xi[i], -1);
    return r.value();
}

Complex mg_dual_regularizer_hbar(const MGParams& p, const ExponentPoint& x, const QContext& ctx) {
    const int n = p.n();
    LogProduct r(ctx);
    r.qpow(p.beta() * x.exponent_sum());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) r.qpow(x.xi[i]).theta(x.xi[j] - x.xi[i]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.theta(p.a[j] + x.xi[i], -1);
    return r.value();
}

Complex mg_rhs(const MGParams& p, const ExponentPoint& x, const QContext& ctx) {
    const int n = p.n();
    LogProduct r(ctx);
    r.factor(1.0 - ctx.q, n).poch(1.0, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.poch(1.0 - p.a[i] - p.b[j]);
    r.poch(p.alpha, -1).poch(p.beta(), -1);
    r.qpow(p.alpha * x.exponent_sum());
    r.theta(p.alpha + x.exponent_sum() + sum_of(p.b));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.theta(x.xi[i] + p.b[j], -1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) r.qpow(x.xi[j]).theta(x.xi[i] - x.xi[j]);
    return r.value();
}

Complex mg_truncated_rhs(const MGParams& p, const QContext& ctx) {
    const int n = p.n();
    const Complex sa = sum_of(p.a);
    LogProduct r(ctx);
    r.factor(1.0 - ctx.q, n).qpow(p.alpha * sa).poch(1.0, n);
    r.poch(p.alpha + sa + sum_of(p.b)).poch(p.alpha, -1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.poch(p.a[i] + p.b[j], -1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) r.qpow(p.a[j]).theta(p.a[i] - p.a[j]);
    return r.value();
}

Complex mg_dual_truncated_rhs(const MGParams& p, const QContext& ctx) {
    const int n = p.n();
    LogProduct r(ctx);
    r.factor(1.0 - ctx.q, n).qpow(p.beta() * sum_of(p.b)).poch(1.0, n);
    r.poch(1.0 - p.alpha).poch(p.beta(), -1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.poch(p.a[i] + p.b[j], -1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) r.qpow(p.b[i]).theta(p.b[j] - p.b[i]);
    return r.value();
}

Complex mg_connection_coeff(const MGParams& p, const ExponentPoint& x, const ExponentPoint& y,
                            const QContext& ctx) {
    const Complex sb = sum_of(p.b);
    LogProduct r(ctx);
    r.theta(p.alpha + x.exponent_sum() + sb).theta(p.alpha + y.exponent_sum() + sb, -1);
    return r.value();
}

Complex mg_reflective_factor(const MGParams& p, const ExponentPoint& x, const QContext& ctx) {
    const int n = p.n();
    LogProduct r(ctx);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            r.qpow(x.xi[i] * (1.0 - p.a[j] - p.b[j]));
            r.theta(1.0 - p.a[j] + x.xi[i]).theta(p.b[j] + x.xi[i], -1);
        }
    }
    return r.value();
}

Complex mg_alpha_step(const MGParams& p, const QContext& ctx) {
    const Complex sa = sum_of(p.a);
    return (1.0 - q_power(p.alpha + sa + sum_of(p.b), ctx)) / (q_power(sa, ctx) * (1.0 - q_power(p.alpha, ctx)));
}

Complex mg_dual_alpha_step(const MGParams& p, const QContext& ctx) {
    const Complex sa = sum_of(p.a);
    const Complex sb = sum_of(p.b);
    return (1.0 - q_power(1.0 - p.alpha, ctx)) /
           (q_power(sb, ctx) * (1.0 - q_power(1.0 - p.alpha - sa - sb, ctx)));
}

Complex mg_shift_ratio(const MGParams& p, std::span<const Complex> z, int i, const QContext& ctx) {
    Complex r = q_power(p.alpha, ctx);
    for (int j = 0; j < p.n(); ++j)
        r *= (1.0 - q_power(p.b[j], ctx) * z[i]) / (1.0 - ctx.q * z[i] / q_power(p.a[j], ctx));
    return r;
}

}  // namespace qjackson
