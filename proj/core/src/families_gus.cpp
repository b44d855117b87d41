#include "internal.hpp"
#include "qjackson/logproduct.hpp"

namespace qjackson {

Complex GUSParams::exponent_sum() const { return sum_of(a) + sum_of(b); }

GUSParams GUSParams::shift_a(int j, double k) const {
    GUSParams g = *this;
    g.a.at(static_cast<std::size_t>(j)) += k;
    return g;
}

GUSParams GUSParams::shift_b(int j, double k) const {
    GUSParams g = *this;
    g.b.at(static_cast<std::size_t>(j)) += k;
    return g;
}

void GUSParams::validate() const {
    if (a.size() < 2 || a.size() != b.size()) throw DomainError("GUS parameters need n+1 a's and n+1 b's");
    if (!(exponent_sum().real() < 1.0)) throw DomainError("GUS convergence needs q < |a_1...b_{n+1}|");
}

std::string GUSParams::echo() const {
    return "a=" + echo_vector(a) + ";b=" + echo_vector(b) + ";d=" + echo_complex(d);
}

namespace {

// exponent of z_{n+1} = d / (z_1...z_n)
Complex last_exponent(const GUSParams& p, const ExponentPoint& x) { return p.d - x.exponent_sum(); }

void add_pair_denominators(WeightForm& w, int n, Complex d) {
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            std::vector<int> c(static_cast<std::size_t>(n), 0);
            c[static_cast<std::size_t>(i)] = 1;
            c[static_cast<std::size_t>(j)] = -1;
            w.add_poch(c, 0.0, 1, -1);
            for (auto& v : c) v = -v;
            w.add_poch(c, 0.0, 1, -1);
        }
        // zeta_i - zeta_{n+1} = zeta_i + sum zeta - d
        std::vector<int> c = total_coefs(n, 1);
        c[static_cast<std::size_t>(i)] += 1;
        w.add_poch(c, -d, 1, -1);
        for (auto& v : c) v = -v;
        w.add_poch(c, d, 1, -1);
    }
}

}  // namespace

WeightForm gus_weight(const GUSParams& p) {
    const int n = p.n();
    WeightForm w;
    w.family = Family::GUS;
    w.variant = Variant::Primal;
    w.n = n;
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i < n; ++i) {
            w.add_poch(unit_coefs(n, i), -p.a[j], 1, 1);
            w.add_poch(unit_coefs(n, i), p.b[j], 0, -1);
        }
        w.add_poch(total_coefs(n, -1), p.d - p.a[j], 1, 1);
        w.add_poch(total_coefs(n, -1), p.d + p.b[j], 0, -1);
    }
    w.poly = PolyKind::Balanced;
    w.delta = p.d;
    return w;
}

WeightForm gus_tilde_weight(const GUSParams& p) {
    const int n = p.n();
    const Complex e = static_cast<double>(n + 1) - p.exponent_sum();
    WeightForm w;
    w.family = Family::GUS;
    w.variant = Variant::Tilde;
    w.n = n;
    // (z_{n+1}^{-1})^{n+1-sum}, z_{n+1}^{-1} = q^{sum zeta - d}
    w.add_power(total_coefs(n), e);
    w.q_constant = -p.d * e;
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i < n; ++i) {
            w.add_poch(unit_coefs(n, i), -p.a[j], 1, 1);
            w.add_poch(unit_coefs(n, i), p.b[j], 0, -1);
        }
        w.add_poch(total_coefs(n), -p.b[j] - p.d, 1, 1);
        w.add_poch(total_coefs(n), p.a[j] - p.d, 0, -1);
    }
    w.poly = PolyKind::Balanced;
    w.delta = p.d;
    return w;
}

WeightForm gus_macdonald_weight(const GUSParams& p) {
    const int n = p.n();
    WeightForm w;
    w.family = Family::GUS;
    w.variant = Variant::Macdonald;
    w.n = n;
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i < n; ++i) {
            std::vector<int> neg(static_cast<std::size_t>(n), 0);
            neg[static_cast<std::size_t>(i)] = -1;
            w.add_poch(unit_coefs(n, i), -p.a[j], 1, 1);
            w.add_poch(neg, -p.b[j], 1, 1);
        }
        w.add_poch(total_coefs(n, -1), p.d - p.a[j], 1, 1);
        w.add_poch(total_coefs(n, 1), -p.d - p.b[j], 1, 1);
    }
    add_pair_denominators(w, n, p.d);
    w.poly = PolyKind::One;
    return w;
}

WeightForm gus_k0_weight(int n, Complex d) {
    WeightForm w;
    w.family = Family::GUS;
    w.variant = Variant::K0;
    w.n = n;
    add_pair_denominators(w, n, d);
    w.poly = PolyKind::One;
    return w;
}

SumResult gus_lhs(const GUSParams& p, const ExponentPoint& x, const SumSpec& spec, const QContext& ctx) {
    return sum_with(gus_weight(p), x, spec, ctx);
}

SumResult gus_tilde_lhs(const GUSParams& p, const ExponentPoint& x, const SumSpec& spec, const QContext& ctx) {
    return sum_with(gus_tilde_weight(p), x, spec, ctx);
}

SumResult gus_macdonald_k0(const GUSParams& p, const ExponentPoint& x, const SumSpec& spec, const QContext& ctx) {
    return sum_with(gus_k0_weight(p.n(), p.d), x, spec, ctx);
}

Complex gus_regularizer_h(const GUSParams& p, const ExponentPoint& x, const QContext& ctx) {
    const int n = p.n();
    const Complex last = last_exponent(p, x);
    LogProduct r(ctx);
    r.factor(-1.0, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) r.qpow(x.xi[j]).theta(x.xi[i] - x.xi[j]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= n; ++j) r.theta(p.b[j] + x.xi[i], -1);
    for (int i = 0; i < n; ++i) r.qpow(x.xi[i]).theta(last - x.xi[i]);
    for (int j = 0; j <= n; ++j) r.theta(p.b[j] + last, -1);
    return r.value();
}

Complex gus_regularizer_h_symmetric(const GUSParams& p, const ExponentPoint& x, const QContext& ctx) {
    const int n = p.n();
    std::vector<Complex> full = x.xi;
    full.push_back(last_exponent(p, x));
    LogProduct r(ctx);
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) r.qpow(full[j]).theta(full[i] - full[j]);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) r.theta(p.b[j] + full[i], -1);
    return r.value();
}

Complex gus_constant_rhs(const GUSParams& p, const QContext& ctx) {
    const int n = p.n();
    LogProduct r(ctx);
    r.factor(1.0 - ctx.q, n).poch(1.0, n);
    r.poch(1.0 - sum_of(p.a) + p.d).poch(1.0 - sum_of(p.b) - p.d).poch(1.0 - p.exponent_sum(), -1);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) r.poch(1.0 - p.a[i] - p.b[j]);
    return r.value();
}

Complex gus_milne_rhs(const GUSParams& p, const QContext& ctx) {
    const int n = p.n();
    LogProduct r(ctx);
    r.factor(1.0 - ctx.q, n).poch(1.0, n + 1);
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) r.qpow(p.a[j]).theta(p.a[i] - p.a[j]);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) r.poch(p.a[i] + p.b[j], -1);
    return r.value();
}

Complex gus_k_factor(const GUSParams& p, const ExponentPoint& x, const QContext& ctx) {
    const int n = p.n();
    const Complex last = last_exponent(p, x);
    LogProduct r(ctx);
    for (int j = 0; j <= n; ++j) {
        r.qpow(last * (1.0 - p.a[j] - p.b[j]));
        r.theta(1.0 - p.a[j] + last).theta(p.b[j] + last, -1);
    }
    return r.value();
}

Complex gus_k0_value(int n, const QContext& ctx) {
    LogProduct r(ctx);
    r.factor(1.0 - ctx.q, n).poch(1.0, n);
    return r.value();
}

Complex gus_reg_a_step(const GUSParams& p, int j, const QContext& ctx) {
    Complex r = (1.0 - q_power(p.d - sum_of(p.a), ctx)) / (1.0 - q_power(-p.exponent_sum(), ctx));
    for (int i = 0; i <= p.n(); ++i) r *= 1.0 - q_power(-p.b[i] - p.a[j], ctx);
    return r;
}

Complex gus_a_step(const GUSParams& p, int j, const QContext& ctx) { return gus_reg_a_step(p, j, ctx); }

Complex gus_b_step(const GUSParams& p, int j, const QContext& ctx) {
    Complex r = (1.0 - q_power(p.d + sum_of(p.b), ctx)) / (1.0 - q_power(p.exponent_sum(), ctx));
    for (int i = 0; i <= p.n(); ++i) r *= 1.0 - q_power(p.a[i] + p.b[j], ctx);
    return r;
}

Complex gus_reg_b_step(const GUSParams& p, int j, const QContext& ctx) {
    Complex r = (1.0 - q_power(-p.d - sum_of(p.b), ctx)) / (1.0 - q_power(-p.exponent_sum(), ctx));
    for (int i = 0; i <= p.n(); ++i) r *= 1.0 - q_power(-p.a[i] - p.b[j], ctx);
    return r;
}

Complex gus_pair_shift_ratio(const GUSParams& p, std::span<const Complex> z, int i, int j, const QContext& ctx) {
    Complex r = 1.0;
    for (int k = 0; k <= p.n(); ++k) {
        const Complex ak = q_power(p.a[k], ctx);
        const Complex bk = q_power(p.b[k], ctx);
        r *= (1.0 - bk * z[i]) * (1.0 - z[j] / ak);
        r /= (1.0 - ctx.q * z[i] / ak) * (1.0 - bk * z[j] / ctx.q);
    }
    return r;
}

}  // namespace qjackson
