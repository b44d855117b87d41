#include <cstdint>

#include "internal.hpp"
#include "qjackson/logproduct.hpp"

namespace qjackson {

Complex DAParams::exponent_sum() const { return sum_of(a) + sum_of(b); }

DAParams DAParams::shift_a(int j, double k) const {
    DAParams d = *this;
    d.a.at(static_cast<std::size_t>(j)) += k;
    return d;
}

DAParams DAParams::shift_b(int j, double k) const {
    DAParams d = *this;
    d.b.at(static_cast<std::size_t>(j)) += k;
    return d;
}

void DAParams::validate(bool dual_recurrences) const {
    if (a.size() < 2 || a.size() != b.size()) throw DomainError("DA parameters need n+1 a's and n+1 b's");
    if (!(exponent_sum().real() < 1.0)) throw DomainError("DA convergence needs q < |a_1...b_{n+1}|");
    if (dual_recurrences && !(exponent_sum().real() < 0.0))
        throw DomainError("DA dual recurrences need 1 < |a_1...b_{n+1}|");
}

std::string DAParams::echo() const { return "a=" + echo_vector(a) + ";b=" + echo_vector(b); }

WeightForm da_weight(const DAParams& p) {
    const int n = p.n();
    WeightForm w;
    w.family = Family::DA;
    w.variant = Variant::Primal;
    w.n = n;
    w.add_power(total_coefs(n), 1.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= n; ++j) {
            w.add_poch(unit_coefs(n, i), -p.a[j], 1, 1);
            w.add_poch(unit_coefs(n, i), p.b[j], 0, -1);
        }
    }
    w.poly = PolyKind::Vandermonde;
    return w;
}

WeightForm da_dual_weight(const DAParams& p) {
    const int n = p.n();
    WeightForm w;
    w.family = Family::DA;
    w.variant = Variant::Dual;
    w.n = n;
    w.add_power(total_coefs(n), 1.0 - p.exponent_sum());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= n; ++j) {
            w.add_poch(unit_coefs(n, i), -p.b[j], 1, 1);
            w.add_poch(unit_coefs(n, i), p.a[j], 0, -1);
        }
    }
    w.poly = PolyKind::DualVandermonde;
    return w;
}

SumResult da_lhs(const DAParams& p, const ExponentPoint& x, const SumSpec& spec, const QContext& ctx) {
    return sum_with(da_weight(p), x, spec, ctx);
}

SumResult da_dual_lhs(const DAParams& p, const ExponentPoint& x, const SumSpec& spec, const QContext& ctx) {
    return sum_with(da_dual_weight(p), x, spec, ctx);
}

namespace {

Complex alternating(const DAParams& p, const ExponentPoint& xfull, Cycle cycle, const QContext& ctx,
                    std::int64_t* terms) {
    const int n = p.n();
    if (xfull.n() != n + 1) throw ConfigError("alternating sum needs n+1 coordinates");
    const WeightForm w = da_weight(p);
    const SumSpec spec = default_spec(n, cycle, ctx);
    CompensatedComplexSum acc;
    for (int i = 0; i <= n; ++i) {
        const SumResult r = sum_with(w, xfull.without(i), spec, ctx);
        if (terms) *terms += r.terms;
        acc.add(i % 2 == 0 ? r.value : -r.value);
    }
    return acc.value();
}

}  // namespace

Complex da_alternating_lhs(const DAParams& p, const ExponentPoint& xfull, const QContext& ctx,
                           std::int64_t* terms) {
    return alternating(p, xfull, Cycle::Box, ctx, terms);
}

Complex da_truncated_alternating_lhs(const DAParams& p, const QContext& ctx, std::int64_t* terms) {
    return alternating(p, ExponentPoint(p.a), Cycle::Fan, ctx, terms);
}

Complex da_constant_c0(const DAParams& p, const QContext& ctx) {
    const int n = p.n();
    LogProduct r(ctx);
    r.factor(1.0 - ctx.q, n).poch(1.0, n);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) r.poch(1.0 - p.a[i] - p.b[j]);
    r.poch(1.0 - p.exponent_sum(), -1);
    return r.value();
}

Complex da_alternating_rhs(const DAParams& p, const ExponentPoint& xfull, const QContext& ctx) {
    const int n = p.n();
    LogProduct r(ctx);
    r.log_add(std::log(da_constant_c0(p, ctx)));
    r.theta(xfull.exponent_sum() + sum_of(p.b));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) r.theta(xfull.xi[i] + p.b[j], -1);
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) r.qpow(xfull.xi[j]).theta(xfull.xi[i] - xfull.xi[j]);
    return r.value();
}

Complex da_evans_rhs(const DAParams& p, const QContext& ctx) {
    const int n = p.n();
    LogProduct r(ctx);
    r.factor(1.0 - ctx.q, n).poch(1.0, n).poch(p.exponent_sum());
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) r.poch(p.a[i] + p.b[j], -1);
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) r.qpow(p.a[j]).theta(p.a[i] - p.a[j]);
    return r.value();
}

Complex da_regularizer_h(const DAParams& p, const ExponentPoint& x, const QContext& ctx) {
    const int n = p.n();
    LogProduct r(ctx);
    r.qpow(x.exponent_sum());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) r.qpow(x.xi[j]).theta(x.xi[i] - x.xi[j]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= n; ++j) r.theta(p.b[j] + x.xi[i], -1);
    return r.value();
}

Complex da_dual_regularizer_hbar(const DAParams& p, const ExponentPoint& x, const QContext& ctx) {
    const int n = p.n();
    LogProduct r(ctx);
    r.qpow((1.0 - p.exponent_sum()) * x.exponent_sum());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) r.qpow(x.xi[i]).theta(x.xi[j] - x.xi[i]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= n; ++j) r.theta(p.a[j] + x.xi[i], -1);
    return r.value();
}

Complex da_reflective_factor(const DAParams& p, const ExponentPoint& x, const QContext& ctx) {
    const int n = p.n();
    LogProduct r(ctx);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= n; ++j) {
            r.qpow(x.xi[i] * (1.0 - p.a[j] - p.b[j]));
            r.theta(1.0 - p.a[j] + x.xi[i]).theta(p.b[j] + x.xi[i], -1);
        }
    }
    return r.value();
}

Complex da_dual_truncated_rhs(const DAParams& p, int i, const QContext& ctx) {
    if (i < 0 || i > p.n()) throw ConfigError("index of the removed coordinate out of range");
    return da_constant_c0(p, ctx);
}

ExponentPoint da_b_hat(const DAParams& p, int i) { return ExponentPoint(p.b).without(i); }
ExponentPoint da_a_hat(const DAParams& p, int i) { return ExponentPoint(p.a).without(i); }

Complex da_mg_bridge(const DAParams& p, const QContext& ctx) {
    const int n = p.n();
    LogProduct r(ctx);
    for (int i = 0; i < n; ++i) r.poch(1.0 - p.a[i] - p.b[n]).poch(p.b[i] + p.a[n], -1);
    return r.value();
}

MGParams da_bridge_params(const DAParams& p) {
    const int n = p.n();
    MGParams m;
    m.a.assign(p.a.begin(), p.a.begin() + n);
    m.b.assign(p.b.begin(), p.b.begin() + n);
    m.alpha = p.a[n] + p.b[n];
    return m;
}

Complex da_dual_shift_ratio(const DAParams& p, std::span<const Complex> z, int i, const QContext& ctx) {
    Complex r = q_power(1.0 - p.exponent_sum(), ctx);
    for (int j = 0; j <= p.n(); ++j)
        r *= (1.0 - q_power(p.a[j], ctx) * z[i]) / (1.0 - ctx.q * z[i] / q_power(p.b[j], ctx));
    return r;
}

Complex da_dual_reg_a_step(const DAParams& p, int j, const QContext& ctx) {
    Complex r = 1.0 / (1.0 - q_power(-p.exponent_sum(), ctx));
    for (int i = 0; i <= p.n(); ++i) r *= 1.0 - q_power(-p.a[j] - p.b[i], ctx);
    return r;
}

Complex da_dual_reg_b_step(const DAParams& p, int j, const QContext& ctx) {
    Complex r = 1.0 / (1.0 - q_power(-p.exponent_sum(), ctx));
    for (int i = 0; i <= p.n(); ++i) r *= 1.0 - q_power(-p.a[i] - p.b[j], ctx);
    return r;
}

Complex da_dual_a_step(const DAParams& p, int j, const QContext& ctx) {
    return std::pow(-q_power(p.a[j], ctx), p.n()) * da_dual_reg_a_step(p, j, ctx);
}

Complex da_dual_b_step(const DAParams& p, int j, const QContext& ctx) {
    Complex r = std::pow(-q_power(-p.b[j], ctx), p.n()) / (1.0 - q_power(p.exponent_sum(), ctx));
    for (int i = 0; i <= p.n(); ++i) r *= 1.0 - q_power(p.a[i] + p.b[j], ctx);
    return r;
}

DAParams evans_to_da(const EvansParams& e) {
    if (e.x.size() < 2 || e.x.size() != e.s.size()) throw ConfigError("Evans form needs n+1 endpoints and exponents");
    DAParams p;
    for (std::size_t j = 0; j < e.x.size(); ++j) {
        p.a.push_back(e.x[j]);
        p.b.push_back(e.s[j] - e.x[j]);
    }
    return p;
}

Complex evans_iterated_lhs(const EvansParams& e, const QContext& ctx, std::int64_t* terms) {
    const DAParams p = evans_to_da(e);
    const int n = p.n();
    const WeightForm w = da_weight(p);
    const SumSpec spec = default_spec(n, Cycle::Fan, ctx);
    CompensatedComplexSum acc;
    // each variable runs from x_{j-1} to x_j: pick an endpoint per variable
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<Complex> base(static_cast<std::size_t>(n));
        std::vector<int> used(static_cast<std::size_t>(n + 1), 0);
        bool repeated = false;
        int lower = 0;
        for (int j = 0; j < n; ++j) {
            const bool upper = (mask >> j) & 1u;
            const int k = upper ? j + 1 : j;
            base[static_cast<std::size_t>(j)] = e.x[static_cast<std::size_t>(k)];
            if (used[static_cast<std::size_t>(k)]++) repeated = true;
            if (!upper) ++lower;
        }
        // two variables on the same q-cycle cancel by skew-symmetry
        if (repeated) continue;
        const SumResult r = sum_with(w, ExponentPoint(base), spec, ctx);
        if (terms) *terms += r.terms;
        acc.add(lower % 2 == 0 ? r.value : -r.value);
    }
    return acc.value();
}

Complex evans_iterated_rhs(const EvansParams& e, const QContext& ctx) {
    const int n = e.n();
    Complex ssum = 0.0;
    for (const auto& s : e.s) ssum += s;
    LogProduct r(ctx);
    r.factor(1.0 - ctx.q, n).poch(1.0, n).poch(ssum);
    for (const auto& s : e.s) r.poch(s, -1);
    for (int i = 0; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            r.qpow(e.x[j]).theta(e.x[i] - e.x[j]);
            r.poch(e.x[i] + e.s[j] - e.x[j], -1).poch(e.x[j] + e.s[i] - e.x[i], -1);
        }
    }
    return r.value();
}

}  // namespace qjackson
