#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>

#include "internal.hpp"
#include "qjackson/logproduct.hpp"
#include "qjackson/verify.hpp"

namespace qjackson {

namespace {

CheckReport compare(Complex lhs, Complex rhs, double tol, std::string echo, std::int64_t terms,
                    double scale = 0.0) {
    CheckReport r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.tol = tol;
    r.params_echo = std::move(echo);
    r.terms = terms;
    finish_report(r, scale);
    return r;
}

QContext with_tol(const QContext& ctx, double tol) {
    QContext c = ctx;
    c.identity_tol = std::min(ctx.identity_tol, tol);
    return c;
}

SumResult box(const WeightForm& w, const ExponentPoint& x, const QContext& ctx) {
    return sum_weight(w, x, Cycle::Box, ctx);
}

SumResult fan(const WeightForm& w, const ExponentPoint& x, const QContext& ctx) {
    return sum_weight(w, x, Cycle::Fan, ctx);
}

std::vector<Complex> values(const std::vector<Complex>& e, const QContext& ctx) {
    std::vector<Complex> v;
    for (const auto& x : e) v.push_back(q_power(x, ctx));
    return v;
}

std::string point_echo(const ExponentPoint& x) { return "x=" + echo_vector(x.xi); }

double sign_pow(int k) { return k % 2 ? -1.0 : 1.0; }

}  // namespace

// ---- polynomial lemmas ----

CheckReport check_poly_expansion_mg(const MGParams& p, std::span<const Complex> z, const QContext& ctx, double tol) {
    double size = 0.0;
    const Complex lhs = mg_anabla_phi(p, z, ctx, &size);
    return compare(lhs, mg_anabla_expansion(p, z, ctx), tol, p.echo() + ";z=" + echo_vector({z.begin(), z.end()}), 0,
                   size);
}

CheckReport check_poly_expansion_da(const DAParams& p, std::span<const Complex> z, const QContext& ctx, double tol) {
    double size = 0.0;
    const Complex lhs = da_anabla_phi(p, z, ctx, &size);
    return compare(lhs, da_anabla_expansion(p, z, ctx), tol, p.echo() + ";z=" + echo_vector({z.begin(), z.end()}), 0,
                   size);
}

CheckReport check_poly_expansion_gus(const GUSParams& p, std::span<const Complex> z, const QContext& ctx, double tol) {
    if (static_cast<int>(z.size()) != p.n() + 1) throw ConfigError("GUS expansion needs n+1 coordinates");
    double size = 0.0;
    const Complex lhs = gus_anabla_phi(p, z, ctx, &size);
    return compare(lhs, gus_anabla_expansion(p, z, true, ctx), tol, p.echo() + ";z=" + echo_vector({z.begin(), z.end()}),
                   0, size);
}

// ---- nabla vanishing ----

CheckReport check_nabla_vanishing(const FamilyParams& fp, const ExponentPoint& x, const QContext& ctx, double tol,
                                  Cycle cycle) {
    const QContext c = with_tol(ctx, tol);
    WeightForm w;
    std::string echo;
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            echo = p.echo();
            if constexpr (std::is_same_v<T, MGParams>) {
                w = mg_weight(p);
                w.custom_poly = [p, c](std::span<const Complex> z) { return mg_anabla_phi(p, z, c); };
            } else if constexpr (std::is_same_v<T, DAParams>) {
                w = da_dual_weight(p);
                w.custom_poly = [p, c](std::span<const Complex> z) { return da_anabla_phi(p, z, c); };
            } else {
                w = gus_weight(p);
                w.custom_poly = [p, c](std::span<const Complex> z) { return gus_anabla_phi(p, z, c); };
            }
        },
        fp);
    const SumSpec spec = default_spec(w.n, cycle, c);
    const SumResult s = jackson_sum(make_integrand(w, x, c), spec, c);

    WeightForm plain = w;
    plain.custom_poly = nullptr;
    LatticeFunction f = make_integrand(plain, x, c);
    LatticeFunction absf{f.prepare, [f](std::span<const int> nu) { return Complex(std::abs(f.eval(nu)), 0.0); }};
    const SumResult scale = jackson_sum(absf, spec, c);
    return compare(s.value, 0.0, tol, echo + ";" + point_echo(x), s.terms + scale.terms, scale.value.real());
}

// ---- recurrences ----

CheckReport check_recurrence_mg(const MGParams& p, const ExponentPoint& x, const QContext& ctx, double tol) {
    const QContext c = with_tol(ctx, tol);
    const SumResult l = box(mg_weight(p), x, c);
    const SumResult r = box(mg_weight(p.with_alpha(p.alpha + 1.0)), x, c);
    return compare(l.value, mg_alpha_step(p, c) * r.value, tol, p.echo() + ";" + point_echo(x), l.terms + r.terms);
}

CheckReport check_recurrence_mg_dual(const MGParams& p, const ExponentPoint& x, const QContext& ctx, double tol) {
    const QContext c = with_tol(ctx, tol);
    const SumResult l = box(mg_dual_weight(p), x, c);
    const SumResult r = box(mg_dual_weight(p.with_alpha(p.alpha - 1.0)), x, c);
    return compare(l.value, mg_dual_alpha_step(p, c) * r.value, tol, p.echo() + ";" + point_echo(x),
                   l.terms + r.terms);
}

CheckReport check_recurrence_da(const DAParams& p, int i, ShiftTarget t, int j, bool regularized,
                                const QContext& ctx, double tol) {
    const QContext c = with_tol(ctx, tol);
    const DAParams s = t == ShiftTarget::A ? p.shift_a(j, 1.0) : p.shift_b(j, 1.0);
    const ExponentPoint x = da_b_hat(p, i);
    const ExponentPoint xs = da_b_hat(s, i);
    const SumResult l = fan(da_dual_weight(s), xs, c);
    const SumResult r = fan(da_dual_weight(p), x, c);
    Complex lhs = l.value;
    Complex rhs = r.value;
    if (regularized) {
        lhs /= da_dual_regularizer_hbar(s, xs, c);
        rhs /= da_dual_regularizer_hbar(p, x, c);
        rhs *= t == ShiftTarget::A ? da_dual_reg_a_step(p, j, c) : da_dual_reg_b_step(p, j, c);
    } else {
        rhs *= t == ShiftTarget::A ? da_dual_a_step(p, j, c) : da_dual_b_step(p, j, c);
    }
    const std::string echo = p.echo() + ";i=" + std::to_string(i + 1) + ";shift=" +
                             (t == ShiftTarget::A ? "a" : "b") + std::to_string(j + 1);
    return compare(lhs, rhs, tol, echo, l.terms + r.terms);
}

CheckReport check_recurrence_gus(const GUSParams& p, const ExponentPoint& x, ShiftTarget t, int j,
                                 bool regularized, const QContext& ctx, double tol) {
    const QContext c = with_tol(ctx, tol);
    const GUSParams s = t == ShiftTarget::A ? p.shift_a(j, 1.0) : p.shift_b(j, 1.0);
    const SumResult l = box(gus_weight(s), x, c);
    const SumResult r = box(gus_weight(p), x, c);
    Complex lhs = l.value;
    Complex rhs = r.value;
    if (regularized) {
        lhs /= gus_regularizer_h(s, x, c);
        rhs /= gus_regularizer_h(p, x, c);
        rhs *= t == ShiftTarget::A ? gus_reg_a_step(p, j, c) : gus_reg_b_step(p, j, c);
    } else {
        rhs *= t == ShiftTarget::A ? gus_a_step(p, j, c) : gus_b_step(p, j, c);
    }
    const std::string echo = p.echo() + ";" + point_echo(x) + ";shift=" + (t == ShiftTarget::A ? "a" : "b") +
                             std::to_string(j + 1);
    return compare(lhs, rhs, tol, echo, l.terms + r.terms);
}

// ---- asymptotics ----

const char* direction_name(AsymptoticDirection d) {
    switch (d) {
        case AsymptoticDirection::MGAlphaUp: return "mg-alpha-up";
        case AsymptoticDirection::MGAlphaDown: return "mg-alpha-down";
        case AsymptoticDirection::DASpecial: return "da-special";
        case AsymptoticDirection::GUSSpecial: return "gus-special";
    }
    return "?";
}

Complex asymptotic_ratio(const FamilyParams& fp, AsymptoticDirection dir, int N, const QContext& ctx,
                         std::int64_t* terms) {
    const double dN = N;
    WeightForm w;
    ExponentPoint base;
    LogProduct lead(ctx);
    switch (dir) {
        case AsymptoticDirection::MGAlphaUp:
        case AsymptoticDirection::MGAlphaDown: {
            const auto& p0 = std::get<MGParams>(fp);
            const int n = p0.n();
            const bool up = dir == AsymptoticDirection::MGAlphaUp;
            const MGParams p = p0.with_alpha(p0.alpha + (up ? dN : -dN));
            const auto& x = up ? p.a : p.b;
            const auto& y = up ? p.b : p.a;
            w = up ? mg_weight(p) : mg_dual_weight(p);
            base = ExponentPoint(x);
            lead.qpow((up ? p.alpha : p.beta()) * sum_of(x));
            lead.factor((up ? 1.0 : sign_pow(n * (n - 1) / 2)) * vandermonde(values(x, ctx)));
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    lead.poch(1.0 + x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)]);
                    lead.poch(x[static_cast<std::size_t>(i)] + y[static_cast<std::size_t>(j)], -1);
                }
            }
            break;
        }
        case AsymptoticDirection::DASpecial: {
            DAParams p = std::get<DAParams>(fp);
            const int n = p.n();
            for (auto& a : p.a) a -= n * dN;
            for (int j = 0; j < n; ++j) p.b[static_cast<std::size_t>(j)] += (n + 1) * dN;
            p.b[static_cast<std::size_t>(n)] -= n * dN;
            w = da_dual_weight(p);
            base = da_b_hat(p, n);
            const auto& b = base.xi;
            lead.qpow(base.exponent_sum() * (1.0 - p.exponent_sum())).poch(1.0, n);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    lead.qpow(b[static_cast<std::size_t>(i)]).theta(b[static_cast<std::size_t>(j)] - b[static_cast<std::size_t>(i)]);
            break;
        }
        case AsymptoticDirection::GUSSpecial: {
            GUSParams p = std::get<GUSParams>(fp);
            const int n = p.n();
            for (auto& b : p.b) b -= n * dN;
            for (int j = 0; j < n; ++j) p.a[static_cast<std::size_t>(j)] += (n + 1) * dN;
            p.a[static_cast<std::size_t>(n)] -= n * dN;
            w = gus_tilde_weight(p);
            base = ExponentPoint(std::vector<Complex>(p.a.begin(), p.a.begin() + n));
            const auto& a = base.xi;
            lead.qpow((base.exponent_sum() - p.d) * (1.0 - p.exponent_sum())).poch(1.0, n);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    lead.qpow(a[static_cast<std::size_t>(j)]).theta(a[static_cast<std::size_t>(i)] - a[static_cast<std::size_t>(j)]);
            break;
        }
    }
    lead.factor(1.0 - ctx.q, std::visit([](const auto& v) { return v.n(); }, fp));
    if (lead.is_zero()) throw NonFinite("leading term vanishes");
    // summands are normalized by the leading term so they stay O(1) for large N
    w.log_constant -= lead.log_value();
    const SumResult s = fan(w, base, ctx);
    if (terms) *terms += s.terms;
    return s.value;
}

CheckReport check_asymptotic(const FamilyParams& fp, AsymptoticDirection dir, const std::vector<int>& N_list,
                             const QContext& ctx, double tol) {
    if (N_list.empty()) throw ConfigError("asymptotic check needs at least one N");
    std::int64_t terms = 0;
    std::vector<double> devs;
    Complex last = 0.0;
    for (int N : N_list) {
        last = asymptotic_ratio(fp, dir, N, ctx, &terms);
        devs.push_back(std::abs(last - 1.0));
    }
    bool decreasing = true;
    for (std::size_t k = 1; k < devs.size(); ++k) decreasing = decreasing && devs[k] < devs[k - 1];

    std::string echo = std::visit([](const auto& p) { return p.echo(); }, fp);
    echo += std::string(";direction=") + direction_name(dir) + ";N=[";
    for (std::size_t k = 0; k < N_list.size(); ++k) echo += (k ? "," : "") + std::to_string(N_list[k]);
    echo += "];dev=[";
    for (std::size_t k = 0; k < devs.size(); ++k) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", devs[k]);
        echo += (k ? "," : "") + std::string(buf);
    }
    echo += "]";
    CheckReport r = compare(last, 1.0, tol, echo, terms);
    if (!decreasing) {
        r.passed = false;
        r.status = CheckStatus::Fail;
    }
    return r;
}

// ---- registry ----

namespace {

enum class TolKind { Lattice, Recurrence, Algebra, Asymptotic, TailBound };

struct Env {
    int n = 0;
    std::uint64_t seed = 0;
    QContext ctx;
    double tol = 0.0;
    mutable std::string echo;  // parameters drawn so far, kept for failure reports

    // independent streams for parameters, points and choices
    std::uint64_t sub(std::uint64_t k) const { return seed * 0x9e3779b97f4a7c15ULL + k * 0xda942042e4dd58b5ULL + 1; }
    int choose(int count, std::uint64_t k) const {
        std::uint64_t z = sub(k + 101);
        z = (z ^ (z >> 31)) * 0xbf58476d1ce4e5b9ULL;
        return static_cast<int>((z >> 33) % static_cast<std::uint64_t>(count));
    }
};

using Runner = std::function<CheckReport(const Env&)>;

struct Entry {
    CheckInfo info;
    TolKind tol;
    Runner run;
};

template <class P>
P drawn(const Env& e, Family f, SampleRegion r = SampleRegion::Standard) {
    auto p = std::get<P>(sample_params(f, e.n, e.sub(1), e.ctx, r));
    e.echo = p.echo();
    return p;
}
MGParams mg_params(const Env& e, SampleRegion r = SampleRegion::Standard) { return drawn<MGParams>(e, Family::MG, r); }
DAParams da_params(const Env& e) { return drawn<DAParams>(e, Family::DA); }
GUSParams gus_params(const Env& e) { return drawn<GUSParams>(e, Family::GUS); }

// the same bilateral sum at two related base points, compared within 10x the tail estimates
CheckReport tail_bound_compare(const SumResult& l, const SumResult& r, Complex sign, std::string echo) {
    const double mag = std::max(std::abs(l.value), std::numeric_limits<double>::min());
    const double tol = std::max(10.0 * (l.tail_estimate + r.tail_estimate) / mag,
                                64.0 * std::numeric_limits<double>::epsilon());
    return compare(l.value, sign * r.value, tol, std::move(echo), l.terms + r.terms);
}

ExponentPoint swapped(const ExponentPoint& x) {
    ExponentPoint s = x;
    std::swap(s.xi[0], s.xi[1]);
    return s;
}

// Jbar regularized at the given point, by the cycle that fits the point
Complex da_dual_regularized(const DAParams& p, const ExponentPoint& y, Cycle cycle, const QContext& ctx,
                            std::int64_t& terms) {
    const SumResult s = sum_weight(da_dual_weight(p), y, cycle, ctx);
    terms += s.terms;
    return s.value / da_dual_regularizer_hbar(p, y, ctx);
}

// sum over k of the regularized dual integral at x-hat_k^{-1} with its theta coefficient
Complex da_c0_sum(const DAParams& p, const ExponentPoint& xfull, const QContext& ctx, std::int64_t& terms) {
    const int n = p.n();
    const Complex sb = sum_of(p.b);
    CompensatedComplexSum acc;
    for (int k = 0; k <= n; ++k) {
        const Complex xk = xfull.xi[static_cast<std::size_t>(k)];
        LogProduct coef(ctx);
        coef.theta(xk + p.b[static_cast<std::size_t>(k)]).theta(xfull.exponent_sum() + sb, -1);
        for (int i = 0; i <= n; ++i) {
            if (i == k) continue;
            coef.theta(xk + p.b[static_cast<std::size_t>(i)]).theta(xk - xfull.xi[static_cast<std::size_t>(i)], -1);
        }
        if (coef.is_zero()) continue;
        const ExponentPoint y = xfull.without(k).inverse();
        // y = b-hat_k exactly is a truncated sum; anything else is bilateral
        const bool truncated = y.xi == da_b_hat(p, k).xi;
        acc.add(coef.value() * da_dual_regularized(p, y, truncated ? Cycle::Fan : Cycle::Box, ctx, terms));
    }
    return acc.value();
}

// 100 random lattice points around x; worst pointwise deviation of Phi against k Phi-tilde
CheckReport gus_pointwise_factorization(const GUSParams& p, const ExponentPoint& x, const Env& e) {
    const int n = p.n();
    const WeightForm w = gus_weight(p);
    const WeightForm wt = gus_tilde_weight(p);
    CheckReport worst;
    bool first = true;
    for (int k = 0; k < 100; ++k) {
        std::vector<Complex> zeta = x.xi;
        for (int i = 0; i < n; ++i) zeta[static_cast<std::size_t>(i)] += e.choose(9, 1000 + k * 8 + i) - 4;
        const Complex lhs = w.value(zeta, e.ctx);
        const Complex rhs = gus_k_factor(p, ExponentPoint(zeta), e.ctx) * wt.value(zeta, e.ctx);
        CheckReport r = compare(lhs, rhs, e.tol, "", 0);
        if (first || r.rel_dev > worst.rel_dev || std::isnan(r.rel_dev)) worst = r;
        first = false;
    }
    worst.params_echo = p.echo() + ";" + point_echo(x) + ";points=100";
    worst.terms = 100;
    return worst;
}

std::vector<Complex> random_values(const Env& e, int dim, std::uint64_t stream) {
    std::vector<Complex> z;
    for (int i = 0; i < dim; ++i) {
        const double r = 0.5 + e.choose(1 << 20, stream + 2 * i) / double(1 << 20);
        const double t = 6.283185307179586 * e.choose(1 << 20, stream + 2 * i + 1) / double(1 << 20);
        z.push_back(std::polar(r, t));
    }
    return z;
}

const std::vector<int> kMG{1, 2, 3};
const std::vector<int> kLow{1, 2};
const std::vector<int> kPair{2, 3};

std::vector<Entry> build_registry() {
    std::vector<Entry> r;
    auto add = [&](std::string name, std::string suite, std::string anchor, std::vector<int> dims, TolKind tol,
                   Runner run) {
        r.push_back({{std::move(name), std::move(suite), std::move(anchor), std::move(dims)}, tol, std::move(run)});
    };

    // ---- core ----
    auto core_value = [](const Env& e, std::uint64_t k) {
        const double re = 0.05 + 0.9 * e.choose(1 << 20, k) / double(1 << 20);
        const double im = -0.25 + 0.5 * e.choose(1 << 20, k + 1) / double(1 << 20);
        return Complex(re, im);
    };
    add("core.theta_quasi_period", "core", "theta quasi-periodicity", {}, TolKind::Algebra, [=](const Env& e) {
        const Complex w = core_value(e, 1);
        const Complex a = q_power(w, e.ctx);
        return compare(theta(e.ctx.q * a, e.ctx), -theta(a, e.ctx) / a, e.tol, "w=" + echo_complex(w), 0);
    });
    add("core.theta_reflection", "core", "theta reflection", {}, TolKind::Algebra, [=](const Env& e) {
        const Complex w = core_value(e, 1);
        const Complex a = q_power(w, e.ctx);
        return compare(theta(e.ctx.q / a, e.ctx), theta(a, e.ctx), e.tol, "w=" + echo_complex(w), 0);
    });
    add("core.theta_exponent_form", "core", "theta in exponent form", {}, TolKind::Algebra, [=](const Env& e) {
        const Complex w = core_value(e, 1) + static_cast<double>(e.choose(7, 3) - 3);
        return compare(theta_exp(w, e.ctx), theta(q_power(w, e.ctx), e.ctx), e.tol, "w=" + echo_complex(w), 0);
    });
    add("core.theta_zeros", "core", "theta zeros on q^Z", {}, TolKind::Algebra, [](const Env& e) {
        const int k = e.choose(11, 1) - 5;
        return compare(theta_exp(static_cast<double>(k), e.ctx), 0.0, e.tol, "k=" + std::to_string(k), 0, 1.0);
    });
    add("core.qpoch_step", "core", "infinite q-Pochhammer step", {}, TolKind::Algebra, [=](const Env& e) {
        const Complex a = q_power(core_value(e, 1) - 1.0, e.ctx);
        return compare(qpoch_inf(a, e.ctx), (1.0 - a) * qpoch_inf(e.ctx.q * a, e.ctx), e.tol,
                       "a=" + echo_complex(a), 0);
    });
    add("core.qpoch_finite", "core", "finite q-Pochhammer ratio", {}, TolKind::Algebra, [=](const Env& e) {
        const Complex a = q_power(core_value(e, 1), e.ctx);
        const int N = e.choose(13, 3) - 5;
        const Complex rhs = qpoch_inf(a, e.ctx) / qpoch_inf(a * std::pow(e.ctx.q, N), e.ctx);
        return compare(qpoch_n(a, N, e.ctx), rhs, e.tol, "a=" + echo_complex(a) + ";N=" + std::to_string(N), 0);
    });
    add("core.qpoch_exponent_form", "core", "q-Pochhammer in exponent form", {}, TolKind::Algebra, [=](const Env& e) {
        const Complex w = core_value(e, 1) - 1.0;
        return compare(qpoch_exp(w, e.ctx), qpoch_inf(q_power(w, e.ctx), e.ctx), e.tol, "w=" + echo_complex(w), 0);
    });

    // ---- Milne-Gustafson ----
    add("mg.theorem31", "mg", "MG bilateral evaluation", kMG, TolKind::Lattice, [](const Env& e) {
        const auto p = mg_params(e);
        const auto x = sample_point(p, e.sub(2));
        const auto s = box(mg_weight(p), x, e.ctx);
        return compare(s.value, mg_rhs(p, x, e.ctx), e.tol, p.echo() + ";" + point_echo(x), s.terms);
    });
    add("mg.truncated", "mg", "MG truncated evaluation at x=a", kMG, TolKind::Lattice, [](const Env& e) {
        const auto p = mg_params(e);
        const auto s = fan(mg_weight(p), ExponentPoint(p.a), e.ctx);
        return compare(s.value, mg_truncated_rhs(p, e.ctx), e.tol, p.echo(), s.terms);
    });
    add("mg.dual_truncated", "mg", "MG dual truncated evaluation at x=b", kMG, TolKind::Lattice, [](const Env& e) {
        const auto p = mg_params(e);
        const auto s = fan(mg_dual_weight(p), ExponentPoint(p.b), e.ctx);
        return compare(s.value, mg_dual_truncated_rhs(p, e.ctx), e.tol, p.echo(), s.terms);
    });
    add("mg.connection_xa", "mg", "MG connection to the truncated sum at a", kMG, TolKind::Lattice, [](const Env& e) {
        const auto p = mg_params(e);
        const auto x = sample_point(p, e.sub(2));
        const ExponentPoint a(p.a);
        const auto l = box(mg_weight(p), x, e.ctx);
        const auto t = fan(mg_weight(p), a, e.ctx);
        const Complex coef = mg_regularizer_h(p, x, e.ctx) / mg_regularizer_h(p, a, e.ctx) *
                             mg_connection_coeff(p, x, a, e.ctx);
        return compare(l.value, coef * t.value, e.tol, p.echo() + ";" + point_echo(x), l.terms + t.terms);
    });
    add("mg.connection_xb", "mg", "MG connection to the dual truncated sum at b", kMG, TolKind::Lattice,
        [](const Env& e) {
            const auto p = mg_params(e);
            const auto x = sample_point(p, e.sub(2));
            const ExponentPoint b(p.b);
            const auto l = box(mg_weight(p), x, e.ctx);
            const auto t = fan(mg_dual_weight(p), b, e.ctx);
            LogProduct th(e.ctx);
            th.theta(p.alpha + x.exponent_sum() + sum_of(p.b)).theta(p.alpha, -1);
            const Complex coef = mg_regularizer_h(p, x, e.ctx) / mg_dual_regularizer_hbar(p, b, e.ctx) * th.value();
            return compare(l.value, coef * t.value, e.tol, p.echo() + ";" + point_echo(x), l.terms + t.terms);
        });
    add("mg.connection_xy", "mg", "MG connection between two generic points", kMG, TolKind::Lattice,
        [](const Env& e) {
            const auto p = mg_params(e);
            const auto x = sample_point(p, e.sub(2));
            const auto y = sample_point(p, e.sub(3));
            const auto l = box(mg_weight(p), x, e.ctx);
            const auto r = box(mg_weight(p), y, e.ctx);
            const Complex lhs = l.value / mg_regularizer_h(p, x, e.ctx);
            const Complex rhs = mg_connection_coeff(p, x, y, e.ctx) * r.value / mg_regularizer_h(p, y, e.ctx);
            return compare(lhs, rhs, e.tol, p.echo() + ";" + point_echo(x) + ";y=" + echo_vector(y.xi),
                           l.terms + r.terms);
        });
    add("mg.constant_c", "mg", "MG constant from the truncated sum", kMG, TolKind::Lattice, [](const Env& e) {
        const auto p = mg_params(e);
        const ExponentPoint a(p.a);
        const auto s = fan(mg_weight(p), a, e.ctx);
        LogProduct th(e.ctx);
        th.theta(p.alpha + sum_of(p.a) + sum_of(p.b));
        const Complex lhs = s.value / (mg_regularizer_h(p, a, e.ctx) * th.value());
        return compare(lhs, mg_constant(p, e.ctx), e.tol, p.echo(), s.terms);
    });
    add("mg.macdonald_const", "mg", "MG Macdonald-type constant term", kMG, TolKind::Lattice, [](const Env& e) {
        const auto p = mg_params(e);
        const auto x = sample_point(p, e.sub(2));
        const auto s = mg_macdonald_sum(p, x, default_spec(p.n(), Cycle::Box, e.ctx), e.ctx);
        return compare(s.value, mg_constant(p, e.ctx), e.tol, p.echo() + ";" + point_echo(x), s.terms);
    });
    add("mg.reflective", "mg", "MG reflective equation", kMG, TolKind::Lattice, [](const Env& e) {
        const auto p = mg_params(e);
        const auto x = sample_point(p, e.sub(2));
        const auto l = box(mg_weight(p), x, e.ctx);
        const auto r = box(mg_dual_weight(p), x.inverse(), e.ctx);
        return compare(l.value, mg_reflective_factor(p, x, e.ctx) * r.value, e.tol, p.echo() + ";" + point_echo(x),
                       l.terms + r.terms);
    });
    add("mg.duality_swap", "mg", "MG duality of parameters", kMG, TolKind::Lattice, [](const Env& e) {
        const auto p = mg_params(e);
        const auto x = sample_point(p, e.sub(2));
        const auto l = box(mg_dual_weight(p), x, e.ctx);
        const auto r = box(mg_weight(p.dual_swap()), x, e.ctx);
        const int n = p.n();
        return compare(l.value, sign_pow(n * (n - 1) / 2) * r.value, e.tol, p.echo() + ";" + point_echo(x),
                       l.terms + r.terms);
    });
    add("mg.skew_symmetry", "mg", "MG skew-symmetry in x", kPair, TolKind::TailBound, [](const Env& e) {
        const auto p = mg_params(e);
        const auto x = sample_point(p, e.sub(2));
        return tail_bound_compare(box(mg_weight(p), x, e.ctx), box(mg_weight(p), swapped(x), e.ctx), -1.0,
                                  p.echo() + ";" + point_echo(x));
    });
    add("mg.shift_invariance", "mg", "MG invariance under x_1 -> q x_1", kMG, TolKind::TailBound, [](const Env& e) {
        const auto p = mg_params(e);
        const auto x = sample_point(p, e.sub(2));
        return tail_bound_compare(box(mg_weight(p), x, e.ctx), box(mg_weight(p), x.shifted(0, 1.0), e.ctx), 1.0,
                                  p.echo() + ";" + point_echo(x));
    });
    add("mg.rec_alpha", "mg", "MG recurrence in alpha", kMG, TolKind::Recurrence, [](const Env& e) {
        const auto p = mg_params(e, SampleRegion::AlphaStep);
        return check_recurrence_mg(p, sample_point(p, e.sub(2)), e.ctx, e.tol);
    });
    add("mg.rec_dual_alpha", "mg", "MG dual recurrence in alpha", kMG, TolKind::Recurrence, [](const Env& e) {
        const auto p = mg_params(e, SampleRegion::DualAlphaStep);
        return check_recurrence_mg_dual(p, sample_point(p, e.sub(2)), e.ctx, e.tol);
    });

    // ---- Dixon-Anderson ----
    add("da.theorem41", "da", "DA alternating-sum evaluation", kLow, TolKind::Lattice, [](const Env& e) {
        const auto p = da_params(e);
        const auto x = sample_point(p, e.sub(2), p.n() + 1);
        std::int64_t terms = 0;
        const Complex lhs = da_alternating_lhs(p, x, e.ctx, &terms);
        return compare(lhs, da_alternating_rhs(p, x, e.ctx), e.tol, p.echo() + ";" + point_echo(x), terms);
    });
    add("da.evans", "da", "DA evaluation at x=a (Evans)", kMG, TolKind::Lattice, [](const Env& e) {
        const auto p = da_params(e);
        std::int64_t terms = 0;
        const Complex lhs = da_truncated_alternating_lhs(p, e.ctx, &terms);
        return compare(lhs, da_evans_rhs(p, e.ctx), e.tol, p.echo(), terms);
    });
    add("da.evans_iterated", "da", "DA iterated form (Evans)", kLow, TolKind::Lattice, [](const Env& e) {
        const auto p = da_params(e);
        EvansParams ev;
        ev.x = p.a;
        for (std::size_t i = 0; i < p.a.size(); ++i) ev.s.push_back(p.a[i] + p.b[i]);
        std::int64_t terms = 0;
        const Complex lhs = evans_iterated_lhs(ev, e.ctx, &terms);
        return compare(lhs, evans_iterated_rhs(ev, e.ctx), e.tol,
                       "x=" + echo_vector(ev.x) + ";s=" + echo_vector(ev.s), terms);
    });
    add("da.dual_truncated", "da", "DA dual truncated evaluation at b-hat", kLow, TolKind::Lattice, [](const Env& e) {
        const auto p = da_params(e);
        const int i = e.choose(p.n() + 1, 1);
        std::int64_t terms = 0;
        const Complex lhs = da_dual_regularized(p, da_b_hat(p, i), Cycle::Fan, e.ctx, terms);
        return compare(lhs, da_dual_truncated_rhs(p, i, e.ctx), e.tol, p.echo() + ";i=" + std::to_string(i + 1),
                       terms);
    });
    add("da.mg_bridge", "da", "DA dual truncated sum as an MG sum", kLow, TolKind::Lattice, [](const Env& e) {
        const auto p = da_params(e);
        const auto x = da_b_hat(p, p.n());
        const auto l = fan(da_dual_weight(p), x, e.ctx);
        const auto r = fan(mg_dual_weight(da_bridge_params(p)), x, e.ctx);
        return compare(l.value, da_mg_bridge(p, e.ctx) * r.value, e.tol, p.echo(), l.terms + r.terms);
    });
    add("da.reflective", "da", "DA reflective equation", kLow, TolKind::Lattice, [](const Env& e) {
        const auto p = da_params(e);
        const auto x = sample_point(p, e.sub(2));
        const auto l = box(da_weight(p), x, e.ctx);
        const auto r = box(da_dual_weight(p), x.inverse(), e.ctx);
        return compare(l.value, da_reflective_factor(p, x, e.ctx) * r.value, e.tol, p.echo() + ";" + point_echo(x),
                       l.terms + r.terms);
    });
    add("da.c0_generic", "da", "DA constant as a sum of dual regularized sums", kLow, TolKind::Lattice,
        [](const Env& e) {
            const auto p = da_params(e);
            const auto x = sample_point(p, e.sub(2), p.n() + 1);
            std::int64_t terms = 0;
            const Complex lhs = da_c0_sum(p, x, e.ctx, terms);
            return compare(lhs, da_constant_c0(p, e.ctx), e.tol, p.echo() + ";" + point_echo(x), terms);
        });
    add("da.c0_reconstruction", "da", "DA constant at the degenerate point x_i = 1/b_i", kLow, TolKind::Lattice,
        [](const Env& e) {
            const auto p = da_params(e);
            const int n = p.n();
            auto x = sample_point(p, e.sub(2), n + 1);
            for (int i = 0; i < n; ++i) x.xi[static_cast<std::size_t>(i)] = -p.b[static_cast<std::size_t>(i)];
            std::int64_t terms = 0;
            const Complex lhs = da_c0_sum(p, x, e.ctx, terms);
            return compare(lhs, da_constant_c0(p, e.ctx), e.tol, p.echo() + ";" + point_echo(x), terms);
        });
    add("da.skew_symmetry", "da", "DA skew-symmetry in x", {2}, TolKind::TailBound, [](const Env& e) {
        const auto p = da_params(e);
        const auto x = sample_point(p, e.sub(2));
        return tail_bound_compare(box(da_weight(p), x, e.ctx), box(da_weight(p), swapped(x), e.ctx), -1.0,
                                  p.echo() + ";" + point_echo(x));
    });
    add("da.shift_invariance", "da", "DA invariance under x_1 -> q x_1", kLow, TolKind::TailBound, [](const Env& e) {
        const auto p = da_params(e);
        const auto x = sample_point(p, e.sub(2));
        return tail_bound_compare(box(da_weight(p), x, e.ctx), box(da_weight(p), x.shifted(0, 1.0), e.ctx), 1.0,
                                  p.echo() + ";" + point_echo(x));
    });
    for (int k = 0; k < 4; ++k) {
        const bool reg = k >= 2;
        const ShiftTarget t = k % 2 ? ShiftTarget::B : ShiftTarget::A;
        std::string name = std::string("da.rec_") + (reg ? "reg_" : "") + (t == ShiftTarget::A ? "a" : "b");
        std::string anchor = std::string("DA dual ") + (reg ? "regularized " : "") + "recurrence in " +
                             (t == ShiftTarget::A ? "a_j" : "b_j");
        add(name, "da", anchor, kLow, TolKind::Recurrence, [t, reg](const Env& e) {
            const auto p = da_params(e);
            const int i = e.choose(p.n() + 1, 1);
            const int j = e.choose(p.n() + 1, 2);
            return check_recurrence_da(p, i, t, j, reg, e.ctx, e.tol);
        });
    }

    // ---- Gustafson A_n ----
    add("gus.theorem52", "gus", "GUS regularized evaluation", kLow, TolKind::Lattice, [](const Env& e) {
        const auto p = gus_params(e);
        const auto x = sample_point(p, e.sub(2));
        const auto s = box(gus_weight(p), x, e.ctx);
        return compare(s.value / gus_regularizer_h(p, x, e.ctx), gus_constant_rhs(p, e.ctx), e.tol,
                       p.echo() + ";" + point_echo(x), s.terms);
    });
    add("gus.constancy", "gus", "GUS regularized sum independent of x", kLow, TolKind::Lattice, [](const Env& e) {
        const auto p = gus_params(e);
        const auto x = sample_point(p, e.sub(2));
        const auto y = sample_point(p, e.sub(3));
        const auto l = box(gus_weight(p), x, e.ctx);
        const auto r = box(gus_weight(p), y, e.ctx);
        return compare(l.value / gus_regularizer_h(p, x, e.ctx), r.value / gus_regularizer_h(p, y, e.ctx), e.tol,
                       p.echo() + ";" + point_echo(x) + ";y=" + echo_vector(y.xi), l.terms + r.terms);
    });
    add("gus.milne_special", "gus", "GUS at d = a_1...a_{n+1} (Milne)", kLow, TolKind::Lattice, [](const Env& e) {
        auto p = gus_params(e);
        p.d = sum_of(p.a);
        const ExponentPoint a(std::vector<Complex>(p.a.begin(), p.a.begin() + p.n()));
        const auto s = box(gus_weight(p), a, e.ctx);
        return compare(s.value, gus_milne_rhs(p, e.ctx), e.tol, p.echo(), s.terms);
    });
    add("gus.k0_macdonald", "gus", "GUS constant term with unit weight", kLow, TolKind::Lattice, [](const Env& e) {
        const auto p = gus_params(e);
        const auto x = sample_point(p, e.sub(2));
        const auto s = gus_macdonald_k0(p, x, default_spec(p.n(), Cycle::Box, e.ctx), e.ctx);
        return compare(s.value, gus_k0_value(p.n(), e.ctx), e.tol, p.echo() + ";" + point_echo(x), s.terms);
    });
    add("gus.macdonald_sum", "gus", "GUS Macdonald-type form of the regularized sum", kLow, TolKind::Lattice,
        [](const Env& e) {
            const auto p = gus_params(e);
            const auto x = sample_point(p, e.sub(2));
            const auto s = box(gus_macdonald_weight(p), x, e.ctx);
            return compare(s.value, gus_constant_rhs(p, e.ctx), e.tol, p.echo() + ";" + point_echo(x), s.terms);
        });
    add("gus.factorization", "gus", "GUS weight factorization Phi = k Phi-tilde", kLow, TolKind::Algebra,
        [](const Env& e) {
            const auto p = gus_params(e);
            return gus_pointwise_factorization(p, sample_point(p, e.sub(2)), e);
        });
    add("gus.tilde_sum", "gus", "GUS sum factorization K = k K-tilde", kLow, TolKind::Lattice, [](const Env& e) {
        const auto p = gus_params(e);
        const auto x = sample_point(p, e.sub(2));
        const auto l = box(gus_weight(p), x, e.ctx);
        const auto r = box(gus_tilde_weight(p), x, e.ctx);
        return compare(l.value, gus_k_factor(p, x, e.ctx) * r.value, e.tol, p.echo() + ";" + point_echo(x),
                       l.terms + r.terms);
    });
    add("gus.h_symmetric", "gus", "GUS regularizer in symmetric form", kLow, TolKind::Algebra, [](const Env& e) {
        const auto p = gus_params(e);
        const auto x = sample_point(p, e.sub(2));
        return compare(gus_regularizer_h_symmetric(p, x, e.ctx), gus_regularizer_h(p, x, e.ctx), e.tol,
                       p.echo() + ";" + point_echo(x), 0);
    });
    add("gus.skew_symmetry", "gus", "GUS skew-symmetry in x", {2}, TolKind::TailBound, [](const Env& e) {
        const auto p = gus_params(e);
        const auto x = sample_point(p, e.sub(2));
        return tail_bound_compare(box(gus_weight(p), x, e.ctx), box(gus_weight(p), swapped(x), e.ctx), -1.0,
                                  p.echo() + ";" + point_echo(x));
    });
    add("gus.shift_invariance", "gus", "GUS invariance under x_1 -> q x_1", kLow, TolKind::TailBound,
        [](const Env& e) {
            const auto p = gus_params(e);
            const auto x = sample_point(p, e.sub(2));
            return tail_bound_compare(box(gus_weight(p), x, e.ctx), box(gus_weight(p), x.shifted(0, 1.0), e.ctx), 1.0,
                                      p.echo() + ";" + point_echo(x));
        });
    for (int k = 0; k < 4; ++k) {
        const bool reg = k >= 2;
        const ShiftTarget t = k % 2 ? ShiftTarget::B : ShiftTarget::A;
        std::string name = std::string("gus.rec_") + (reg ? "reg_" : "") + (t == ShiftTarget::A ? "a" : "b");
        std::string anchor = std::string("GUS ") + (reg ? "regularized " : "") + "recurrence in " +
                             (t == ShiftTarget::A ? "a_j" : "b_j");
        add(name, "gus", anchor, kLow, TolKind::Recurrence, [t, reg](const Env& e) {
            const auto p = gus_params(e);
            const int j = e.choose(p.n() + 1, 2);
            return check_recurrence_gus(p, sample_point(p, e.sub(2)), t, j, reg, e.ctx, e.tol);
        });
    }

    // ---- lemmas ----
    add("lemma.mg_expansion", "lemmas", "MG skew-symmetrized nabla expansion", kPair, TolKind::Algebra,
        [](const Env& e) {
            const auto p = mg_params(e);
            return check_poly_expansion_mg(p, random_values(e, p.n(), 500), e.ctx, e.tol);
        });
    add("lemma.da_expansion", "lemmas", "DA skew-symmetrized nabla expansion", kPair, TolKind::Algebra,
        [](const Env& e) {
            const auto p = da_params(e);
            return check_poly_expansion_da(p, random_values(e, p.n(), 500), e.ctx, e.tol);
        });
    add("lemma.gus_expansion", "lemmas", "GUS skew-symmetrized nabla expansion on the balance surface", kPair,
        TolKind::Algebra, [](const Env& e) {
            const auto p = gus_params(e);
            auto z = random_values(e, p.n(), 500);
            Complex prod = 1.0;
            for (const auto& v : z) prod *= v;
            z.push_back(q_power(p.d, e.ctx) / prod);
            return check_poly_expansion_gus(p, z, e.ctx, e.tol);
        });
    add("lemma.gus_expansion_general", "lemmas", "GUS skew-symmetrized nabla expansion off the balance surface",
        kPair, TolKind::Algebra, [](const Env& e) {
            const auto p = gus_params(e);
            const auto z = random_values(e, p.n() + 1, 500);
            double size = 0.0;
            const Complex lhs = gus_anabla_phi(p, z, e.ctx, &size);
            return compare(lhs, gus_anabla_expansion(p, z, false, e.ctx), e.tol, p.echo() + ";z=" + echo_vector(z), 0,
                           size);
        });
    add("lemma.mg_nabla_sum", "lemmas", "MG sum of Phi times a skew-symmetrized nabla", kLow, TolKind::Lattice,
        [](const Env& e) {
            const auto p = mg_params(e, SampleRegion::AlphaStep);
            return check_nabla_vanishing(p, sample_point(p, e.sub(2)), e.ctx, e.tol);
        });
    add("lemma.da_nabla_sum", "lemmas", "DA sum of Phi-bar times a skew-symmetrized nabla", kLow, TolKind::Lattice,
        [](const Env& e) {
            const auto p = da_params(e);
            return check_nabla_vanishing(p, da_b_hat(p, e.choose(p.n() + 1, 1)), e.ctx, e.tol, Cycle::Fan);
        });
    add("lemma.gus_nabla_sum", "lemmas", "GUS sum of Phi times a skew-symmetrized paired nabla", kLow,
        TolKind::Lattice, [](const Env& e) {
            const auto p = gus_params(e);
            return check_nabla_vanishing(p, sample_point(p, e.sub(2)), e.ctx, e.tol);
        });

    // ---- asymptotics ----
    const std::vector<int> Ns{5, 10, 15};
    add("asym.mg_alpha_up", "asymptotics", "MG truncated sum as alpha -> +infinity", kMG, TolKind::Asymptotic,
        [Ns](const Env& e) {
            return check_asymptotic(mg_params(e), AsymptoticDirection::MGAlphaUp, Ns, e.ctx, e.tol);
        });
    add("asym.mg_alpha_down", "asymptotics", "MG dual truncated sum as alpha -> -infinity", kMG,
        TolKind::Asymptotic, [Ns](const Env& e) {
            return check_asymptotic(mg_params(e), AsymptoticDirection::MGAlphaDown, Ns, e.ctx, e.tol);
        });
    add("asym.da_special", "asymptotics", "DA dual truncated sum along the special direction", kLow,
        TolKind::Asymptotic, [Ns](const Env& e) {
            return check_asymptotic(da_params(e), AsymptoticDirection::DASpecial, Ns, e.ctx, e.tol);
        });
    add("asym.gus_special", "asymptotics", "GUS tilde sum along the special direction", kLow, TolKind::Asymptotic,
        [Ns](const Env& e) {
            return check_asymptotic(gus_params(e), AsymptoticDirection::GUSSpecial, Ns, e.ctx, e.tol);
        });
    return r;
}

const std::vector<Entry>& registry() {
    static const std::vector<Entry> r = build_registry();
    return r;
}

double tolerance(TolKind k, int n, const Tolerances& t) {
    switch (k) {
        case TolKind::Lattice: return t.lattice_for(n);
        case TolKind::Recurrence: return t.recurrence;
        case TolKind::Algebra: return t.algebra;
        case TolKind::Asymptotic: return t.asymptotic;
        case TolKind::TailBound: return 0.0;
    }
    return 0.0;
}

}  // namespace

const std::vector<CheckInfo>& registered_checks() {
    static const std::vector<CheckInfo> infos = [] {
        std::vector<CheckInfo> v;
        for (const auto& e : registry()) v.push_back(e.info);
        return v;
    }();
    return infos;
}

std::uint64_t trial_seed(std::uint64_t run_seed, const std::string& check_id, int trial) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (unsigned char ch : check_id) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    std::uint64_t z = run_seed + h + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(trial + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

CheckReport check_identity(const std::string& check_id, const QContext& ctx, std::uint64_t seed,
                           const Tolerances& tols) {
    ctx.validate();
    std::string name = check_id;
    int n = 0;
    const auto dot = check_id.rfind(".n");
    if (dot != std::string::npos && dot + 2 < check_id.size() &&
        check_id.find_first_not_of("0123456789", dot + 2) == std::string::npos) {
        name = check_id.substr(0, dot);
        n = std::stoi(check_id.substr(dot + 2));
    }
    const Entry* entry = nullptr;
    for (const auto& e : registry())
        if (e.info.name == name) entry = &e;
    if (!entry) throw ConfigError("unknown check id: " + check_id);
    if (entry->info.dims.empty() ? n != 0 : (n < 1 || n > kMaxDim))
        throw ConfigError("check " + name + (entry->info.dims.empty() ? " takes no dimension" : " needs a dimension .n<k>"));

    Env env;
    env.n = n;
    env.seed = seed;
    env.tol = tolerance(entry->tol, n, tols);
    env.ctx = with_tol(ctx, env.tol > 0.0 ? env.tol : tols.lattice_for(n));

    const auto start = std::chrono::steady_clock::now();
    CheckReport r;
    try {
        r = entry->run(env);
    } catch (const NotConverged& ex) {
        r = CheckReport{};
        r.lhs = ex.partial().value;
        r.terms = ex.partial().terms;
        r.tol = env.tol;
        r.rel_dev = std::numeric_limits<double>::quiet_NaN();
        r.passed = false;
        r.status = CheckStatus::NotConverged;
        r.params_echo = env.echo + (env.echo.empty() ? "" : ";") + "error=" + ex.what();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& ex) {
        r = CheckReport{};
        r.tol = env.tol;
        r.rel_dev = std::numeric_limits<double>::quiet_NaN();
        r.passed = false;
        r.status = CheckStatus::Error;
        r.params_echo = env.echo + (env.echo.empty() ? "" : ";") + "error=" + ex.what();
    }
    r.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    r.check_id = check_id;
    r.paper_anchor = entry->info.anchor;
    r.seed = seed;
    return r;
}

}  // namespace qjackson
