#include "qjackson/weight.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <memory>

namespace qjackson {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Complex dot(const std::vector<int>& c, std::span<const Complex> zeta) {
    Complex s = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k)
        if (c[k] != 0) s += static_cast<double>(c[k]) * zeta[k];
    return s;
}

Complex add_log(Complex acc, Complex term) {
    if (term.real() == kNegInf) return {kNegInf, 0.0};
    if (acc.real() == kNegInf) return acc;
    return acc + term;
}

Complex poly_of(const WeightForm& w, std::span<const Complex> z) {
    if (w.custom_poly) return w.custom_poly(z);
    switch (w.poly) {
        case PolyKind::One:
            return 1.0;
        case PolyKind::Vandermonde:
        case PolyKind::Balanced:
            return vandermonde(z);
        case PolyKind::DualVandermonde: {
            Complex p = vandermonde(z);
            const int n = static_cast<int>(z.size());
            return ((n * (n - 1) / 2) % 2 == 0) ? p : -p;
        }
    }
    return 1.0;
}

bool wants_extra_coordinate(const WeightForm& w) { return w.poly == PolyKind::Balanced; }

// one table per distinct linear form coefs.nu
struct Group {
    std::vector<int> coefs;
    std::vector<const PochFactor*> poch;
    std::vector<const PowerFactor*> powers;
    int span = 0;  // sum |coefs|
    int lo = 0;
    std::vector<Complex> table;
};

struct IntegrandState {
    WeightForm form;
    ExponentPoint base;
    QContext ctx;
    std::vector<Group> groups;
    int M = 0;
    std::vector<std::vector<Complex>> z;  // z[i][nu_i + M]
    std::vector<Complex> z_extra;         // z_{n+1}[sum nu + n M]

    void build(int m) {
        M = m;
        const int n = form.n;
        const double lq = ctx.log_q();
        for (auto& g : groups) {
            const Complex L = dot(g.coefs, base.xi);
            g.lo = -g.span * M;
            const int hi = g.span * M;
            g.table.assign(static_cast<std::size_t>(hi - g.lo + 1), form.log_constant + form.q_constant * lq);
            if (&g != &groups.front()) std::fill(g.table.begin(), g.table.end(), Complex(0.0, 0.0));
            for (const auto* p : g.poch) {
                const auto t = log_qpoch_table((L + p->shift) + static_cast<double>(p->int_shift), g.lo, hi, ctx);
                for (std::size_t k = 0; k < t.size(); ++k) {
                    const Complex v = (p->power == 1) ? t[k] : static_cast<double>(p->power) * t[k];
                    if (t[k].real() == kNegInf) {
                        // a vanishing numerator stays -inf, a vanishing denominator is a pole
                        g.table[k] = (p->power > 0) ? Complex(kNegInf, 0.0)
                                                    : Complex(std::numeric_limits<double>::infinity(), 0.0);
                    } else if (g.table[k].real() != kNegInf) {
                        g.table[k] += v;
                    }
                }
            }
            for (const auto* pw : g.powers) {
                for (int s = g.lo; s <= hi; ++s) {
                    auto& e = g.table[static_cast<std::size_t>(s - g.lo)];
                    if (e.real() != kNegInf) e += pw->exponent * (L + static_cast<double>(s)) * lq;
                }
            }
        }
        z.assign(static_cast<std::size_t>(n), {});
        for (int i = 0; i < n; ++i) {
            z[i].resize(static_cast<std::size_t>(2 * M + 1));
            for (int s = -M; s <= M; ++s)
                z[i][static_cast<std::size_t>(s + M)] = q_power(base.xi[i] + static_cast<double>(s), ctx);
        }
        if (wants_extra_coordinate(form)) {
            const Complex top = form.delta - base.exponent_sum();
            z_extra.resize(static_cast<std::size_t>(2 * n * M + 1));
            for (int s = -n * M; s <= n * M; ++s)
                z_extra[static_cast<std::size_t>(s + n * M)] = q_power(top - static_cast<double>(s), ctx);
        }
    }

    Complex eval(std::span<const int> nu) const {
        const int n = form.n;
        Complex lw = 0.0;
        bool zero = false;
        for (const auto& g : groups) {
            int s = 0;
            for (int k = 0; k < n; ++k) s += g.coefs[k] * nu[k];
            const Complex t = g.table[static_cast<std::size_t>(s - g.lo)];
            if (t.real() == kNegInf) {
                zero = true;
            } else {
                lw += t;
            }
        }
        if (zero) {
            // a zero of the weight; a simultaneous pole would show up as +inf in lw
            if (std::isinf(lw.real()) && lw.real() > 0) return {std::nan(""), 0.0};
            return 0.0;
        }
        std::array<Complex, kMaxDim + 1> zv{};
        int sum = 0;
        for (int k = 0; k < n; ++k) {
            zv[k] = z[k][static_cast<std::size_t>(nu[k] + M)];
            sum += nu[k];
        }
        int m = n;
        if (wants_extra_coordinate(form)) {
            zv[n] = z_extra[static_cast<std::size_t>(sum + n * M)];
            m = n + 1;
        }
        const Complex p = poly_of(form, std::span<const Complex>(zv.data(), m));
        if (p == Complex(0.0, 0.0) && is_finite(lw)) return 0.0;
        return std::exp(lw) * p;
    }
};

}  // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::MG: return "mg";
        case Family::DA: return "da";
        case Family::GUS: return "gus";
    }
    return "?";
}

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::Primal: return "primal";
        case Variant::Dual: return "dual";
        case Variant::Regularized: return "regularized";
        case Variant::Tilde: return "tilde";
        case Variant::Macdonald: return "macdonald";
        case Variant::K0: return "k0";
    }
    return "?";
}

void WeightForm::add_poch(std::vector<int> coefs, Complex shift, int int_shift, int power) {
    poch.push_back({std::move(coefs), shift, int_shift, power});
}

void WeightForm::add_power(std::vector<int> coefs, Complex exponent) {
    powers.push_back({std::move(coefs), exponent});
}

Complex WeightForm::log_weight(std::span<const Complex> zeta, const QContext& ctx) const {
    Complex lw = log_constant + q_constant * ctx.log_q();
    for (const auto& p : poch) {
        const Complex t = log_qpoch_exp((dot(p.coefs, zeta) + p.shift) + static_cast<double>(p.int_shift), ctx);
        if (t.real() == kNegInf) {
            if (p.power < 0) return {std::numeric_limits<double>::infinity(), 0.0};
            lw = {kNegInf, 0.0};
        } else {
            lw = add_log(lw, static_cast<double>(p.power) * t);
        }
    }
    for (const auto& pw : powers) lw = add_log(lw, pw.exponent * dot(pw.coefs, zeta) * ctx.log_q());
    return lw;
}

Complex WeightForm::poly_value(std::span<const Complex> z) const { return poly_of(*this, z); }

Complex WeightForm::value(std::span<const Complex> zeta, const QContext& ctx) const {
    const Complex lw = log_weight(zeta, ctx);
    std::vector<Complex> z;
    Complex total = 0.0;
    for (const auto& e : zeta) {
        z.push_back(q_power(e, ctx));
        total += e;
    }
    if (wants_extra_coordinate(*this)) z.push_back(q_power(delta - total, ctx));
    const Complex p = poly_of(*this, z);
    if (lw.real() == kNegInf) return 0.0;
    return std::exp(lw) * p;
}

std::vector<int> unit_coefs(int n, int i) {
    std::vector<int> c(static_cast<std::size_t>(n), 0);
    c.at(static_cast<std::size_t>(i)) = 1;
    return c;
}

std::vector<int> total_coefs(int n, int sign) { return std::vector<int>(static_cast<std::size_t>(n), sign); }

Complex vandermonde(std::span<const Complex> z) {
    Complex p = 1.0;
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j) p *= (z[j] - z[i]);
    return p;
}

LatticeFunction make_integrand(const WeightForm& w, const ExponentPoint& base, const QContext& ctx) {
    if (w.n < 1 || w.n > kMaxDim) throw DimensionTooLarge("weight dimension out of range");
    if (base.n() != w.n) throw ConfigError("base point dimension does not match the weight");
    auto st = std::make_shared<IntegrandState>();
    st->form = w;
    st->base = base;
    st->ctx = ctx;
    std::map<std::vector<int>, std::size_t> index;
    auto group_of = [&](const std::vector<int>& c) -> Group& {
        auto it = index.find(c);
        if (it == index.end()) {
            Group g;
            g.coefs = c;
            for (int v : c) g.span += std::abs(v);
            st->groups.push_back(std::move(g));
            it = index.emplace(c, st->groups.size() - 1).first;
        }
        return st->groups[it->second];
    };
    // the first group carries the constant; make sure one exists
    group_of(total_coefs(w.n, 0));
    for (const auto& p : st->form.poch) group_of(p.coefs).poch.push_back(&p);
    for (const auto& p : st->form.powers) group_of(p.coefs).powers.push_back(&p);
    LatticeFunction f;
    f.prepare = [st](int m) { st->build(m); };
    f.eval = [st](std::span<const int> nu) { return st->eval(nu); };
    return f;
}

SumResult sum_weight(const WeightForm& w, const ExponentPoint& base, Cycle cycle, const QContext& ctx,
                     bool adaptive) {
    SumSpec spec;
    spec.n = w.n;
    spec.cycle = cycle;
    spec.cutoff = ctx.lattice_cutoff;
    spec.adaptive = adaptive && ctx.adaptive;
    return jackson_sum(make_integrand(w, base, ctx), spec, ctx);
}

}  // namespace qjackson
