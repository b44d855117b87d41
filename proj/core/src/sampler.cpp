#include <cmath>

#include "internal.hpp"
#include "qjackson/verify.hpp"

namespace qjackson {

namespace {

constexpr double kMargin = 0.02;
constexpr int kMaxAttempts = 10000;

// splitmix64; fixed arithmetic so draws are identical on every platform
class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * static_cast<double>(next() >> 11) * 0x1.0p-53; }
    Complex exponent() { return {uniform(0.05, 0.95), uniform(-0.25, 0.25)}; }

private:
    std::uint64_t s_;
};

bool generic(Complex z) { return std::abs(z - std::round(z.real())) >= kMargin; }

bool all_generic(const std::vector<Complex>& zs) {
    for (const auto& z : zs)
        if (!generic(z)) return false;
    return true;
}

// spreads the difference to the target sum evenly over all entries
void shift_to_sum(std::vector<Complex>& a, std::vector<Complex>& b, Complex target) {
    const Complex s = (target - sum_of(a) - sum_of(b)) / static_cast<double>(a.size() + b.size());
    for (auto& v : a) v += s;
    for (auto& v : b) v += s;
}

void pair_combinations(const std::vector<Complex>& a, const std::vector<Complex>& b, std::vector<Complex>& out) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (i != j) {
                out.push_back(a[i] - a[j]);
                out.push_back(b[i] - b[j]);
            }
            out.push_back(a[i] + b[j]);
        }
    }
}

MGParams draw_mg(Rng& g, int n, SampleRegion region) {
    const double alo = region == SampleRegion::DualAlphaStep ? 1.45 : 0.45;
    const double blo = region == SampleRegion::AlphaStep ? 1.45 : 0.45;
    MGParams p;
    for (int i = 0; i < n; ++i) {
        p.a.push_back(g.exponent());
        p.b.push_back(g.exponent());
    }
    p.alpha = {g.uniform(alo, alo + 0.3), g.uniform(-0.2, 0.2)};
    const Complex beta{g.uniform(blo, blo + 0.3), g.uniform(-0.2, 0.2)};
    shift_to_sum(p.a, p.b, 1.0 - p.alpha - beta);
    return p;
}

bool accept(const MGParams& p) {
    std::vector<Complex> c{p.alpha, p.beta(), p.alpha + sum_of(p.a) + sum_of(p.b), p.beta() + sum_of(p.a) + sum_of(p.b)};
    pair_combinations(p.a, p.b, c);
    return all_generic(c);
}

void draw_pair(Rng& g, int n, std::vector<Complex>& a, std::vector<Complex>& b) {
    for (int i = 0; i <= n; ++i) {
        a.push_back(g.exponent());
        b.push_back(g.exponent());
    }
    shift_to_sum(a, b, Complex{g.uniform(-0.7, -0.3), g.uniform(-0.2, 0.2)});
}

bool accept(const DAParams& p) {
    const int n = p.n();
    std::vector<Complex> c{p.exponent_sum(), p.a[static_cast<std::size_t>(n)] + p.b[static_cast<std::size_t>(n)]};
    pair_combinations(p.a, p.b, c);
    return all_generic(c);
}

bool accept(const GUSParams& p) {
    std::vector<Complex> c{p.exponent_sum(), p.d, p.d - sum_of(p.a), p.d + sum_of(p.b)};
    pair_combinations(p.a, p.b, c);
    for (std::size_t j = 0; j < p.a.size(); ++j) {
        c.push_back(p.d - p.a[j]);
        c.push_back(p.d + p.b[j]);
    }
    return all_generic(c);
}

}  // namespace

FamilyParams sample_params(Family f, int n, std::uint64_t seed, const QContext& ctx, SampleRegion region) {
    ctx.validate();
    if (n < 1 || n > kMaxDim) throw ConfigError("dimension out of range");
    Rng g(seed);
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        switch (f) {
            case Family::MG: {
                auto p = draw_mg(g, n, region);
                if (accept(p)) return p;
                break;
            }
            case Family::DA: {
                DAParams p;
                draw_pair(g, n, p.a, p.b);
                if (accept(p)) return p;
                break;
            }
            case Family::GUS: {
                GUSParams p;
                draw_pair(g, n, p.a, p.b);
                p.d = g.exponent();
                if (accept(p)) return p;
                break;
            }
        }
    }
    throw DomainError("parameter sampler exhausted its attempts");
}

ExponentPoint sample_point(const FamilyParams& p, std::uint64_t seed, int dim) {
    Rng g(seed ^ 0x5bd1e9955bd1e995ULL);
    const int n = std::visit([](const auto& v) { return v.n(); }, p);
    if (dim < 0) dim = n;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::vector<Complex> xi;
        for (int i = 0; i < dim; ++i) xi.push_back(g.exponent());
        std::vector<Complex> c;
        for (int i = 0; i < dim; ++i)
            for (int j = i + 1; j < dim; ++j) c.push_back(xi[static_cast<std::size_t>(i)] - xi[static_cast<std::size_t>(j)]);
        const Complex sx = sum_of(xi);
        std::visit(
            [&](const auto& v) {
                for (const auto& x : xi) {
                    for (const auto& a : v.a) {
                        c.push_back(x - a);
                        c.push_back(x + a);
                    }
                    for (const auto& b : v.b) {
                        c.push_back(x - b);
                        c.push_back(x + b);
                    }
                }
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, MGParams>) {
                    c.push_back(v.alpha + sx + sum_of(v.b));
                } else if constexpr (std::is_same_v<T, DAParams>) {
                    c.push_back(sx + sum_of(v.b));
                } else {
                    // z_{n+1} = d - sum; keep it off the poles and zeros too
                    const Complex last = v.d - sx;
                    for (const auto& x : xi) c.push_back(x - last);
                    for (const auto& a : v.a) c.push_back(last - a);
                    for (const auto& b : v.b) c.push_back(last + b);
                }
            },
            p);
        if (all_generic(c)) return ExponentPoint(std::move(xi));
    }
    throw DomainError("point sampler exhausted its attempts");
}

}  // namespace qjackson
