#include <algorithm>
#include <numeric>

#include "internal.hpp"
#include "qjackson/verify.hpp"

namespace qjackson {

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size(), false);
    for (int v : image_) {
        if (v < 0 || v >= size() || seen[static_cast<std::size_t>(v)]) throw DomainError("not a permutation");
        seen[static_cast<std::size_t>(v)] = true;
    }
}

int Permutation::sign() const {
    // parity from the cycle decomposition
    std::vector<bool> seen(image_.size(), false);
    int transpositions = 0;
    for (int i = 0; i < size(); ++i) {
        if (seen[static_cast<std::size_t>(i)]) continue;
        int len = 0;
        for (int j = i; !seen[static_cast<std::size_t>(j)]; j = image_[static_cast<std::size_t>(j)]) {
            seen[static_cast<std::size_t>(j)] = true;
            ++len;
        }
        transpositions += len - 1;
    }
    return transpositions % 2 ? -1 : 1;
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(image_.size());
    for (int i = 0; i < size(); ++i) inv[static_cast<std::size_t>(image_[static_cast<std::size_t>(i)])] = i;
    return Permutation(std::move(inv));
}

std::vector<Complex> Permutation::apply(std::span<const Complex> z) const {
    std::vector<Complex> out(image_.size());
    for (int i = 0; i < size(); ++i) out[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>((*this)(i))];
    return out;
}

std::vector<Permutation> Permutation::all(int n) {
    if (n > kMaxDim) throw DimensionTooLarge("skew-symmetrization limited to n <= 6");
    if (n < 1) throw DomainError("permutation size must be positive");
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::vector<Permutation> out;
    do {
        out.emplace_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

Complex skew_symmetrize(const PointFunction& f, std::span<const Complex> z) {
    Complex s = 0.0;
    for (const auto& sigma : Permutation::all(static_cast<int>(z.size()))) {
        const auto zs = sigma.inverse().apply(z);
        s += static_cast<double>(sigma.sign()) * f(zs);
    }
    return s;
}

Complex skew_symmetrize(const std::function<Complex(const ExponentPoint&)>& f, const ExponentPoint& z) {
    Complex s = 0.0;
    for (const auto& sigma : Permutation::all(z.n())) {
        ExponentPoint zs(sigma.inverse().apply(z.xi));
        s += static_cast<double>(sigma.sign()) * f(zs);
    }
    return s;
}

Complex nabla(const PointFunction& phi, const ShiftRatio& ratio, int i, std::span<const Complex> z, double q,
              double* magnitude) {
    std::vector<Complex> t(z.begin(), z.end());
    t[static_cast<std::size_t>(i)] *= q;
    const Complex u = phi(z), v = ratio(z, i) * phi(t);
    if (magnitude) *magnitude += std::abs(u) + std::abs(v);
    return u - v;
}

Complex nabla_pair(const PointFunction& phi, const PairShiftRatio& ratio, int i, int j, std::span<const Complex> z,
                   double q, double* magnitude) {
    std::vector<Complex> t(z.begin(), z.end());
    t[static_cast<std::size_t>(i)] *= q;
    t[static_cast<std::size_t>(j)] /= q;
    const Complex u = phi(z), v = ratio(z, i, j) * phi(t);
    if (magnitude) *magnitude += std::abs(u) + std::abs(v);
    return u - v;
}

Complex e_poly(Complex c, std::span<const Complex> z) {
    Complex r = 1.0;
    for (const auto& v : z) r *= 1.0 - v / c;
    return r;
}

namespace {

std::vector<Complex> values(const std::vector<Complex>& e, const QContext& ctx) {
    std::vector<Complex> v;
    v.reserve(e.size());
    for (const auto& x : e) v.push_back(q_power(x, ctx));
    return v;
}

Complex product(std::span<const Complex> v) {
    Complex r = 1.0;
    for (const auto& x : v) r *= x;
    return r;
}

double sign_pow(int k) { return k % 2 ? -1.0 : 1.0; }

}  // namespace

Complex mg_phi(const MGParams& p, std::span<const Complex> z, const QContext& ctx) {
    const int n = p.n();
    Complex r = 1.0;
    for (int k = 1; k < n; ++k) r *= std::pow(z[static_cast<std::size_t>(k)], n - k);
    for (const auto& a : values(p.a, ctx)) r *= 1.0 - z[0] / a;
    return r;
}

Complex da_phi(const DAParams& p, std::span<const Complex> z, const QContext& ctx) {
    const int n = p.n();
    const auto b = values(p.b, ctx);
    Complex r = 1.0 / z[0];
    for (const auto& bi : b) r *= bi - z[0];
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) r *= z[static_cast<std::size_t>(k)] - b[static_cast<std::size_t>(j)];
    return r;
}

Complex gus_phi(const GUSParams& p, std::span<const Complex> z, const QContext& ctx) {
    const int n = p.n();
    const auto a = values(p.a, ctx);
    const auto b = values(p.b, ctx);
    Complex r = 1.0;
    for (int i = 0; i <= n; ++i) r *= (1.0 - z[0] / a[static_cast<std::size_t>(i)]) * (1.0 - b[static_cast<std::size_t>(i)] * z[static_cast<std::size_t>(n)]);
    for (int k = 1; k < n; ++k) r *= z[static_cast<std::size_t>(k)];
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) r *= z[static_cast<std::size_t>(k)] - a[static_cast<std::size_t>(j)];
    return r;
}

Complex mg_anabla_phi(const MGParams& p, std::span<const Complex> z, const QContext& ctx, double* magnitude) {
    if (magnitude) *magnitude = 0.0;
    const PointFunction phi = [&](std::span<const Complex> v) { return mg_phi(p, v, ctx); };
    const ShiftRatio ratio = [&](std::span<const Complex> v, int i) { return mg_shift_ratio(p, v, i, ctx); };
    return skew_symmetrize([&](std::span<const Complex> v) { return nabla(phi, ratio, 0, v, ctx.q, magnitude); }, z);
}

Complex da_anabla_phi(const DAParams& p, std::span<const Complex> z, const QContext& ctx, double* magnitude) {
    if (magnitude) *magnitude = 0.0;
    const PointFunction phi = [&](std::span<const Complex> v) { return da_phi(p, v, ctx); };
    const ShiftRatio ratio = [&](std::span<const Complex> v, int i) { return da_dual_shift_ratio(p, v, i, ctx); };
    return skew_symmetrize([&](std::span<const Complex> v) { return nabla(phi, ratio, 0, v, ctx.q, magnitude); }, z);
}

Complex gus_anabla_phi(const GUSParams& p, std::span<const Complex> z, const QContext& ctx, double* magnitude) {
    if (magnitude) *magnitude = 0.0;
    const int n = p.n();
    const PointFunction phi = [&](std::span<const Complex> v) { return gus_phi(p, v, ctx); };
    const PairShiftRatio ratio = [&](std::span<const Complex> v, int i, int j) {
        return gus_pair_shift_ratio(p, v, i, j, ctx);
    };
    return skew_symmetrize([&](std::span<const Complex> v) { return nabla_pair(phi, ratio, 0, n, v, ctx.q, magnitude); }, z);
}

ExpansionCoefficients mg_expansion_coefficients(const MGParams& p, const QContext& ctx) {
    const int n = p.n();
    const Complex qa = q_power(p.alpha, ctx);
    const Complex prod_a = q_power(sum_of(p.a), ctx);
    const Complex prod_ab = q_power(sum_of(p.a) + sum_of(p.b), ctx);
    const double s = sign_pow(n * (n - 1) / 2);
    return {s * sign_pow(n - 1) * (1.0 - qa), s * sign_pow(n) * (1.0 - qa * prod_ab) / prod_a};
}

Complex mg_anabla_expansion(const MGParams& p, std::span<const Complex> z, const QContext& ctx) {
    const auto c = mg_expansion_coefficients(p, ctx);
    return (c.c0 + c.c1 * product(z)) * vandermonde(z);
}

ExpansionCoefficients da_expansion_coefficients(const DAParams& p, const QContext& ctx) {
    const int n = p.n();
    const auto a = values(p.a, ctx);
    const Complex b1 = q_power(p.b[0], ctx);
    const Complex inv_prod_a = q_power(-sum_of(p.a), ctx);
    Complex c0 = -inv_prod_a / b1;
    for (const auto& ai : a) c0 *= 1.0 - ai * b1;
    const Complex c1 = sign_pow(n) * std::pow(b1, n - 1) * inv_prod_a * (1.0 - q_power(p.exponent_sum(), ctx));
    return {c0, c1};
}

Complex da_anabla_expansion(const DAParams& p, std::span<const Complex> z, const QContext& ctx) {
    const auto c = da_expansion_coefficients(p, ctx);
    return (c.c0 + c.c1 * e_poly(q_power(p.b[0], ctx), z) / product(z)) * vandermonde(z);
}

ExpansionCoefficients gus_expansion_coefficients(const GUSParams& p, const QContext& ctx) {
    const int n = p.n();
    const Complex a1 = q_power(p.a[0], ctx);
    const Complex lead = sign_pow(n + 1) * 2.0 * std::pow(a1, n) * q_power(sum_of(p.b), ctx);
    Complex c0 = sign_pow(n + 1) * lead;
    for (const auto& bi : values(p.b, ctx)) c0 *= 1.0 - 1.0 / (a1 * bi);
    const Complex c1 = sign_pow(n) * lead * (1.0 - q_power(-p.exponent_sum(), ctx));
    return {c0, c1};
}

Complex gus_balanced_c0(const GUSParams& p, const QContext& ctx) {
    return gus_expansion_coefficients(p, ctx).c0 * (1.0 - q_power(p.d - sum_of(p.a), ctx));
}

Complex gus_anabla_expansion(const GUSParams& p, std::span<const Complex> z, bool balanced, const QContext& ctx) {
    const auto c = gus_expansion_coefficients(p, ctx);
    const Complex a1 = q_power(p.a[0], ctx);
    const Complex head = balanced ? gus_balanced_c0(p, ctx)
                                  : c.c0 * (1.0 - product(z) * q_power(-sum_of(p.a), ctx));
    return (head + c.c1 * e_poly(a1, z)) * vandermonde(z);
}

}  // namespace qjackson
