#include <gtest/gtest.h>

#include <numeric>

#include "oracles.hpp"
#include "qjackson/families.hpp"
#include "qjackson/verify.hpp"

using namespace qjackson;
using oracle::qpow;

namespace {

constexpr int kDraws = 10;

MGParams mg(int n, std::uint64_t seed) { return std::get<MGParams>(sample_params(Family::MG, n, seed, QContext{})); }
DAParams da(int n, std::uint64_t seed) { return std::get<DAParams>(sample_params(Family::DA, n, seed, QContext{})); }
GUSParams gus(int n, std::uint64_t seed) {
    return std::get<GUSParams>(sample_params(Family::GUS, n, seed, QContext{}));
}

// (q^{1+z-a_j})_inf / (q^{b_j+z})_inf over all j
oracle::C pair_ratio(const std::vector<Complex>& a, const std::vector<Complex>& b, Complex z, double q) {
    oracle::C r = 1.0;
    for (std::size_t j = 0; j < a.size(); ++j) r *= oracle::poch_ratio(qpow(q, 1.0 + z - a[j]), qpow(q, b[j] + z), q);
    return r;
}

}  // namespace

TEST(MilneGustafson, OneDimensionalSumIsRamanujanPsi) {
    QContext ctx;
    const double q = ctx.q;
    for (int s = 0; s < kDraws; ++s) {
        const auto p = mg(1, 100 + s);
        const auto x = sample_point(p, 200 + s);
        const Complex a = p.a[0], b = p.b[0], xi = x.xi[0];
        const oracle::C closed = (1.0 - q) * qpow(q, p.alpha * xi) * oracle::poch_ratio(qpow(q, 1.0 + xi - a), qpow(q, b + xi), q) *
                                 oracle::psi11_closed(qpow(q, b + xi), qpow(q, 1.0 + xi - a), qpow(q, p.alpha), q);
        const oracle::C direct = oracle::mg1_direct(a, b, p.alpha, xi, q, -200, 200);
        EXPECT_LT(oracle::rel(direct, closed), 1e-10) << p.echo();

        const SumResult lib = sum_weight(mg_weight(p), x, Cycle::Box, ctx);
        EXPECT_LT(oracle::rel(lib.value, closed), 1e-9) << p.echo();
        EXPECT_LT(oracle::rel(mg_rhs(p, x, ctx), closed), 1e-10) << p.echo();
    }
}

TEST(MilneGustafson, TruncatedSumIsQBinomial) {
    QContext ctx;
    ctx.identity_tol = 1e-12;  // sum well past the 1e-10 comparison
    for (int s = 0; s < kDraws; ++s) {
        const auto p = mg(1, 300 + s);
        const oracle::C series = oracle::mg1_truncated_series(p.a[0], p.b[0], p.alpha, ctx.q);
        const SumResult lib = sum_weight(mg_weight(p), ExponentPoint(p.a), Cycle::Fan, ctx);
        EXPECT_LT(oracle::rel(lib.value, series), 1e-10) << p.echo();
        EXPECT_LT(oracle::rel(mg_truncated_rhs(p, ctx), series), 1e-10) << p.echo();
    }
}

TEST(MilneGustafson, DualTruncatedSumIsQBinomial) {
    QContext ctx;
    ctx.identity_tol = 1e-12;
    for (int s = 0; s < kDraws; ++s) {
        const auto p = mg(1, 400 + s);
        const oracle::C series = oracle::mg1_truncated_series(p.b[0], p.a[0], p.beta(), ctx.q);
        const SumResult lib = sum_weight(mg_dual_weight(p), ExponentPoint(p.b), Cycle::Fan, ctx);
        EXPECT_LT(oracle::rel(lib.value, series), 1e-10) << p.echo();
        EXPECT_LT(oracle::rel(mg_dual_truncated_rhs(p, ctx), series), 1e-10) << p.echo();
    }
}

TEST(MilneGustafson, TwoDimensionalSumMatchesDirectLoops) {
    QContext ctx;
    const double q = ctx.q;
    for (int s = 0; s < 3; ++s) {
        const auto p = mg(2, 500 + s);
        const auto x = sample_point(p, 600 + s);
        const int K = 90;
        oracle::C direct = 0.0;
        for (int i = -K; i <= K; ++i) {
            for (int j = -K; j <= K; ++j) {
                const Complex z1 = x.xi[0] + static_cast<double>(i), z2 = x.xi[1] + static_cast<double>(j);
                direct += qpow(q, p.alpha * (z1 + z2)) * pair_ratio(p.a, p.b, z1, q) * pair_ratio(p.a, p.b, z2, q) *
                          (qpow(q, z2) - qpow(q, z1));
            }
        }
        direct *= (1.0 - q) * (1.0 - q);
        const SumResult lib = sum_weight(mg_weight(p), x, Cycle::Box, ctx);
        EXPECT_LT(oracle::rel(lib.value, direct), 1e-8) << p.echo();
    }
}

TEST(MilneGustafson, DualSwapIsAnInvolution) {
    for (int n = 1; n <= 3; ++n) {
        const auto p = mg(n, 700 + n);
        const auto back = p.dual_swap().dual_swap();
        EXPECT_EQ(back.a, p.a);
        EXPECT_EQ(back.b, p.b);
        EXPECT_LT(std::abs(back.alpha - p.alpha), 1e-15);
        const Complex sum = std::accumulate(p.a.begin(), p.a.end(), Complex(0.0)) +
                            std::accumulate(p.b.begin(), p.b.end(), Complex(0.0));
        EXPECT_LT(std::abs(p.beta() - (1.0 - sum - p.alpha)), 1e-14);
        EXPECT_LT(std::abs(p.dual_swap().beta() - p.alpha), 1e-14);
    }
}

TEST(MilneGustafson, ValidationRejectsDivergentParameters) {
    MGParams p;
    p.a = {0.1};
    p.b = {0.2};
    p.alpha = -0.1;
    EXPECT_THROW(p.validate(), DomainError);
    p.alpha = 0.9;  // beta = 1 - 0.3 - 0.9 < 0
    EXPECT_THROW(p.validate(), DomainError);
    p.alpha = 0.5;
    EXPECT_NO_THROW(p.validate());
}

TEST(DixonAnderson, OneDimensionalSumMatchesDirectLoop) {
    QContext ctx;
    const double q = ctx.q;
    for (int s = 0; s < kDraws; ++s) {
        const auto p = da(1, 800 + s);
        const auto x = sample_point(p, 900 + s);
        oracle::C direct = 0.0;
        for (int k = -400; k <= 400; ++k) {
            const Complex z = x.xi[0] + static_cast<double>(k);
            direct += qpow(q, z) * pair_ratio(p.a, p.b, z, q);
        }
        direct *= 1.0 - q;
        const SumResult lib = sum_weight(da_weight(p), x, Cycle::Box, ctx);
        EXPECT_LT(oracle::rel(lib.value, direct), 1e-9) << p.echo();
    }
}

TEST(Gustafson, OneDimensionalBalancedSumMatchesDirectLoop) {
    QContext ctx;
    const double q = ctx.q;
    for (int s = 0; s < kDraws; ++s) {
        const auto p = gus(1, 1000 + s);
        const auto x = sample_point(p, 1100 + s);
        oracle::C direct = 0.0;
        for (int k = -300; k <= 300; ++k) {
            const Complex z1 = x.xi[0] + static_cast<double>(k);
            const Complex z2 = p.d - z1;
            direct += pair_ratio(p.a, p.b, z1, q) * pair_ratio(p.a, p.b, z2, q) * (qpow(q, z2) - qpow(q, z1));
        }
        direct *= 1.0 - q;
        const SumResult lib = sum_weight(gus_weight(p), x, Cycle::Box, ctx);
        EXPECT_LT(oracle::rel(lib.value, direct), 1e-9) << p.echo();
    }
}

TEST(Gustafson, UnitWeightConstant) {
    for (double q : {0.3, 0.5, 0.7}) {
        QContext ctx;
        ctx.q = q;
        for (int n = 1; n <= 3; ++n) {
            const oracle::C expect = std::pow(1.0 - q, n) * std::pow(oracle::poch_inf(q, q), n);
            EXPECT_LT(oracle::rel(gus_k0_value(n, ctx), expect), 1e-13);
        }
    }
}

TEST(Sampler, DrawsAreReproducibleAndDistinct) {
    QContext ctx;
    for (Family f : {Family::MG, Family::DA, Family::GUS}) {
        const auto p1 = sample_params(f, 2, 42, ctx);
        const auto p2 = sample_params(f, 2, 42, ctx);
        const auto p3 = sample_params(f, 2, 43, ctx);
        const auto e = [](const FamilyParams& p) { return std::visit([](const auto& v) { return v.echo(); }, p); };
        EXPECT_EQ(e(p1), e(p2));
        EXPECT_NE(e(p1), e(p3));
    }
}

TEST(Sampler, MilneGustafsonDrawsConverge) {
    for (int s = 0; s < 50; ++s) {
        for (auto r : {SampleRegion::Standard, SampleRegion::AlphaStep, SampleRegion::DualAlphaStep}) {
            const auto p = std::get<MGParams>(sample_params(Family::MG, 2, s, QContext{}, r));
            EXPECT_NO_THROW(p.validate());
            if (r == SampleRegion::AlphaStep) EXPECT_GT(p.beta().real(), 1.0);
            if (r == SampleRegion::DualAlphaStep) EXPECT_GT(p.alpha.real(), 1.0);
        }
    }
}

TEST(Sampler, RejectsBadDimension) {
    EXPECT_THROW(sample_params(Family::MG, 0, 1, QContext{}), ConfigError);
    EXPECT_THROW(sample_params(Family::MG, kMaxDim + 1, 1, QContext{}), ConfigError);
}
