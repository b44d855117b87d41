#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qjackson/errors.hpp"
#include "qjackson/qcore.hpp"

using namespace qjackson;

namespace {

std::vector<Complex> random_values(std::uint32_t seed, int count) {
    std::mt19937 g(seed);
    std::uniform_real_distribution<double> r(0.2, 1.8);
    std::uniform_real_distribution<double> ph(-3.0, 3.0);
    std::vector<Complex> out;
    for (int k = 0; k < count; ++k) out.push_back(std::polar(r(g), ph(g)));
    return out;
}

}  // namespace

TEST(QPochhammer, InfiniteProductMatchesDirectProduct) {
    for (double q : {0.1, 0.5, 0.8}) {
        QContext ctx;
        ctx.q = q;
        for (const auto& a : random_values(1, 40)) EXPECT_LT(oracle::rel(qpoch_inf(a, ctx), oracle::poch_inf(a, q)), 1e-12);
    }
}

TEST(QPochhammer, FiniteProductMatchesDirectProduct) {
    QContext ctx;
    for (const auto& a : random_values(2, 20))
        for (int N : {0, 1, 2, 7, 30}) EXPECT_LT(oracle::rel(qpoch_n(a, N, ctx), oracle::poch_n(a, N, ctx.q)), 1e-12);
}

TEST(QPochhammer, NegativeLengthIsQuotient) {
    QContext ctx;
    for (const auto& a : random_values(3, 20)) {
        for (int N : {1, 3, 6}) {
            const Complex shifted = a * std::pow(ctx.q, -N);
            EXPECT_LT(oracle::rel(qpoch_n(a, -N, ctx), oracle::poch_inf(a, ctx.q) / oracle::poch_inf(shifted, ctx.q)),
                      1e-11);
        }
    }
}

TEST(QPochhammer, ExponentFormAgreesWithValueForm) {
    QContext ctx;
    std::mt19937 g(4);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int k = 0; k < 40; ++k) {
        const Complex w{u(g), u(g)};
        EXPECT_LT(oracle::rel(qpoch_exp(w, ctx), oracle::poch_inf(oracle::qpow(ctx.q, w), ctx.q)), 1e-11);
        EXPECT_LT(oracle::rel(theta_exp(w, ctx), oracle::theta_series(oracle::qpow(ctx.q, w), ctx.q)), 1e-11);
    }
}

TEST(QPochhammer, ExactZeroAtNonPositiveIntegerExponent) {
    QContext ctx;
    EXPECT_EQ(qpoch_exp(0.0, ctx), Complex(0.0));
    EXPECT_EQ(qpoch_exp(-3.0, ctx), Complex(0.0));
    EXPECT_NE(qpoch_exp(1.0, ctx), Complex(0.0));
}

TEST(Theta, MatchesTripleProductSeries) {
    for (double q : {0.3, 0.5, 0.7}) {
        QContext ctx;
        ctx.q = q;
        for (const auto& x : random_values(5, 30)) EXPECT_LT(oracle::rel(theta(x, ctx), oracle::theta_series(x, q)), 1e-11);
    }
}

TEST(Theta, QuasiPeriodicity) {
    QContext ctx;
    for (const auto& x : random_values(6, 50)) {
        const Complex lhs = theta(ctx.q * x, ctx);
        const Complex rhs = -theta(x, ctx) / x;
        EXPECT_LT(oracle::rel(lhs, rhs), 1e-12);
    }
}

TEST(Theta, Reflection) {
    QContext ctx;
    for (const auto& x : random_values(7, 50)) EXPECT_LT(oracle::rel(theta(ctx.q / x, ctx), theta(x, ctx)), 1e-12);
}

TEST(Theta, VanishesOnIntegerPowersOfQ) {
    QContext ctx;
    for (int k = -4; k <= 4; ++k) EXPECT_EQ(theta_exp(static_cast<double>(k), ctx), Complex(0.0));
}

TEST(QContext, ValidationRejectsBadBase) {
    QContext ctx;
    ctx.q = 1.0;
    EXPECT_THROW(ctx.validate(), ConfigError);
    ctx.q = 0.0;
    EXPECT_THROW(ctx.validate(), ConfigError);
    ctx.q = 0.5;
    ctx.lattice_cutoff = 0;
    EXPECT_THROW(ctx.validate(), ConfigError);
}

TEST(QPower, MatchesExpLog) {
    QContext ctx;
    ctx.q = 0.37;
    for (const auto& w : random_values(8, 20)) EXPECT_LT(oracle::rel(q_power(w, ctx), oracle::qpow(ctx.q, w)), 1e-14);
}
