#include <gtest/gtest.h>

#include <cmath>

#include "qjackson/lattice.hpp"

using namespace qjackson;

namespace {

// a rapidly decaying product function with complex phase
Complex gaussian(std::span<const int> nu) {
    Complex r = 1.0;
    for (std::size_t i = 0; i < nu.size(); ++i) {
        const double k = nu[i];
        r *= std::exp(-0.35 * k * k + Complex(0.0, 0.3 * (i + 1) * k));
    }
    return r;
}

Complex brute_box(int n, int K) {
    std::vector<int> nu(static_cast<std::size_t>(n), -K);
    Complex s = 0.0;
    while (true) {
        s += gaussian(nu);
        int k = n - 1;
        while (k >= 0 && nu[static_cast<std::size_t>(k)] == K) nu[static_cast<std::size_t>(k--)] = -K;
        if (k < 0) break;
        ++nu[static_cast<std::size_t>(k)];
    }
    return s;
}

}  // namespace

TEST(JacksonSum, BoxMatchesBruteForce) {
    QContext ctx;
    for (int n = 1; n <= 3; ++n) {
        SumSpec spec;
        spec.n = n;
        spec.cycle = Cycle::Box;
        spec.cutoff = 12;
        spec.adaptive = false;
        const SumResult r = jackson_sum(gaussian, spec, ctx);
        const Complex expect = std::pow(1.0 - ctx.q, n) * brute_box(n, 12);
        EXPECT_LT(std::abs(r.value - expect), 1e-14 * std::abs(expect)) << "n=" << n;
        EXPECT_EQ(r.terms, static_cast<std::int64_t>(std::pow(25, n)));
    }
}

TEST(JacksonSum, FanIsGeometricSeries) {
    QContext ctx;
    const Complex z{0.3, 0.4};
    SumSpec spec;
    spec.n = 2;
    spec.cycle = Cycle::Fan;
    const SumResult r = jackson_sum(
        [&](std::span<const int> nu) { return std::pow(z, nu[0]) * std::pow(z * z, nu[1]); }, spec, ctx);
    const Complex expect = (1.0 - ctx.q) * (1.0 - ctx.q) / ((1.0 - z) * (1.0 - z * z));
    EXPECT_LT(std::abs(r.value - expect), 1e-9 * std::abs(expect));
    EXPECT_TRUE(r.converged);
}

TEST(JacksonSum, FixedCutoffReportsNotConverged) {
    QContext ctx;
    SumSpec spec;
    spec.n = 1;
    spec.cycle = Cycle::Fan;
    spec.cutoff = 3;
    spec.adaptive = false;
    EXPECT_THROW(jackson_sum([](std::span<const int> nu) { return Complex(std::pow(0.9, nu[0])); }, spec, ctx),
                 NotConverged);
}

TEST(JacksonSum, WorkerCountDoesNotChangeBits) {
    SumSpec spec;
    spec.n = 3;
    spec.cycle = Cycle::Box;
    spec.cutoff = 20;
    spec.adaptive = false;
    QContext one;
    QContext four;
    four.workers = 4;
    const SumResult a = jackson_sum(gaussian, spec, one);
    const SumResult b = jackson_sum(gaussian, spec, four);
    EXPECT_EQ(a.value.real(), b.value.real());
    EXPECT_EQ(a.value.imag(), b.value.imag());
    EXPECT_EQ(a.tail_estimate, b.tail_estimate);
}

TEST(JacksonSum, NonFiniteSummandThrows) {
    QContext ctx;
    SumSpec spec;
    spec.n = 1;
    spec.cycle = Cycle::Fan;
    spec.cutoff = 4;
    EXPECT_THROW(jackson_sum([](std::span<const int> nu) { return nu[0] == 2 ? Complex(INFINITY) : Complex(1.0); },
                             spec, ctx),
                 NonFinite);
}

TEST(ShellPartition, CoversLeadingRangeOnce) {
    for (int workers : {1, 2, 3, 7, 100}) {
        SumSpec spec;
        spec.n = 2;
        spec.cycle = Cycle::Box;
        spec.cutoff = 9;
        const auto blocks = shell_partition(spec, workers);
        int expect = spec.lead_lo();
        for (const auto& b : blocks) {
            EXPECT_EQ(b.lo, expect);
            EXPECT_LE(b.lo, b.hi);
            expect = b.hi + 1;
        }
        EXPECT_EQ(expect, spec.lead_hi() + 1);
    }
}

TEST(CompensatedSum, RecoversCancelledLowOrderBits) {
    CompensatedComplexSum s;
    s.add(1e16);
    for (int k = 0; k < 1000; ++k) s.add(1.0);
    s.add(-1e16);
    EXPECT_EQ(s.value().real(), 1000.0);
}
