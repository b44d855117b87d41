#include "qjackson/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

namespace qjackson {

namespace {

// below this many points a pass runs on the calling thread
constexpr std::int64_t kParallelThreshold = 20000;
constexpr double kCancelFloor = 1e-6;

struct SliceSum {
    CompensatedComplexSum value;
    CompensatedSum shell_abs;
    CompensatedSum abs_total;
    bool non_finite = false;
};

void sum_slice(const LatticeFunction& f, const SumSpec& spec, int lead, SliceSum& out) {
    const int n = spec.n;
    const int M = spec.cutoff;
    const int lo = spec.lead_lo();
    std::vector<int> nu(static_cast<std::size_t>(n), lo);
    nu[0] = lead;
    const bool lead_on_shell = (spec.cycle == Cycle::Box) ? std::abs(lead) == M : lead == M;
    while (true) {
        const Complex v = f.eval(nu);
        if (!is_finite(v)) {
            out.non_finite = true;
            return;
        }
        out.value.add(v);
        out.abs_total.add(std::abs(v));
        bool on_shell = lead_on_shell;
        for (int i = 1; i < n && !on_shell; ++i)
            on_shell = (spec.cycle == Cycle::Box) ? std::abs(nu[i]) == M : nu[i] == M;
        if (on_shell) out.shell_abs.add(std::abs(v));

        int k = n - 1;
        while (k >= 1 && nu[k] == M) {
            nu[k] = lo;
            --k;
        }
        if (k < 1) break;
        ++nu[k];
    }
}

SumResult single_pass(const LatticeFunction& f, const SumSpec& spec, const QContext& ctx) {
    if (f.prepare) f.prepare(spec.cutoff);
    const int lo = spec.lead_lo();
    const int hi = spec.lead_hi();
    std::vector<SliceSum> slices(static_cast<std::size_t>(hi - lo + 1));

    const int workers = spec.term_count() < kParallelThreshold ? 1 : ctx.workers;
    const auto blocks = shell_partition(spec, workers);
    auto run_block = [&](const IndexRange& r) {
        for (int v = r.lo; v <= r.hi; ++v) sum_slice(f, spec, v, slices[static_cast<std::size_t>(v - lo)]);
    };
    if (blocks.size() == 1) {
        run_block(blocks.front());
    } else {
        std::vector<std::exception_ptr> errors(blocks.size());
        std::vector<std::thread> pool;
        pool.reserve(blocks.size());
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            pool.emplace_back([&, b] {
                try {
                    run_block(blocks[b]);
                } catch (...) {
                    errors[b] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    CompensatedComplexSum total;
    CompensatedSum shell;
    CompensatedSum abs_total;
    for (const auto& s : slices) {
        if (s.non_finite) throw NonFinite("lattice summand is not finite (pole on the lattice?)");
        total.merge(s.value);
        shell.add(s.shell_abs.sum());
        shell.add(s.shell_abs.compensation());
        abs_total.add(s.abs_total.value());
    }
    const double scale = std::pow(1.0 - ctx.q, spec.n);
    SumResult r;
    r.value = total.value() * scale;
    r.tail_estimate = shell.value() * scale;
    r.terms = spec.term_count();
    r.cutoff = spec.cutoff;
    // relative to |value|, unless the sum cancels by more than kCancelFloor
    const double reference = std::max(std::abs(r.value), kCancelFloor * abs_total.value() * scale);
    const double threshold = ctx.identity_tol * reference / 10.0;
    r.converged = r.tail_estimate <= threshold;
    return r;
}

}  // namespace

std::int64_t SumSpec::term_count() const {
    const std::int64_t side = (cycle == Cycle::Box) ? 2 * std::int64_t{cutoff} + 1 : std::int64_t{cutoff} + 1;
    std::int64_t t = 1;
    for (int i = 0; i < n; ++i) {
        if (t > (std::int64_t{1} << 62) / side) return std::int64_t{1} << 62;
        t *= side;
    }
    return t;
}

void CompensatedSum::add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
        comp_ += (sum_ - t) + x;
    else
        comp_ += (x - t) + sum_;
    sum_ = t;
}

void CompensatedComplexSum::merge(const CompensatedComplexSum& o) {
    re_.add(o.re_.sum());
    re_.add(o.re_.compensation());
    im_.add(o.im_.sum());
    im_.add(o.im_.compensation());
}

std::vector<IndexRange> shell_partition(const SumSpec& spec, int workers) {
    if (workers < 1) throw ConfigError("shell_partition needs at least one worker");
    const int lo = spec.lead_lo();
    const int count = spec.lead_hi() - lo + 1;
    const int blocks = std::min(workers, count);
    std::vector<IndexRange> out;
    int start = lo;
    for (int b = 0; b < blocks; ++b) {
        const int len = count / blocks + (b < count % blocks ? 1 : 0);
        out.push_back({start, start + len - 1});
        start += len;
    }
    return out;
}

SumResult jackson_sum(const LatticeFunction& f, const SumSpec& spec, const QContext& ctx) {
    if (spec.n < 1) throw ConfigError("lattice dimension must be positive");
    if (spec.cutoff < 1) throw ConfigError("lattice cutoff must be positive");
    if (spec.term_count() > ctx.max_terms) throw ConfigError("initial lattice exceeds max_terms");

    SumSpec cur = spec;
    while (true) {
        SumResult r = single_pass(f, cur, ctx);
        if (r.converged) return r;
        SumSpec next = cur;
        next.cutoff = cur.cutoff * 2;
        if (!spec.adaptive || next.term_count() > ctx.max_terms)
            throw NotConverged("lattice sum did not converge", r);
        cur = next;
    }
}

SumResult jackson_sum(const std::function<Complex(std::span<const int>)>& f, const SumSpec& spec,
                      const QContext& ctx) {
    return jackson_sum(LatticeFunction{nullptr, f}, spec, ctx);
}

}  // namespace qjackson
