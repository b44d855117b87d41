#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qjackson/qcore.hpp"

namespace qjackson {

enum class Cycle { Fan, Box };

struct SumSpec {
    int n = 1;
    Cycle cycle = Cycle::Box;
    int cutoff = 16;
    bool adaptive = true;

    std::int64_t term_count() const;
    // leading-coordinate range [lo, hi]
    int lead_lo() const { return cycle == Cycle::Box ? -cutoff : 0; }
    int lead_hi() const { return cutoff; }
};

struct SumResult {
    Complex value = 0.0;
    double tail_estimate = 0.0;
    std::int64_t terms = 0;
    bool converged = false;
    int cutoff = 0;
};

class NotConverged : public Error {
public:
    NotConverged(const std::string& what, SumResult partial)
        : Error(what), partial_(partial) {}
    const SumResult& partial() const { return partial_; }

private:
    SumResult partial_;
};

// Summand over the lattice. prepare(M) is called once per pass, before any
// eval, with the half-width in use; eval must then be safe to call concurrently.
struct LatticeFunction {
    std::function<void(int)> prepare;
    std::function<Complex(std::span<const int>)> eval;
};

// Error-free (Neumaier) accumulation.
class CompensatedSum {
public:
    void add(double x);
    double value() const { return sum_ + comp_; }
    double sum() const { return sum_; }
    double compensation() const { return comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class CompensatedComplexSum {
public:
    void add(Complex z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    // folds another partial sum in, keeping both of its components
    void merge(const CompensatedComplexSum& o);
    Complex value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

struct IndexRange {
    int lo = 0;  // inclusive range of the leading coordinate
    int hi = 0;
};

std::vector<IndexRange> shell_partition(const SumSpec& spec, int workers);

// (1-q)^n times the sum of f over the fan or box; doubles the cutoff when
// adaptive until the outer-shell tail is below identity_tol*|value|/10 (with
// |value| floored at 1e-6 of the absolute sum for cancelling sums).
// Throws NotConverged (carrying the last partial result) or NonFinite.
SumResult jackson_sum(const LatticeFunction& f, const SumSpec& spec, const QContext& ctx);
SumResult jackson_sum(const std::function<Complex(std::span<const int>)>& f, const SumSpec& spec,
                      const QContext& ctx);

}  // namespace qjackson
