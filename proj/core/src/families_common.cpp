#include <cstdio>
#include <string>

#include "internal.hpp"

namespace qjackson {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string echo_complex(Complex z) { return "(" + num(z.real()) + "," + num(z.imag()) + ")"; }

std::string echo_vector(const std::vector<Complex>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += echo_complex(v[i]);
    }
    return s + "]";
}

Complex sum_of(const std::vector<Complex>& v) {
    Complex s = 0.0;
    for (const auto& e : v) s += e;
    return s;
}

SumSpec default_spec(int n, Cycle cycle, const QContext& ctx) {
    SumSpec s;
    s.n = n;
    s.cycle = cycle;
    s.cutoff = ctx.lattice_cutoff;
    s.adaptive = ctx.adaptive;
    return s;
}

SumResult sum_with(const WeightForm& w, const ExponentPoint& x, const SumSpec& spec, const QContext& ctx) {
    if (spec.n != w.n || x.n() != w.n) throw ConfigError("dimension mismatch between point, spec and weight");
    return jackson_sum(make_integrand(w, x, ctx), spec, ctx);
}

}  // namespace qjackson
