#pragma once

#include <functional>
#include <span>
#include <vector>

#include "qjackson/lattice.hpp"
#include "qjackson/qcore.hpp"

namespace qjackson {

enum class Family { MG, DA, GUS };
enum class Variant { Primal, Dual, Regularized, Tilde, Macdonald, K0 };

const char* family_name(Family f);
const char* variant_name(Variant v);

inline constexpr int kMaxDim = 6;

// (q^{u})_inf^{power} with u = coefs.zeta + shift + int_shift. The integer part is
// kept apart so that arguments which should vanish do so exactly.
struct PochFactor {
    std::vector<int> coefs;
    Complex shift = 0.0;
    int int_shift = 0;
    int power = 1;
};

// q^{exponent * (coefs.zeta)}
struct PowerFactor {
    std::vector<int> coefs;
    Complex exponent = 0.0;
};

enum class PolyKind {
    One,
    Vandermonde,      // prod_{i<j} (z_j - z_i)
    DualVandermonde,  // prod_{i<j} (z_i - z_j)
    Balanced          // prod_{i<j<=n+1} (z_j - z_i), z_{n+1} = q^{delta - sum zeta}
};

// A weight of the form exp(sum of log-Pochhammer and power terms) times a
// polynomial in z, for z_i = q^{zeta_i}.
struct WeightForm {
    Family family = Family::MG;
    Variant variant = Variant::Primal;
    int n = 1;
    std::vector<PochFactor> poch;
    std::vector<PowerFactor> powers;
    Complex log_constant = 0.0;
    Complex q_constant = 0.0;  // extra factor q^{q_constant}
    PolyKind poly = PolyKind::One;
    Complex delta = 0.0;
    // replaces the polynomial part when set; receives n values (n+1 for Balanced)
    std::function<Complex(std::span<const Complex>)> custom_poly;

    void add_poch(std::vector<int> coefs, Complex shift, int int_shift, int power);
    void add_power(std::vector<int> coefs, Complex exponent);

    // log of the non-polynomial part at exponent vector zeta
    Complex log_weight(std::span<const Complex> zeta, const QContext& ctx) const;
    Complex poly_value(std::span<const Complex> z) const;
    // weight times polynomial, evaluated pointwise
    Complex value(std::span<const Complex> zeta, const QContext& ctx) const;
};

std::vector<int> unit_coefs(int n, int i);
std::vector<int> total_coefs(int n, int sign = 1);

Complex vandermonde(std::span<const Complex> z);

// table-driven summand nu -> W(base q^nu) * poly(base q^nu)
LatticeFunction make_integrand(const WeightForm& w, const ExponentPoint& base, const QContext& ctx);

SumResult sum_weight(const WeightForm& w, const ExponentPoint& base, Cycle cycle, const QContext& ctx,
                     bool adaptive = true);

}  // namespace qjackson
