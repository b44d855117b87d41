#pragma once

#include <span>
#include <string>
#include <vector>

#include "qjackson/lattice.hpp"
#include "qjackson/qcore.hpp"
#include "qjackson/weight.hpp"

namespace qjackson {

// All parameters are q-exponents: a_i = q^{a[i]}, b_i = q^{b[i]}, d = q^{d}.

struct MGParams {
    std::vector<Complex> a;
    std::vector<Complex> b;
    Complex alpha = 0.0;

    int n() const { return static_cast<int>(a.size()); }
    // 1 - sum a - sum b - alpha
    Complex beta() const;
    // alpha <-> beta, a <-> b
    MGParams dual_swap() const;
    MGParams with_alpha(Complex al) const;
    // sizes and |q a^-1 b^-1| < |q^alpha| < 1; throws DomainError
    void validate() const;
    std::string echo() const;
};

struct DAParams {
    std::vector<Complex> a;  // n+1 entries
    std::vector<Complex> b;  // n+1 entries

    int n() const { return static_cast<int>(a.size()) - 1; }
    Complex exponent_sum() const;
    DAParams shift_a(int j, double k) const;
    DAParams shift_b(int j, double k) const;
    // q < |a_1...b_{n+1}|; with dual_recurrences also 1 < |a_1...b_{n+1}|
    void validate(bool dual_recurrences = false) const;
    std::string echo() const;
};

struct GUSParams {
    std::vector<Complex> a;  // n+1 entries
    std::vector<Complex> b;  // n+1 entries
    Complex d = 0.0;

    int n() const { return static_cast<int>(a.size()) - 1; }
    Complex exponent_sum() const;
    GUSParams shift_a(int j, double k) const;
    GUSParams shift_b(int j, double k) const;
    void validate() const;
    std::string echo() const;
};

SumSpec default_spec(int n, Cycle cycle, const QContext& ctx);

// ---- Milne-Gustafson ----
WeightForm mg_weight(const MGParams& p);
WeightForm mg_dual_weight(const MGParams& p);
WeightForm mg_macdonald_weight(const MGParams& p);

SumResult mg_lhs(const MGParams& p, const ExponentPoint& x, const SumSpec& spec, const QContext& ctx);
SumResult mg_dual_lhs(const MGParams& p, const ExponentPoint& x, const SumSpec& spec, const QContext& ctx);
SumResult mg_macdonald_sum(const MGParams& p, const ExponentPoint& x, const SumSpec& spec, const QContext& ctx);
Complex mg_macdonald_integrand(const MGParams& p, std::span<const int> nu, const ExponentPoint& base,
                               const QContext& ctx);

Complex mg_rhs(const MGParams& p, const ExponentPoint& x, const QContext& ctx);
Complex mg_truncated_rhs(const MGParams& p, const QContext& ctx);
Complex mg_dual_truncated_rhs(const MGParams& p, const QContext& ctx);
Complex mg_regularizer_h(const MGParams& p, const ExponentPoint& x, const QContext& ctx);
Complex mg_dual_regularizer_hbar(const MGParams& p, const ExponentPoint& x, const QContext& ctx);
// the x-independent constant C with I(x) = C h(x) theta(q^alpha x_1..x_n b_1..b_n)
Complex mg_constant(const MGParams& p, const QContext& ctx);
Complex mg_connection_coeff(const MGParams& p, const ExponentPoint& x, const ExponentPoint& y,
                            const QContext& ctx);
// h(x)/hbar(x^{-1}) in product form
Complex mg_reflective_factor(const MGParams& p, const ExponentPoint& x, const QContext& ctx);
// coefficient c with I(alpha) = c I(alpha+1)
Complex mg_alpha_step(const MGParams& p, const QContext& ctx);
// coefficient c with Ibar(alpha) = c Ibar(alpha-1)
Complex mg_dual_alpha_step(const MGParams& p, const QContext& ctx);
// T_{z_i} Phi / Phi as a rational function of the coordinate values
Complex mg_shift_ratio(const MGParams& p, std::span<const Complex> z, int i, const QContext& ctx);

// ---- Dixon-Anderson ----
WeightForm da_weight(const DAParams& p);
WeightForm da_dual_weight(const DAParams& p);

SumResult da_lhs(const DAParams& p, const ExponentPoint& x, const SumSpec& spec, const QContext& ctx);
SumResult da_dual_lhs(const DAParams& p, const ExponentPoint& x, const SumSpec& spec, const QContext& ctx);
// sum_i (-1)^{i-1} J(x with coordinate i removed); Box sums
Complex da_alternating_lhs(const DAParams& p, const ExponentPoint& xfull, const QContext& ctx,
                           std::int64_t* terms = nullptr);
// the same at xfull = a, where every term is a fan sum
Complex da_truncated_alternating_lhs(const DAParams& p, const QContext& ctx, std::int64_t* terms = nullptr);
Complex da_constant_c0(const DAParams& p, const QContext& ctx);
Complex da_alternating_rhs(const DAParams& p, const ExponentPoint& xfull, const QContext& ctx);
Complex da_evans_rhs(const DAParams& p, const QContext& ctx);
Complex da_regularizer_h(const DAParams& p, const ExponentPoint& x, const QContext& ctx);
Complex da_dual_regularizer_hbar(const DAParams& p, const ExponentPoint& x, const QContext& ctx);
Complex da_reflective_factor(const DAParams& p, const ExponentPoint& x, const QContext& ctx);
// closed form of the regularized truncated dual integral at x = b with b_i removed
Complex da_dual_truncated_rhs(const DAParams& p, int i, const QContext& ctx);
// b with coordinate i removed
ExponentPoint da_b_hat(const DAParams& p, int i);
ExponentPoint da_a_hat(const DAParams& p, int i);
// prod_i (q a_i^-1 b_{n+1}^-1)_inf / (b_i a_{n+1})_inf
Complex da_mg_bridge(const DAParams& p, const QContext& ctx);
// Milne-Gustafson parameters a_1..a_n, b_1..b_n, alpha = a_{n+1} + b_{n+1}
MGParams da_bridge_params(const DAParams& p);
// T_{z_i} Phibar / Phibar
Complex da_dual_shift_ratio(const DAParams& p, std::span<const Complex> z, int i, const QContext& ctx);
// coefficients of the dual recurrences at x = b-hat
Complex da_dual_a_step(const DAParams& p, int j, const QContext& ctx);
Complex da_dual_b_step(const DAParams& p, int j, const QContext& ctx);
Complex da_dual_reg_a_step(const DAParams& p, int j, const QContext& ctx);
Complex da_dual_reg_b_step(const DAParams& p, int j, const QContext& ctx);

// Evans' iterated form: endpoints x_0..x_n (exponents) and exponents s_0..s_n
struct EvansParams {
    std::vector<Complex> x;
    std::vector<Complex> s;
    int n() const { return static_cast<int>(x.size()) - 1; }
};
DAParams evans_to_da(const EvansParams& e);
// the iterated integral from x_{j-1} to x_j in each variable, as a sum of fan sums
Complex evans_iterated_lhs(const EvansParams& e, const QContext& ctx, std::int64_t* terms = nullptr);
Complex evans_iterated_rhs(const EvansParams& e, const QContext& ctx);

// ---- Gustafson A_n ----
WeightForm gus_weight(const GUSParams& p);
WeightForm gus_tilde_weight(const GUSParams& p);
WeightForm gus_macdonald_weight(const GUSParams& p);
WeightForm gus_k0_weight(int n, Complex d);

SumResult gus_lhs(const GUSParams& p, const ExponentPoint& x, const SumSpec& spec, const QContext& ctx);
SumResult gus_tilde_lhs(const GUSParams& p, const ExponentPoint& x, const SumSpec& spec, const QContext& ctx);
SumResult gus_macdonald_k0(const GUSParams& p, const ExponentPoint& x, const SumSpec& spec, const QContext& ctx);
Complex gus_regularizer_h(const GUSParams& p, const ExponentPoint& x, const QContext& ctx);
// symmetric form over n+1 coordinates with x_{n+1} = d / (x_1...x_n)
Complex gus_regularizer_h_symmetric(const GUSParams& p, const ExponentPoint& x, const QContext& ctx);
Complex gus_constant_rhs(const GUSParams& p, const QContext& ctx);
// K(a) when d = a_1...a_{n+1}
Complex gus_milne_rhs(const GUSParams& p, const QContext& ctx);
Complex gus_k_factor(const GUSParams& p, const ExponentPoint& x, const QContext& ctx);
Complex gus_k0_value(int n, const QContext& ctx);
Complex gus_a_step(const GUSParams& p, int j, const QContext& ctx);      // T_{a_j} K / K
Complex gus_b_step(const GUSParams& p, int j, const QContext& ctx);      // T_{b_j} K / K
Complex gus_reg_a_step(const GUSParams& p, int j, const QContext& ctx);  // T_{a_j} calK / calK
Complex gus_reg_b_step(const GUSParams& p, int j, const QContext& ctx);  // T_{b_j} calK / calK
// T_{z_j}^{-1} T_{z_i} Phi / Phi on n+1 coordinate values
Complex gus_pair_shift_ratio(const GUSParams& p, std::span<const Complex> z, int i, int j, const QContext& ctx);

}  // namespace qjackson
