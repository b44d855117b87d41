#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qjackson/families.hpp"

namespace qjackson {

enum class CheckStatus { Pass, Fail, NotConverged, Error };

const char* status_name(CheckStatus s);

struct CheckReport {
    std::string check_id;
    std::string paper_anchor;  // neutral name of the identity being checked
    Complex lhs = 0.0;
    Complex rhs = 0.0;
    double rel_dev = 0.0;
    double tol = 0.0;
    bool passed = false;
    std::uint64_t seed = 0;
    std::string params_echo;
    std::int64_t terms = 0;
    std::int64_t elapsed_ms = 0;
    int trial = 0;
    CheckStatus status = CheckStatus::Fail;
};

// |lhs - rhs| / max(|rhs|, scale); with scale == 0 this is the plain relative
// deviation, falling back to |lhs| when rhs == 0
double relative_deviation(Complex lhs, Complex rhs, double scale = 0.0);

// fills rel_dev, passed and status; rel_dev == tol passes
void finish_report(CheckReport& r, double scale = 0.0);

// ---- algebra ----

class Permutation {
public:
    explicit Permutation(std::vector<int> image);  // 0-based images, throws DomainError if not bijective

    int size() const { return static_cast<int>(image_.size()); }
    int operator()(int i) const { return image_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& image() const { return image_; }
    int sign() const;
    Permutation inverse() const;
    // (sigma z)_i = z_{sigma(i)}
    std::vector<Complex> apply(std::span<const Complex> z) const;

    // all n! permutations in lexicographic order; throws DimensionTooLarge for n > kMaxDim
    static std::vector<Permutation> all(int n);

private:
    std::vector<int> image_;
};

using PointFunction = std::function<Complex(std::span<const Complex>)>;

// sum over sigma of sgn(sigma) f(sigma^{-1} z), on coordinate values
Complex skew_symmetrize(const PointFunction& f, std::span<const Complex> z);
// the same with f and z given in exponent form
Complex skew_symmetrize(const std::function<Complex(const ExponentPoint&)>& f, const ExponentPoint& z);

// ratio(z, i) = T_{z_i} Phi / Phi
using ShiftRatio = std::function<Complex(std::span<const Complex>, int)>;
// ratio(z, i, j) = T_{z_j}^{-1} T_{z_i} Phi / Phi
using PairShiftRatio = std::function<Complex(std::span<const Complex>, int, int)>;

// a non-null magnitude accumulates |phi(z)| + |ratio phi(shifted z)|
Complex nabla(const PointFunction& phi, const ShiftRatio& ratio, int i, std::span<const Complex> z, double q,
              double* magnitude = nullptr);
Complex nabla_pair(const PointFunction& phi, const PairShiftRatio& ratio, int i, int j, std::span<const Complex> z,
                   double q, double* magnitude = nullptr);

// e(c; z) = prod (1 - z_i / c)
Complex e_poly(Complex c, std::span<const Complex> z);

// the test functions whose skew-symmetrized nabla expands in a two-term basis
Complex mg_phi(const MGParams& p, std::span<const Complex> z, const QContext& ctx);
Complex da_phi(const DAParams& p, std::span<const Complex> z, const QContext& ctx);
Complex gus_phi(const GUSParams& p, std::span<const Complex> z, const QContext& ctx);  // n+1 values

// skew-symmetrized nabla of the test function, evaluated directly.
// magnitude, if given, receives the summed size of all the terms that cancel in it
Complex mg_anabla_phi(const MGParams& p, std::span<const Complex> z, const QContext& ctx, double* magnitude = nullptr);
Complex da_anabla_phi(const DAParams& p, std::span<const Complex> z, const QContext& ctx, double* magnitude = nullptr);
Complex gus_anabla_phi(const GUSParams& p, std::span<const Complex> z, const QContext& ctx,
                       double* magnitude = nullptr);

// the two-term closed forms
Complex mg_anabla_expansion(const MGParams& p, std::span<const Complex> z, const QContext& ctx);
Complex da_anabla_expansion(const DAParams& p, std::span<const Complex> z, const QContext& ctx);
// general n+1 point; with balanced=true uses the constant for z_1...z_{n+1} = d
Complex gus_anabla_expansion(const GUSParams& p, std::span<const Complex> z, bool balanced, const QContext& ctx);

struct ExpansionCoefficients {
    Complex c0 = 0.0;
    Complex c1 = 0.0;
};
ExpansionCoefficients mg_expansion_coefficients(const MGParams& p, const QContext& ctx);
ExpansionCoefficients da_expansion_coefficients(const DAParams& p, const QContext& ctx);
ExpansionCoefficients gus_expansion_coefficients(const GUSParams& p, const QContext& ctx);
Complex gus_balanced_c0(const GUSParams& p, const QContext& ctx);

// ---- checks ----

using FamilyParams = std::variant<MGParams, DAParams, GUSParams>;

struct Tolerances {
    double lattice = 1e-8;        // lattice-sum identities, n <= 2
    double lattice_high = 1e-6;   // lattice-sum identities, n >= 3
    double recurrence = 1e-9;
    double algebra = 1e-12;
    double asymptotic = 1e-3;
    double lattice_for(int n) const { return n >= 3 ? lattice_high : lattice; }
};

CheckReport check_poly_expansion_mg(const MGParams& p, std::span<const Complex> z, const QContext& ctx,
                                    double tol = 1e-12);
CheckReport check_poly_expansion_da(const DAParams& p, std::span<const Complex> z, const QContext& ctx,
                                    double tol = 1e-12);
// z has n+1 values with z_1...z_{n+1} = d
CheckReport check_poly_expansion_gus(const GUSParams& p, std::span<const Complex> z, const QContext& ctx,
                                     double tol = 1e-12);

// sum of Phi * A nabla phi over the cycle through x, against the sum of |Phi Delta|.
// The DA test function grows at infinity, so its sum only telescopes on the fan at b-hat_i.
CheckReport check_nabla_vanishing(const FamilyParams& p, const ExponentPoint& x, const QContext& ctx, double tol,
                                  Cycle cycle = Cycle::Box);

// I(alpha; x) = step * I(alpha + 1; x), Box sums
CheckReport check_recurrence_mg(const MGParams& p, const ExponentPoint& x, const QContext& ctx, double tol);
// Ibar(alpha; x) = step * Ibar(alpha - 1; x), Box sums
CheckReport check_recurrence_mg_dual(const MGParams& p, const ExponentPoint& x, const QContext& ctx, double tol);

enum class ShiftTarget { A, B };
// T_{a_j} or T_{b_j} of Jbar at x = b-hat_i (fan sums); regularized divides by hbar
CheckReport check_recurrence_da(const DAParams& p, int i, ShiftTarget t, int j, bool regularized,
                                const QContext& ctx, double tol);
// T_{a_j} or T_{b_j} of K at a generic x (Box sums); regularized divides by h
CheckReport check_recurrence_gus(const GUSParams& p, const ExponentPoint& x, ShiftTarget t, int j,
                                 bool regularized, const QContext& ctx, double tol);

enum class AsymptoticDirection {
    MGAlphaUp,    // I(alpha + N; a)
    MGAlphaDown,  // Ibar(alpha - N; b)
    DASpecial,    // Jbar at b-hat_{n+1} along the special direction
    GUSSpecial    // Ktilde at a along the special direction
};
const char* direction_name(AsymptoticDirection d);

// ratio of the fan sum to its leading term at each N; passes when |ratio - 1|
// strictly decreases along N_list and ends at or below tol
CheckReport check_asymptotic(const FamilyParams& p, AsymptoticDirection dir, const std::vector<int>& N_list,
                             const QContext& ctx, double tol = 1e-3);
// the ratio itself, for a single N
Complex asymptotic_ratio(const FamilyParams& p, AsymptoticDirection dir, int N, const QContext& ctx,
                         std::int64_t* terms = nullptr);

// ---- sampling ----

enum class SampleRegion {
    Standard,
    AlphaStep,     // MG with Re beta > 1, so alpha + 1 still converges
    DualAlphaStep  // MG with Re alpha > 1, so alpha - 1 still converges
};

FamilyParams sample_params(Family f, int n, std::uint64_t seed, const QContext& ctx,
                           SampleRegion region = SampleRegion::Standard);

// a generic point for the family: away from poles and from theta zeros of the closed forms
ExponentPoint sample_point(const FamilyParams& p, std::uint64_t seed, int dim = -1);

// ---- registry ----

struct CheckInfo {
    std::string name;    // e.g. "mg.theorem31"
    std::string suite;   // mg, da, gus, core, lemmas, asymptotics
    std::string anchor;  // neutral name of the identity
    std::vector<int> dims;  // dimensions the check supports; empty = dimension-free
};

const std::vector<CheckInfo>& registered_checks();

// check_id is "<name>" for dimension-free checks or "<name>.n<k>"
CheckReport check_identity(const std::string& check_id, const QContext& ctx, std::uint64_t seed,
                           const Tolerances& tols = {});

// seed for one trial of one check, derived from the run seed
std::uint64_t trial_seed(std::uint64_t run_seed, const std::string& check_id, int trial);

// ---- reports ----

std::string reports_to_json(const std::vector<CheckReport>& reports, bool timing = true);
std::string reports_to_csv(const std::vector<CheckReport>& reports, bool timing = true);
std::string reports_to_text(const std::vector<CheckReport>& reports);

}  // namespace qjackson
