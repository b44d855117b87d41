#pragma once

// Reference values computed by the most direct route available: plain loops,
// no shared code with the library beyond the Complex typedef.

#include <cmath>
#include <complex>

namespace oracle {

using C = std::complex<double>;

// q^e for a complex exponent
inline C qpow(double q, C e) { return std::exp(e * std::log(q)); }

// (a; q)_inf by multiplying factors until they stop changing the product
inline C poch_inf(C a, double q) {
    C r = 1.0;
    C t = a;
    for (int k = 0; k < 4000; ++k) {
        r *= 1.0 - t;
        if (std::abs(t) < 1e-18) break;
        t *= q;
    }
    return r;
}

// (A)_inf / (B)_inf factor by factor, so huge leading factors cancel instead of overflowing
inline C poch_ratio(C A, C B, double q) {
    C r = 1.0;
    for (int k = 0; k < 8000; ++k) {
        r *= (1.0 - A) / (1.0 - B);
        if (std::abs(A) < 1e-18 && std::abs(B) < 1e-18) break;
        A *= q;
        B *= q;
    }
    return r;
}

// (a; q)_N, N >= 0
inline C poch_n(C a, int N, double q) {
    C r = 1.0;
    for (int k = 0; k < N; ++k) r *= 1.0 - a * std::pow(q, k);
    return r;
}

// theta(x) = (x)_inf (q/x)_inf via the triple product:
// (q)_inf theta(x) = sum_k (-1)^k q^{k(k-1)/2} x^k
inline C theta_series(C x, double q) {
    C s = 0.0;
    for (int k = -60; k <= 60; ++k) {
        const double sign = (k % 2) ? -1.0 : 1.0;
        s += sign * std::pow(q, 0.5 * k * (k - 1)) * std::pow(x, k);
    }
    return s / poch_inf(q, q);
}

// sum_{k>=0} (A)_k / (q)_k Z^k by term recursion, |Z| < 1
inline C qbinomial_series(C A, C Z, double q) {
    C s = 0.0;
    C t = 1.0;
    for (int k = 0; k < 5000; ++k) {
        s += t;
        t *= (1.0 - A * std::pow(q, k)) * Z / (1.0 - std::pow(q, k + 1));
        if (std::abs(t) < 1e-20 * std::abs(s)) break;
    }
    return s;
}

// Ramanujan's sum_{k in Z} (A)_k / (B)_k Z^k for |B/A| < |Z| < 1
inline C psi11_closed(C A, C B, C Z, double q) {
    return poch_inf(q, q) * poch_inf(B / A, q) * poch_inf(A * Z, q) * poch_inf(q / (A * Z), q) /
           (poch_inf(B, q) * poch_inf(q / A, q) * poch_inf(Z, q) * poch_inf(B / (A * Z), q));
}

// the same bilateral series summed directly, (A)_{-k} = 1 / (A q^{-k})_k
inline C psi11_series(C A, C B, C Z, double q, int K = 400) {
    C s = 1.0;
    C up = 1.0;
    C down = 1.0;
    for (int k = 1; k <= K; ++k) {
        up *= (1.0 - A * std::pow(q, k - 1)) / (1.0 - B * std::pow(q, k - 1)) * Z;
        down *= (1.0 - B * std::pow(q, -k)) / (1.0 - A * std::pow(q, -k)) / Z;
        s += up + down;
    }
    return s;
}

// the one-dimensional Milne-Gustafson weight sum_{nu >= lo} q^{alpha (xi + nu)} (q^{1 + xi + nu - a})_inf / (q^{b + xi + nu})_inf,
// times (1 - q); lo = 0 for the truncated cycle, lo = -K for the bilateral one
inline C mg1_direct(C a, C b, C alpha, C xi, double q, int lo, int hi) {
    C s = 0.0;
    for (int nu = lo; nu <= hi; ++nu) {
        const C z = xi + static_cast<double>(nu);
        s += qpow(q, alpha * z) * poch_ratio(qpow(q, 1.0 + z - a), qpow(q, b + z), q);
    }
    return (1.0 - q) * s;
}

// truncated one-dimensional sum at x = a through the q-binomial theorem's series side:
// (1 - q) a^alpha (q)_inf / (ab)_inf * sum (ab)_k / (q)_k q^{alpha k}
inline C mg1_truncated_series(C a, C b, C alpha, double q) {
    return (1.0 - q) * qpow(q, alpha * a) * poch_inf(q, q) / poch_inf(qpow(q, a + b), q) *
           qbinomial_series(qpow(q, a + b), qpow(q, alpha), q);
}

inline double rel(C x, C y) { return std::abs(x - y) / std::abs(y); }

}  // namespace oracle
