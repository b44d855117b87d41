#pragma once

#include "qjackson/qcore.hpp"

namespace qjackson {

// Accumulates a product of q-Pochhammer symbols, theta functions, q-powers and
// plain factors in log space. Zeros and poles are tracked separately.
class LogProduct {
public:
    explicit LogProduct(const QContext& ctx) : ctx_(&ctx) {}

    LogProduct& poch(Complex w, int power = 1);   // (q^w)_inf ^ power
    LogProduct& theta(Complex w, int power = 1);  // theta(q^w) ^ power
    LogProduct& qpow(Complex e);                  // q^e
    LogProduct& factor(Complex c, int power = 1);
    LogProduct& log_add(Complex l);

    bool is_zero() const { return zeros_ > 0 && poles_ == 0; }
    Complex log_value() const { return log_; }
    // throws NonFinite at a pole
    Complex value() const;

private:
    void absorb(Complex l, int power);

    const QContext* ctx_;
    Complex log_ = 0.0;
    int zeros_ = 0;
    int poles_ = 0;
};

}  // namespace qjackson
