#include "qjackson/logproduct.hpp"

#include <cmath>

namespace qjackson {

void LogProduct::absorb(Complex l, int power) {
    if (std::isinf(l.real()) && l.real() < 0) {
        if (power > 0)
            ++zeros_;
        else if (power < 0)
            ++poles_;
        return;
    }
    log_ += static_cast<double>(power) * l;
}

LogProduct& LogProduct::poch(Complex w, int power) {
    absorb(log_qpoch_exp(w, *ctx_), power);
    return *this;
}

LogProduct& LogProduct::theta(Complex w, int power) {
    absorb(log_qpoch_exp(w, *ctx_), power);
    absorb(log_qpoch_exp(1.0 - w, *ctx_), power);
    return *this;
}

LogProduct& LogProduct::qpow(Complex e) {
    log_ += e * ctx_->log_q();
    return *this;
}

LogProduct& LogProduct::factor(Complex c, int power) {
    if (c == Complex(0.0, 0.0)) {
        absorb({-INFINITY, 0.0}, power);
        return *this;
    }
    log_ += static_cast<double>(power) * std::log(c);
    return *this;
}

LogProduct& LogProduct::log_add(Complex l) {
    absorb(l, 1);
    return *this;
}

Complex LogProduct::value() const {
    if (poles_ > 0) throw NonFinite("closed form evaluated at a pole");
    if (zeros_ > 0) return 0.0;
    return require_finite(std::exp(log_), "closed form");
}

}  // namespace qjackson
