#pragma once

#include <array>
#include <cstdint>

#include "srlnc/rng.hpp"

namespace srlnc::gf {

// Binary extension field GF(2^e), e in [1, 8]. Elements are 0 .. 2^e - 1 in
// the usual polynomial-basis encoding, so addition is XOR. Multiplication
// and inversion go through log/antilog tables built at construction against
// a fixed primitive reduction polynomial per degree.
class Field {
public:
    // Throws std::invalid_argument for degrees outside [1, 8] and
    // std::logic_error if the table construction checks fail.
    explicit Field(unsigned extension_degree);

    unsigned degree() const { return e_; }
    unsigned size() const { return q_; }  // q = 2^e
    uint16_t reduction_poly() const { return poly_; }

    uint8_t add(uint8_t a, uint8_t b) const { return a ^ b; }

    uint8_t mul(uint8_t a, uint8_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[unsigned(log_[a]) + unsigned(log_[b])];
    }

    // Multiplicative inverse; throws std::domain_error for 0.
    uint8_t inv(uint8_t a) const;

private:
    unsigned e_ = 0;
    unsigned q_ = 0;
    uint16_t poly_ = 0;
    std::array<uint8_t, 256> log_{};
    std::array<uint8_t, 510> exp_{};  // doubled so mul() skips a modulo
};

// Shared immutable field instances, one per extension degree in [1, 8].
const Field& field(unsigned extension_degree);

// Coefficient law for coding matrices: zero with probability p, each of the
// q - 1 nonzero elements with probability (1 - p) / (q - 1). p == 1/q makes
// every element equally likely (classic dense coding); p > 1/q thins the
// matrix out (sparse coding).
class CodingDistribution {
public:
    // Throws std::invalid_argument if zero_prob is outside [0, 1].
    CodingDistribution(const Field& f, double zero_prob);

    const Field& field() const { return *field_; }
    double zero_prob() const { return p_; }
    bool classic() const { return p_ == 1.0 / double(field_->size()); }
    bool sparse() const { return p_ > 1.0 / double(field_->size()); }

    uint8_t sample(rng::Stream& rs) const {
        if (rs.uniform() < p_) return 0;
        return uint8_t(1 + rs.below(field_->size() - 1));
    }

private:
    const Field* field_;
    double p_;
};

}  // namespace srlnc::gf
