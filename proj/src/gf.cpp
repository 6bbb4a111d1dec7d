#include "srlnc/gf.hpp"

#include <stdexcept>
#include <string>

namespace srlnc::gf {
namespace {

// Primitive reduction polynomials for degrees 1 through 8, low bit holding
// the constant term. Degree 4 is x^4 + x + 1, degree 8 is x^8 + x^4 + x^3 +
// x^2 + 1.
constexpr uint16_t kReductionPolys[8] = {0x3,  0x7,  0xB,  0x13,
                                         0x25, 0x43, 0x83, 0x11D};

unsigned poly_degree(uint16_t v) {
    unsigned d = 0;
    while (v >>= 1) ++d;
    return d;
}

// Remainder of num divided by den as polynomials over GF(2).
uint16_t poly_mod(uint16_t num, uint16_t den) {
    unsigned dd = poly_degree(den);
    while (num != 0 && poly_degree(num) >= dd)
        num ^= uint16_t(den << (poly_degree(num) - dd));
    return num;
}

}  // namespace

Field::Field(unsigned extension_degree) {
    if (extension_degree < 1 || extension_degree > 8)
        throw std::invalid_argument("field extension degree must be in [1, 8], got " +
                                    std::to_string(extension_degree));
    e_ = extension_degree;
    q_ = 1u << e_;
    poly_ = kReductionPolys[e_ - 1];

    // The reduction polynomial must be irreducible or the tables below would
    // not describe a field. Trial division by every lower-degree polynomial
    // is instant at these sizes.
    for (uint16_t d = 2; d < q_; ++d)
        if (poly_mod(poly_, d) == 0)
            throw std::logic_error("reduction polynomial is reducible");

    // Antilog table holds successive powers of x, stored twice so mul() can
    // index with a raw sum of logs.
    unsigned cur = 1;
    for (unsigned i = 0; i < q_ - 1; ++i) {
        exp_[i] = uint8_t(cur);
        exp_[i + (q_ - 1)] = uint8_t(cur);
        log_[cur] = uint8_t(i);
        cur <<= 1;
        if (cur & q_) cur ^= poly_;
    }

    // x must generate the whole multiplicative group (the polynomials above
    // are primitive); a short cycle would leave log/exp inconsistent.
    if (cur != 1) throw std::logic_error("generator power cycle did not close");
    for (unsigned v = 1; v < q_; ++v)
        if (exp_[log_[v]] != v)
            throw std::logic_error("reduction polynomial is not primitive");
}

uint8_t Field::inv(uint8_t a) const {
    if (a == 0) throw std::domain_error("zero has no multiplicative inverse");
    return exp_[(q_ - 1) - unsigned(log_[a])];
}

const Field& field(unsigned extension_degree) {
    if (extension_degree < 1 || extension_degree > 8)
        throw std::invalid_argument("field extension degree must be in [1, 8], got " +
                                    std::to_string(extension_degree));
    static const std::array<Field, 8> instances = {
        Field(1), Field(2), Field(3), Field(4),
        Field(5), Field(6), Field(7), Field(8)};
    return instances[extension_degree - 1];
}

CodingDistribution::CodingDistribution(const Field& f, double zero_prob)
    : field_(&f), p_(zero_prob) {
    if (!(zero_prob >= 0.0 && zero_prob <= 1.0))
        throw std::invalid_argument("zero probability must be in [0, 1], got " +
                                    std::to_string(zero_prob));
}

}  // namespace srlnc::gf
