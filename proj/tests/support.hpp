#pragma once

// Shared test helpers: exhaustive enumeration of small binary matrices and
// independent little oracles that deliberately avoid the library's own
// elimination code paths.

#include <bit>
#include <cmath>
#include <cstdint>

#include "srlnc/coding.hpp"
#include "srlnc/gf.hpp"

namespace testsupport {

inline srlnc::coding::DecodingMatrix matrix_from_bits(unsigned k, unsigned n,
                                                      uint64_t bits) {
    srlnc::coding::DecodingMatrix m;
    m.k = k;
    m.n = n;
    m.field = &srlnc::gf::field(1);
    m.entries.resize(size_t(k) * n);
    for (size_t i = 0; i < m.entries.size(); ++i) m.entries[i] = uint8_t((bits >> i) & 1);
    return m;
}

// Exact full-rank probability of a k x n binary matrix with iid entries,
// P(entry = 0) = p, by weighing every assignment.
inline double exhaustive_full_rank_prob(unsigned k, unsigned n, double p) {
    unsigned cells = k * n;
    double prob = 0.0;
    for (uint64_t bits = 0; bits < (uint64_t(1) << cells); ++bits) {
        auto m = matrix_from_bits(k, n, bits);
        if (srlnc::coding::is_full_rank(m)) {
            unsigned ones = unsigned(std::popcount(bits));
            prob += std::pow(1.0 - p, double(ones)) * std::pow(p, double(cells - ones));
        }
    }
    return prob;
}

// Independent rank definition: size of the largest row subset none of whose
// nonempty sub-subsets XORs to the zero vector. Exponential, for tiny k.
inline unsigned rank_by_independent_subsets(const srlnc::coding::DecodingMatrix& m) {
    unsigned best = 0;
    for (uint32_t mask = 1; mask < (uint32_t(1) << m.k); ++mask) {
        bool independent = true;
        for (uint32_t sub = mask; sub != 0 && independent; sub = (sub - 1) & mask) {
            bool zero = true;
            for (unsigned j = 0; j < m.n && zero; ++j) {
                unsigned acc = 0;
                for (unsigned i = 0; i < m.k; ++i)
                    if (sub >> i & 1) acc ^= m.at(i, j);
                if (acc) zero = false;
            }
            if (zero) independent = false;
        }
        if (independent) best = std::max(best, unsigned(std::popcount(mask)));
    }
    return best;
}

}  // namespace testsupport
