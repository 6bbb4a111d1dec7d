#include "srlnc/coding.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace srlnc::coding {
namespace {

void check_subset_oracle_domain(const DecodingMatrix& m) {
    if (m.field == nullptr) throw std::invalid_argument("matrix has no field");
    if (m.field->size() != 2)
        throw std::invalid_argument("subset oracles are defined for the binary field only");
    if (m.k > 25)
        throw std::invalid_argument("subset oracles enumerate 2^k subsets; k must be <= 25, got " +
                                    std::to_string(m.k));
}

// Rows packed into n-bit integers, one 64-bit word vector per row.
std::vector<std::vector<uint64_t>> pack_rows(const DecodingMatrix& m) {
    unsigned words = (m.n + 63) / 64;
    std::vector<std::vector<uint64_t>> rows(m.k, std::vector<uint64_t>(std::max(words, 1u), 0));
    for (unsigned i = 0; i < m.k; ++i)
        for (unsigned j = 0; j < m.n; ++j)
            if (m.at(i, j)) rows[i][j / 64] |= uint64_t(1) << (j % 64);
    return rows;
}

bool all_zero(const std::vector<uint64_t>& v) {
    for (uint64_t w : v)
        if (w) return false;
    return true;
}

}  // namespace

DecodingMatrix generate_matrix(unsigned k, unsigned n,
                               const gf::CodingDistribution& dist,
                               rng::Stream& rs) {
    DecodingMatrix m;
    m.k = k;
    m.n = n;
    m.field = &dist.field();
    m.entries.resize(size_t(k) * n);
    for (auto& e : m.entries) e = dist.sample(rs);
    return m;
}

IncrementalDecoder::IncrementalDecoder(unsigned k, const gf::Field& f)
    : k_(k), field_(&f), binary_(f.size() == 2) {
    if (k == 0) throw std::invalid_argument("decoder needs at least one source packet");
    if (binary_) {
        words_ = (k + 63) / 64;
        packed_basis_.assign(size_t(k) * words_, 0);
        packed_scratch_.assign(words_, 0);
    } else {
        basis_.assign(size_t(k) * k, 0);
        scratch_.assign(k, 0);
    }
    have_pivot_.assign(k, 0);
}

void IncrementalDecoder::reset() {
    rank_ = 0;
    std::fill(have_pivot_.begin(), have_pivot_.end(), uint8_t(0));
}

unsigned IncrementalDecoder::push(const uint8_t* column) {
    if (binary_) {
        std::fill(packed_scratch_.begin(), packed_scratch_.end(), uint64_t(0));
        for (unsigned i = 0; i < k_; ++i)
            if (column[i]) packed_scratch_[i / 64] |= uint64_t(1) << (i % 64);
        for (;;) {
            unsigned pivot = k_;
            for (unsigned w = 0; w < words_; ++w) {
                if (packed_scratch_[w]) {
                    pivot = w * 64 + unsigned(std::countr_zero(packed_scratch_[w]));
                    break;
                }
            }
            if (pivot >= k_) return rank_;  // reduced to zero, dependent column
            uint64_t* slot = &packed_basis_[size_t(pivot) * words_];
            if (!have_pivot_[pivot]) {
                std::copy(packed_scratch_.begin(), packed_scratch_.end(), slot);
                have_pivot_[pivot] = 1;
                return ++rank_;
            }
            for (unsigned w = 0; w < words_; ++w) packed_scratch_[w] ^= slot[w];
        }
    }

    std::copy(column, column + k_, scratch_.begin());
    for (unsigned p = 0; p < k_; ++p) {
        uint8_t c = scratch_[p];
        if (c == 0) continue;
        uint8_t* slot = &basis_[size_t(p) * k_];
        if (!have_pivot_[p]) {
            // Normalize so the stored row has a leading 1; later reductions
            // then need one multiply per entry.
            uint8_t s = field_->inv(c);
            for (unsigned j = p; j < k_; ++j) slot[j] = field_->mul(s, scratch_[j]);
            std::fill(slot, slot + p, uint8_t(0));
            have_pivot_[p] = 1;
            return ++rank_;
        }
        for (unsigned j = p; j < k_; ++j)
            scratch_[j] = field_->add(scratch_[j], field_->mul(c, slot[j]));
    }
    return rank_;
}

unsigned IncrementalDecoder::push(const std::vector<uint8_t>& column) {
    if (column.size() != k_)
        throw std::invalid_argument("column length does not match source packet count");
    return push(column.data());
}

unsigned rank(const DecodingMatrix& m) {
    if (m.field == nullptr) throw std::invalid_argument("matrix has no field");
    if (m.k == 0 || m.n == 0) return 0;
    IncrementalDecoder dec(m.k, *m.field);
    std::vector<uint8_t> col(m.k);
    for (unsigned j = 0; j < m.n; ++j) {
        for (unsigned i = 0; i < m.k; ++i) col[i] = m.at(i, j);
        dec.push(col.data());
    }
    return dec.rank();
}

bool is_full_rank(const DecodingMatrix& m) {
    if (m.field == nullptr) throw std::invalid_argument("matrix has no field");
    if (m.k == 0) return true;
    if (m.n < m.k) return false;
    IncrementalDecoder dec(m.k, *m.field);
    std::vector<uint8_t> col(m.k);
    for (unsigned j = 0; j < m.n; ++j) {
        if (dec.rank() + (m.n - j) < m.k) return false;  // not enough columns left
        for (unsigned i = 0; i < m.k; ++i) col[i] = m.at(i, j);
        if (dec.push(col.data()) == m.k) return true;
    }
    return false;
}

bool zero_sum_subset_exists(const DecodingMatrix& m) {
    check_subset_oracle_domain(m);
    if (m.k == 0) return false;
    auto rows = pack_rows(m);
    unsigned words = unsigned(rows[0].size());
    std::vector<uint64_t> acc(words, 0);
    // Walk subsets in Gray-code order; step i flips row countr_zero(i), so
    // each subset costs one row XOR.
    for (uint32_t i = 1; i < (uint32_t(1) << m.k); ++i) {
        unsigned flip = unsigned(std::countr_zero(i));
        for (unsigned w = 0; w < words; ++w) acc[w] ^= rows[flip][w];
        if (all_zero(acc)) return true;
    }
    return false;
}

std::map<unsigned, uint64_t> count_minimal_zero_sum_subsets(const DecodingMatrix& m) {
    check_subset_oracle_domain(m);
    std::map<unsigned, uint64_t> counts;
    if (m.k == 0) return counts;
    auto rows = pack_rows(m);
    unsigned words = unsigned(rows[0].size());

    // Every zero-sum subset is a member of the row null space over GF(2).
    // Eliminate rows while tracking which original rows were combined; rows
    // that vanish yield a null-space basis of subset masks.
    std::vector<std::vector<uint64_t>> basis_vec(m.n > 0 ? m.n : 1);
    std::vector<uint32_t> basis_tag(m.n > 0 ? m.n : 1, 0);
    std::vector<uint8_t> have(m.n > 0 ? m.n : 1, 0);
    std::vector<uint32_t> null_basis;
    for (unsigned i = 0; i < m.k; ++i) {
        std::vector<uint64_t> cur = rows[i];
        uint32_t tag = uint32_t(1) << i;
        for (;;) {
            unsigned pivot = m.n;
            for (unsigned w = 0; w < words; ++w) {
                if (cur[w]) {
                    pivot = w * 64 + unsigned(std::countr_zero(cur[w]));
                    break;
                }
            }
            if (pivot >= m.n) {
                null_basis.push_back(tag);
                break;
            }
            if (!have[pivot]) {
                basis_vec[pivot] = cur;
                basis_tag[pivot] = tag;
                have[pivot] = 1;
                break;
            }
            for (unsigned w = 0; w < words; ++w) cur[w] ^= basis_vec[pivot][w];
            tag ^= basis_tag[pivot];
        }
    }

    unsigned d = unsigned(null_basis.size());
    if (d == 0) return counts;
    if (d > 20)
        throw std::invalid_argument("null space dimension " + std::to_string(d) +
                                    " is too large to enumerate");

    // All zero-sum subsets are the 2^d - 1 nonzero combinations of the basis
    // masks, walked in Gray-code order.
    std::vector<uint32_t> masks;
    masks.reserve((size_t(1) << d) - 1);
    uint32_t acc = 0;
    for (uint32_t i = 1; i < (uint32_t(1) << d); ++i) {
        acc ^= null_basis[std::countr_zero(i)];
        masks.push_back(acc);
    }

    // A subset is minimal when no other zero-sum subset sits strictly inside
    // it. Sorting by popcount means only earlier masks can be subsets.
    std::sort(masks.begin(), masks.end(), [](uint32_t a, uint32_t b) {
        return std::popcount(a) < std::popcount(b);
    });
    for (size_t i = 0; i < masks.size(); ++i) {
        bool minimal = true;
        for (size_t j = 0; j < i && minimal; ++j) {
            if ((masks[j] & masks[i]) == masks[j] && masks[j] != masks[i]) minimal = false;
        }
        if (minimal) ++counts[unsigned(std::popcount(masks[i]))];
    }
    return counts;
}

}  // namespace srlnc::coding
