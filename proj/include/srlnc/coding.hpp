#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "srlnc/gf.hpp"
#include "srlnc/rng.hpp"

namespace srlnc::coding {

// Decoding matrix as a receiver sees it: k source packets (rows), n received
// coded packets (columns), coefficient (i, j) at entries[i * n + j].
struct DecodingMatrix {
    unsigned k = 0;
    unsigned n = 0;
    const gf::Field* field = nullptr;
    std::vector<uint8_t> entries;  // row-major

    uint8_t at(unsigned i, unsigned j) const { return entries[size_t(i) * n + j]; }
    uint8_t& at(unsigned i, unsigned j) { return entries[size_t(i) * n + j]; }
};

// Fresh k x n matrix with iid entries from the given coefficient law.
DecodingMatrix generate_matrix(unsigned k, unsigned n,
                               const gf::CodingDistribution& dist,
                               rng::Stream& rs);

// Rank by Gaussian elimination over the matrix field.
unsigned rank(const DecodingMatrix& m);

// Full-rank test that stops as soon as the answer is decided, in either
// direction.
bool is_full_rank(const DecodingMatrix& m);

// Online Gaussian elimination over received columns. Feeding the columns of
// a matrix one at a time ends at exactly the batch rank of that matrix.
// Binary fields use bit-packed columns; larger fields reduce byte vectors
// through the field tables.
class IncrementalDecoder {
public:
    IncrementalDecoder(unsigned k, const gf::Field& f);

    // Absorbs one received column of k coefficients and returns the rank so
    // far. The rank never decreases and grows by at most 1 per push.
    unsigned push(const uint8_t* column);
    unsigned push(const std::vector<uint8_t>& column);

    // Forgets all received columns; cheaper than constructing a new decoder
    // in per-trial loops.
    void reset();

    unsigned rank() const { return rank_; }
    bool complete() const { return rank_ == k_; }
    unsigned k() const { return k_; }

private:
    unsigned k_;
    unsigned rank_ = 0;
    const gf::Field* field_;
    bool binary_;
    unsigned words_ = 0;                  // 64-bit words per packed column
    std::vector<uint64_t> packed_basis_;  // binary: words_ per pivot slot
    std::vector<uint64_t> packed_scratch_;
    std::vector<uint8_t> basis_;          // q > 2: k entries per pivot slot
    std::vector<uint8_t> scratch_;
    std::vector<uint8_t> have_pivot_;
};

// True when some nonempty subset of rows XORs to the zero vector, found by
// enumerating all 2^k subsets. Binary fields only; k is capped at 25 to keep
// the scan tractable. Meant as an independent cross-check of rank results,
// not a fast path.
bool zero_sum_subset_exists(const DecodingMatrix& m);

// Counts, keyed by subset size, the zero-sum row subsets containing no
// smaller zero-sum subset. Same field and size restrictions as above. The
// matrix is full rank exactly when the result is empty.
std::map<unsigned, uint64_t> count_minimal_zero_sum_subsets(const DecodingMatrix& m);

}  // namespace srlnc::coding
