#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "srlnc/gf.hpp"
#include "srlnc/rng.hpp"

using srlnc::gf::CodingDistribution;
using srlnc::gf::Field;
using srlnc::rng::Stream;

namespace {

// Reference product: carry-less multiply followed by long division, sharing
// nothing with the table lookups under test.
uint8_t slow_mul(uint8_t a, uint8_t b, uint16_t poly, unsigned degree) {
    unsigned acc = 0;
    for (unsigned bit = 0; bit < 8; ++bit)
        if (b >> bit & 1) acc ^= unsigned(a) << bit;
    for (int d = 14; d >= int(degree); --d)
        if (acc >> d & 1) acc ^= unsigned(poly) << (unsigned(d) - degree);
    return uint8_t(acc);
}

}  // namespace

TEST_CASE("field construction rejects out-of-range degrees") {
    CHECK_THROWS_AS(Field(0), std::invalid_argument);
    CHECK_THROWS_AS(Field(9), std::invalid_argument);
    CHECK_NOTHROW(Field(1));
    CHECK_NOTHROW(Field(8));
}

TEST_CASE("shared field instances expose the expected parameters") {
    for (unsigned e = 1; e <= 8; ++e) {
        const Field& f = srlnc::gf::field(e);
        CHECK(f.degree() == e);
        CHECK(f.size() == (1u << e));
        CHECK(&f == &srlnc::gf::field(e));  // same instance every call
    }
    CHECK(srlnc::gf::field(4).reduction_poly() == 0x13);
    CHECK(srlnc::gf::field(8).reduction_poly() == 0x11D);
}

TEST_CASE("multiplication matches a shift-and-reduce reference") {
    // Exhaustive through GF(16), randomized above that.
    for (unsigned e = 1; e <= 4; ++e) {
        const Field& f = srlnc::gf::field(e);
        for (unsigned a = 0; a < f.size(); ++a)
            for (unsigned b = 0; b < f.size(); ++b)
                CHECK(f.mul(uint8_t(a), uint8_t(b)) ==
                      slow_mul(uint8_t(a), uint8_t(b), f.reduction_poly(), e));
    }
    Stream rs(7);
    for (unsigned e = 5; e <= 8; ++e) {
        const Field& f = srlnc::gf::field(e);
        for (int i = 0; i < 2000; ++i) {
            auto a = uint8_t(rs.below(f.size()));
            auto b = uint8_t(rs.below(f.size()));
            CHECK(f.mul(a, b) == slow_mul(a, b, f.reduction_poly(), e));
        }
    }
}

TEST_CASE("field axioms hold") {
    for (unsigned e : {1u, 3u, 8u}) {
        const Field& f = srlnc::gf::field(e);
        unsigned q = f.size();
        for (unsigned a = 0; a < q; ++a) {
            CHECK(f.add(uint8_t(a), uint8_t(a)) == 0);  // characteristic 2
            CHECK(f.mul(uint8_t(a), 1) == a);
            CHECK(f.mul(uint8_t(a), 0) == 0);
        }
        // Distributivity on a randomized sample of triples.
        Stream rs(11);
        for (int i = 0; i < 500; ++i) {
            auto a = uint8_t(rs.below(q)), b = uint8_t(rs.below(q)), c = uint8_t(rs.below(q));
            CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            CHECK(f.mul(a, b) == f.mul(b, a));
            CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
        }
    }
}

TEST_CASE("inversion is an involution and rejects zero") {
    for (unsigned e = 1; e <= 8; ++e) {
        const Field& f = srlnc::gf::field(e);
        for (unsigned a = 1; a < f.size(); ++a) {
            uint8_t ia = f.inv(uint8_t(a));
            CHECK(f.mul(uint8_t(a), ia) == 1);
            CHECK(f.inv(ia) == a);
        }
        CHECK_THROWS_AS(f.inv(0), std::domain_error);
    }
}

TEST_CASE("coefficient law validates the zero probability") {
    const Field& f = srlnc::gf::field(4);
    CHECK_THROWS_AS(CodingDistribution(f, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(CodingDistribution(f, 1.1), std::invalid_argument);
    CHECK_NOTHROW(CodingDistribution(f, 0.0));
    CHECK_NOTHROW(CodingDistribution(f, 1.0));
}

TEST_CASE("classic and sparse flags follow the zero probability") {
    const Field& f2 = srlnc::gf::field(1);
    CHECK(CodingDistribution(f2, 0.5).classic());
    CHECK_FALSE(CodingDistribution(f2, 0.5).sparse());
    CHECK(CodingDistribution(f2, 0.7).sparse());
    CHECK_FALSE(CodingDistribution(f2, 0.3).sparse());
    const Field& f16 = srlnc::gf::field(4);
    CHECK(CodingDistribution(f16, 1.0 / 16.0).classic());
    CHECK(CodingDistribution(f16, 0.9).sparse());
}

TEST_CASE("degenerate zero probabilities sample deterministically") {
    const Field& f = srlnc::gf::field(4);
    Stream rs(3);
    CodingDistribution all_zero(f, 1.0);
    CodingDistribution never_zero(f, 0.0);
    for (int i = 0; i < 1000; ++i) {
        CHECK(all_zero.sample(rs) == 0);
        CHECK(never_zero.sample(rs) != 0);
    }
}

TEST_CASE("sampled symbol frequencies match the law") {
    const int draws = 1000000;
    for (unsigned e : {1u, 4u}) {
        const Field& f = srlnc::gf::field(e);
        for (double p : {0.5, 0.7, 0.9}) {
            CodingDistribution dist(f, p);
            Stream rs(29 + e + unsigned(p * 10));
            int zeros = 0, ones = 0;
            for (int i = 0; i < draws; ++i) {
                uint8_t s = dist.sample(rs);
                zeros += s == 0;
                ones += s == 1;
            }
            double tol0 = 3 * std::sqrt(p * (1 - p) / draws);
            CHECK(std::abs(double(zeros) / draws - p) < tol0);
            double pnz = (1 - p) / (f.size() - 1);
            double tol1 = 3 * std::sqrt(pnz * (1 - pnz) / draws);
            CHECK(std::abs(double(ones) / draws - pnz) < tol1);
        }
    }
}

TEST_CASE("nonzero symbols are uniform in GF(16)") {
    const Field& f = srlnc::gf::field(4);
    CodingDistribution dist(f, 0.8);
    Stream rs(101);
    const int draws = 1000000;
    uint64_t counts[16] = {};
    for (int i = 0; i < draws; ++i) ++counts[dist.sample(rs)];
    // Chi-square over the 15 nonzero symbols against a uniform split of the
    // observed nonzero mass; 14 degrees of freedom, 0.999 quantile 36.12.
    uint64_t nonzero = draws - counts[0];
    double expect = double(nonzero) / 15.0;
    double chi2 = 0.0;
    for (int s = 1; s < 16; ++s) {
        double d = double(counts[s]) - expect;
        chi2 += d * d / expect;
    }
    CHECK(chi2 < 36.12);
}

TEST_CASE("streams are deterministic and substreams differ") {
    Stream a(42), b(42), c(43);
    bool all_equal = true, any_equal_cross = false;
    for (int i = 0; i < 64; ++i) {
        uint64_t va = a.next(), vb = b.next(), vc = c.next();
        all_equal &= va == vb;
        any_equal_cross |= va == vc;
    }
    CHECK(all_equal);
    CHECK_FALSE(any_equal_cross);
    CHECK(srlnc::rng::substream_seed(1, 0) != srlnc::rng::substream_seed(1, 1));
    CHECK(srlnc::rng::substream_seed(1, 0) != srlnc::rng::substream_seed(2, 0));
}

TEST_CASE("uniform and bounded draws stay in range") {
    Stream rs(5);
    for (int i = 0; i < 10000; ++i) {
        double u = rs.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        uint32_t v = rs.below(7);
        CHECK(v < 7);
    }
    Stream one(9);
    for (int i = 0; i < 100; ++i) CHECK(one.below(1) == 0);
}
