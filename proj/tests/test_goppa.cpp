#include "cibi/error.hpp"
#include "cibi/goppa.hpp"
#include "cibi/niederreiter.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace cibi;
using namespace cibi::goppa;
using binmat::BitVector;

namespace {

std::vector<BitVector> all_words_up_to_weight_two(std::size_t n) {
    std::vector<BitVector> out{BitVector(n)};
    for (std::size_t i = 0; i < n; ++i) {
        BitVector e(n);
        e.set(i);
        out.push_back(e);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            BitVector e(n);
            e.set(i);
            e.set(j);
            out.push_back(e);
        }
    return out;
}

} // namespace

TEST_CASE("build_goppa shapes and invariants") {
    Rng rng(1);
    const GoppaCode c = build_goppa(5, 2, rng);
    CHECK(c.n() == 32);
    CHECK(c.k() == 22);
    CHECK(c.parity_check().rows() == 10);
    CHECK(c.parity_check().cols() == 32);
    CHECK(binmat::rank(c.parity_check()) == 10);
    CHECK(gf2m::is_irreducible(c.field(), c.goppa_poly()));
    for (std::size_t i = 0; i < c.n(); ++i)
        CHECK(gf2m::eval(c.field(), c.goppa_poly(), c.support(i)) != 0);

    const GoppaCode big = build_goppa(10, 3, rng);
    CHECK(big.n() == 1024);
    CHECK(big.k() == 994);
    // t = (n - k) / log2 n
    CHECK((big.n() - big.k()) / 10 == 3);

    CHECK_THROWS_AS(build_goppa(4, 4, rng), Error);
    CHECK_THROWS_AS(build_goppa(5, 1, rng), Error);
}

TEST_CASE("explicit construction rejects reducible g") {
    const gf2m::Field& f = gf2m::Field::standard(5);
    const gf2m::Poly reducible = gf2m::mul(f, gf2m::Poly({3, 1}), gf2m::Poly({5, 1}));
    CHECK_THROWS_AS(GoppaCode(5, 2, reducible), Error);
}

TEST_CASE("binary_syndrome") {
    Rng rng(2);
    const GoppaCode c = build_goppa(5, 2, rng);
    CHECK(binary_syndrome(c, BitVector(32)).is_zero());
    std::set<std::vector<std::uint8_t>> seen;
    for (std::size_t i = 0; i < 32; ++i) {
        BitVector e(32);
        e.set(i);
        const BitVector s = binary_syndrome(c, e);
        CHECK_FALSE(s.is_zero());
        seen.insert(s.to_bytes());
    }
    CHECK(seen.size() == 32);
    for (int i = 0; i < 50; ++i) {
        const BitVector a = BitVector::random(32, rng), b = BitVector::random(32, rng);
        CHECK(binary_syndrome(c, a ^ b) == (binary_syndrome(c, a) ^ binary_syndrome(c, b)));
    }
    CHECK_THROWS_AS(binary_syndrome(c, BitVector(31)), Error);
}

TEST_CASE("syndrome_poly") {
    Rng rng(3);
    const GoppaCode c = build_goppa(5, 2, rng);
    const auto& f = c.field();
    CHECK(syndrome_poly(c, BitVector(10)).is_zero());
    for (std::size_t i = 0; i < 32; ++i) {
        BitVector e(32);
        e.set(i);
        const gf2m::Poly expect = gf2m::inv_mod(f, gf2m::Poly({c.support(i), 1}), c.goppa_poly());
        CHECK(syndrome_poly(c, binary_syndrome(c, e)) == expect);
    }
    // Sum over a random error pattern.
    for (int trial = 0; trial < 20; ++trial) {
        const BitVector e = BitVector::random(32, rng);
        gf2m::Poly expect;
        for (std::size_t i : e.support())
            expect += gf2m::inv_mod(f, gf2m::Poly({c.support(i), 1}), c.goppa_poly());
        CHECK(syndrome_poly(c, binary_syndrome(c, e)) == expect);
    }
    const GoppaCode c8 = build_goppa(8, 4, rng);
    for (int i = 0; i < 50; ++i) {
        std::vector<gf2m::Element> coeffs(4);
        for (auto& x : coeffs)
            x = gf2m::Element(rng.uniform_below(256));
        const gf2m::Poly p(coeffs);
        CHECK(syndrome_poly(c8, syndrome_bits(c8, p)) == p);
        const BitVector s = BitVector::random(32, rng);
        CHECK(syndrome_bits(c8, syndrome_poly(c8, s)) == s);
    }
    CHECK_THROWS_AS(syndrome_poly(c, BitVector(9)), Error);
}

TEST_CASE("patterson_decode exhaustive at m=5, t=2") {
    Rng rng(4);
    for (int code_i = 0; code_i < 5; ++code_i) {
        const GoppaCode c = build_goppa(5, 2, rng);
        const auto words = all_words_up_to_weight_two(32);
        REQUIRE(words.size() == 529);
        for (const BitVector& e : words)
            REQUIRE(patterson_decode(c, binary_syndrome(c, e)) == e);
    }
}

TEST_CASE("decode inverts syndrome on random low-weight words") {
    Rng rng(5);
    const std::pair<unsigned, unsigned> sets[] = {{8, 3}, {10, 3}, {12, 4}, {8, 4}, {9, 5}};
    for (auto [m, t] : sets) {
        const GoppaCode c = build_goppa(m, t, rng);
        for (int i = 0; i < 1000; ++i) {
            const std::size_t w = std::size_t(rng.uniform_below(t + 1));
            const BitVector e = BitVector::random_weight(c.n(), w, rng);
            const auto d = try_decode(c, binary_syndrome(c, e));
            REQUIRE(d.has_value());
            REQUIRE(*d == e);
        }
    }
}

TEST_CASE("single error at support element zero takes the short path") {
    Rng rng(6);
    const GoppaCode c = build_goppa(6, 3, rng);
    BitVector e(c.n());
    e.set(0);
    CHECK(patterson_decode(c, binary_syndrome(c, e)) == e);
}

TEST_CASE("undecodable syndromes") {
    Rng rng(7);
    const GoppaCode c = build_goppa(10, 3, rng);
    int decoded = 0;
    for (int i = 0; i < 2000; ++i) {
        const BitVector s = BitVector::random(30, rng);
        if (auto e = try_decode(c, s)) {
            ++decoded;
            CHECK(e->weight() <= 3);
            CHECK(binary_syndrome(c, *e) == s);
        } else {
            try {
                (void)patterson_decode(c, s);
                FAIL("expected Undecodable");
            } catch (const Error& err) {
                CHECK(err.code() == Errc::Undecodable);
            }
        }
    }
    // About 1/t! of syndromes decode.
    CHECK(std::abs(decoded / 2000.0 - 1.0 / 6.0) <= 0.03);
    // Exact ball-density cross-check: sum_{w<=3} C(1024, w) / 2^30.
    const double ball = 1 + 1024.0 + 1024.0 * 1023 / 2 + 1024.0 * 1023 * 1022 / 6;
    CHECK(std::abs(decoded / 2000.0 - ball / std::ldexp(1.0, 30)) <= 0.03);
}

// ---------------------------------------------------------------------------

TEST_CASE("niederreiter keygen") {
    Rng rng(10);
    const auto kp = niederreiter::keygen(5, 2, rng);
    CHECK(kp.pk.h_tilde.rows() == 10);
    CHECK(kp.pk.h_tilde.cols() == 32);
    CHECK(binmat::rank(kp.pk.h_tilde) == 10);
    CHECK(binmat::mat_mul(kp.sk.q, kp.sk.q_inv) == binmat::BitMatrix::identity(10));
    // H~ = Q H P with P as a permutation matrix.
    const auto qhp = binmat::mat_mul(binmat::mat_mul(kp.sk.q, kp.sk.code.parity_check()),
                                     binmat::BitMatrix::from_permutation(kp.sk.p));
    CHECK(qhp == kp.pk.h_tilde);

    const auto plain = niederreiter::keygen_unscrambled(5, 2, rng);
    CHECK(plain.pk.h_tilde == plain.sk.code.parity_check());

    Rng other(11);
    CHECK(niederreiter::keygen(5, 2, other).pk.h_tilde != kp.pk.h_tilde);
}

TEST_CASE("niederreiter encrypt") {
    Rng rng(12);
    const auto kp = niederreiter::keygen(5, 2, rng);
    CHECK_THROWS_AS(niederreiter::encrypt(kp.pk, BitVector(32)), Error);
    CHECK_THROWS_AS(niederreiter::encrypt(kp.pk, BitVector::random_weight(32, 3, rng)), Error);
    CHECK_THROWS_AS(niederreiter::encrypt(kp.pk, BitVector::random_weight(31, 2, rng)), Error);
    std::set<std::vector<std::uint8_t>> seen;
    for (std::size_t i = 0; i < 32; ++i)
        for (std::size_t j = i + 1; j < 32; ++j) {
            BitVector x(32);
            x.set(i);
            x.set(j);
            const BitVector y = niederreiter::encrypt(kp.pk, x);
            CHECK(y == binmat::mat_vec_mul(kp.pk.h_tilde, x));
            seen.insert(y.to_bytes());
            REQUIRE(niederreiter::decrypt(kp.sk, y) == x);
        }
    CHECK(seen.size() == 496);
}

TEST_CASE("niederreiter decrypt") {
    Rng rng(13);
    const auto kp = niederreiter::keygen(10, 3, rng);
    for (int i = 0; i < 200; ++i) {
        const BitVector x = BitVector::random_weight(1024, 3, rng);
        REQUIRE(niederreiter::decrypt(kp.sk, niederreiter::encrypt(kp.pk, x)) == x);
    }
    const BitVector zero = niederreiter::decrypt(kp.sk, BitVector(30));
    CHECK(zero.is_zero());
    CHECK(zero.size() == 1024);

    int undecodable = 0;
    for (int i = 0; i < 2000; ++i) {
        const BitVector y = BitVector::random(30, rng);
        if (auto x = niederreiter::try_decrypt(kp.sk, y))
            CHECK(binmat::mat_vec_mul(kp.pk.h_tilde, *x) == y);
        else
            ++undecodable;
    }
    CHECK(std::abs(undecodable / 2000.0 - 5.0 / 6.0) <= 0.03);
    CHECK_THROWS_AS(niederreiter::decrypt(kp.sk, BitVector(29)), Error);
}
