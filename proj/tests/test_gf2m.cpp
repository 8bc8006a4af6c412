#include "cibi/error.hpp"
#include "cibi/gf2m.hpp"

#include <doctest.h>

#include <vector>

using namespace cibi;
using namespace cibi::gf2m;

namespace {

// Independent carry-less multiply and reduction used as the test oracle.
std::uint32_t clmul_reduce(std::uint32_t a, std::uint32_t b, std::uint32_t modulus, unsigned m) {
    std::uint64_t prod = 0;
    for (unsigned i = 0; i < 32; ++i)
        if ((b >> i) & 1U)
            prod ^= std::uint64_t(a) << i;
    for (int d = 63; d >= int(m); --d)
        if ((prod >> d) & 1U)
            prod ^= std::uint64_t(modulus) << (d - int(m));
    return std::uint32_t(prod);
}

bool oracle_irreducible(std::uint32_t p, unsigned m) {
    // Trial division by every polynomial of degree 1..m/2, via schoolbook long division.
    for (std::uint32_t q = 2; q < (std::uint32_t(1) << (m / 2 + 1)); ++q) {
        std::uint32_t r = p;
        int dq = 31 - __builtin_clz(q);
        for (int d = 31 - __builtin_clz(r); r && d >= dq; d = r ? 31 - __builtin_clz(r) : -1)
            r ^= q << (d - dq);
        if (r == 0)
            return false;
    }
    return true;
}

Poly random_poly(const Field& f, int max_deg, Rng& rng) {
    std::vector<Element> c(std::size_t(max_deg + 1));
    for (auto& x : c)
        x = Element(rng.uniform_below(f.size()));
    return Poly(std::move(c));
}

} // namespace

TEST_CASE("standard modulus is the least irreducible of each degree") {
    for (unsigned m = 2; m <= 16; ++m) {
        std::uint32_t expect = 0;
        for (std::uint32_t p = 1U << m; p < (2U << m); ++p)
            if (oracle_irreducible(p, m)) {
                expect = p;
                break;
            }
        CHECK(standard_params(m).modulus == expect);
    }
    CHECK(standard_params(4).modulus == 0x13);
    CHECK(standard_params(8).modulus == 0x11B);
}

TEST_CASE("field_mul fixed vectors in GF(2^4)") {
    const Field& f = Field::standard(4);
    CHECK(f.mul(0x2, 0x8) == 0x3);
    CHECK(f.mul(0x6, 0x6) == 0x7);
    for (Element a = 0; a < 16; ++a)
        CHECK(f.mul(a, 1) == a);
}

TEST_CASE("table multiply matches shift-and-reduce and an independent oracle") {
    for (unsigned m = 2; m <= 8; ++m) {
        const Field& f = Field::standard(m);
        for (std::uint32_t a = 0; a < f.size(); ++a)
            for (std::uint32_t b = 0; b < f.size(); ++b) {
                const auto expect = clmul_reduce(a, b, f.params().modulus, m);
                REQUIRE(f.mul(Element(a), Element(b)) == expect);
                REQUIRE(f.mul_reference(Element(a), Element(b)) == expect);
            }
    }
    Rng rng(7);
    for (unsigned m = 9; m <= 16; ++m) {
        const Field& f = Field::standard(m);
        for (int i = 0; i < 2000; ++i) {
            const auto a = Element(rng.uniform_below(f.size())), b = Element(rng.uniform_below(f.size()));
            REQUIRE(f.mul(a, b) == clmul_reduce(a, b, f.params().modulus, m));
        }
    }
}

TEST_CASE("field_inv") {
    const Field& f = Field::standard(4);
    CHECK(f.inv(1) == 1);
    // Exhaustive search oracle for 0x2, frozen as 0x9.
    Element found = 0;
    for (Element c = 1; c < 16; ++c)
        if (clmul_reduce(0x2, c, 0x13, 4) == 1)
            found = c;
    CHECK(found == 0x9);
    CHECK(f.inv(0x2) == 0x9);
    CHECK_THROWS_AS(f.inv(0), Error);
    try {
        (void)f.inv(0);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ZeroInverse);
    }
}

TEST_CASE("field axioms on random triples") {
    Rng rng(11);
    for (unsigned m = 4; m <= 16; ++m) {
        const Field& f = Field::standard(m);
        for (int i = 0; i < 500; ++i) {
            const auto a = Element(rng.uniform_below(f.size()));
            const auto b = Element(rng.uniform_below(f.size()));
            const auto c = Element(rng.uniform_below(f.size()));
            CHECK(f.mul(a, b) == f.mul(b, a));
            CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
            CHECK(f.mul(a, Element(b ^ c)) == Element(f.mul(a, b) ^ f.mul(a, c)));
            if (a != 0)
                CHECK(f.mul(a, f.inv(a)) == 1);
        }
    }
}

TEST_CASE("Frobenius: x^(2^m) = x") {
    Rng rng(3);
    for (unsigned m = 2; m <= 16; ++m) {
        const Field& f = Field::standard(m);
        const std::uint32_t samples = m <= 8 ? f.size() : 1000;
        for (std::uint32_t i = 0; i < samples; ++i) {
            const Element a = m <= 8 ? Element(i) : Element(rng.uniform_below(f.size()));
            Element x = a;
            for (unsigned k = 0; k < m; ++k)
                x = f.mul(x, x);
            REQUIRE(x == a);
        }
    }
}

TEST_CASE("poly_eval") {
    const Field& f = Field::standard(4);
    CHECK(eval(f, Poly{}, 0x5) == 0);
    for (Element x = 0; x < 16; ++x)
        CHECK(eval(f, Poly({0x3, 1}), x) == Element(x ^ 0x3));
    // z^2 + z + 1 at z = 2: 2*2 + 2 + 1.
    CHECK(eval(f, Poly({1, 1, 1}), 0x2) == Element(clmul_reduce(2, 2, 0x13, 4) ^ 0x2 ^ 0x1));
    CHECK(eval(f, Poly({1, 1, 1}), 0x2) == 0x7);
}

TEST_CASE("zero polynomial degree sentinel") {
    CHECK(Poly{}.degree() == Poly::kMinusInfinity);
    CHECK(Poly({0, 0, 0}).is_zero());
    CHECK(Poly({1, 0, 0}).degree() == 0);
}

TEST_CASE("ext_gcd") {
    const Field& f4 = Field::standard(4);
    Rng rng(5);
    SUBCASE("a with itself") {
        const Poly a({3, 7, 1});
        const ExtGcd e = ext_gcd(f4, a, a, kRunToEnd);
        CHECK(e.r == a);
        CHECK(mul(f4, e.u, a) + mul(f4, e.v, a) == e.r);
    }
    SUBCASE("coprime with an irreducible") {
        const Poly g = random_irreducible(f4, 3, rng);
        for (int i = 0; i < 50; ++i) {
            Poly a = random_poly(f4, 2, rng);
            if (a.degree() < 1)
                continue;
            const ExtGcd e = ext_gcd(f4, g, a, kRunToEnd);
            CHECK(e.r.degree() == 0);
            CHECK(mul(f4, e.u, g) + mul(f4, e.v, a) == e.r);
        }
    }
    SUBCASE("GF(2^2): z^2 and z with stop degree 0") {
        const Field& f2 = Field::standard(2);
        const ExtGcd e = ext_gcd(f2, Poly::monomial(2), Poly::monomial(1), 0);
        CHECK(e.r.is_zero());
        CHECK(mul(f2, e.u, Poly::monomial(2)) + mul(f2, e.v, Poly::monomial(1)) == e.r);
    }
    SUBCASE("stop degree bound and Bezout identity on random inputs") {
        const Field& f = Field::standard(8);
        for (int i = 0; i < 100; ++i) {
            const Poly a = random_poly(f, 9, rng), b = random_poly(f, 6, rng);
            if (b.is_zero())
                continue;
            const int stop = int(rng.uniform_below(5));
            const ExtGcd e = ext_gcd(f, a, b, stop);
            CHECK(e.r.degree() <= stop);
            CHECK(mul(f, e.u, a) + mul(f, e.v, b) == e.r);
        }
    }
    CHECK_THROWS_AS(ext_gcd(f4, Poly::monomial(1), Poly{}, kRunToEnd), Error);
}

TEST_CASE("inv_mod against exhaustive search in GF(2^4)") {
    const Field& f = Field::standard(4);
    // Pick the smallest alpha making z^2 + z + alpha irreducible (no roots).
    Element alpha = 0;
    for (Element a = 1; a < 16 && alpha == 0; ++a) {
        bool root = false;
        for (Element x = 0; x < 16; ++x)
            root = root || Element(f.mul(x, x) ^ x ^ a) == 0;
        if (!root)
            alpha = a;
    }
    REQUIRE(alpha != 0);
    const Poly g({alpha, 1, 1});
    CHECK(is_irreducible(f, g));
    for (Element c0 = 0; c0 < 16; ++c0)
        for (Element c1 = 0; c1 < 16; ++c1) {
            const Poly a({c0, c1});
            if (a.is_zero()) {
                CHECK_THROWS_AS(inv_mod(f, a, g), Error);
                continue;
            }
            Poly brute;
            int hits = 0;
            for (Element d0 = 0; d0 < 16; ++d0)
                for (Element d1 = 0; d1 < 16; ++d1) {
                    // (c0 + c1 z)(d0 + d1 z) reduced by z^2 = z + alpha.
                    const Element z2 = f.mul(c1, d1);
                    const Element k0 = Element(f.mul(c0, d0) ^ f.mul(z2, alpha));
                    const Element k1 = Element(f.mul(c0, d1) ^ f.mul(c1, d0) ^ z2);
                    if (k0 == 1 && k1 == 0) {
                        brute = Poly({d0, d1});
                        ++hits;
                    }
                }
            REQUIRE(hits == 1);
            CHECK(inv_mod(f, a, g) == brute);
        }
    CHECK(inv_mod(f, Poly::constant(1), g) == Poly::constant(1));
}

TEST_CASE("inv_mod and sqrt_mod round trips") {
    Rng rng(99);
    const std::pair<unsigned, unsigned> sets[] = {{5, 2}, {8, 3}, {10, 4}};
    for (auto [m, t] : sets) {
        const Field& f = Field::standard(m);
        const Poly g = random_irreducible(f, t, rng);
        CHECK(sqrt_mod(f, Poly::constant(1), g) == Poly::constant(1));
        for (int i = 0; i < 100; ++i) {
            const Poly a = random_poly(f, int(t) - 1, rng);
            const Poly r = sqrt_mod(f, a, g);
            CHECK(r.degree() < int(t));
            CHECK(mul_mod(f, r, r, g) == a);
            CHECK(sqrt_mod(f, mul_mod(f, a, a, g), g) == a);
            if (a.is_zero())
                continue;
            const Poly inv = inv_mod(f, a, g);
            CHECK(inv.degree() < int(t));
            CHECK(mul_mod(f, a, inv, g) == Poly::constant(1));
        }
    }
}

TEST_CASE("random_irreducible") {
    Rng rng(42);
    const Field& f5 = Field::standard(5);
    for (int i = 0; i < 20; ++i) {
        const Poly g1 = random_irreducible(f5, 1, rng);
        CHECK(g1.degree() == 1);
        CHECK(g1.leading() == 1);
    }
    for (int i = 0; i < 50; ++i) {
        const Poly g = random_irreducible(f5, 2, rng);
        CHECK(g.degree() == 2);
        CHECK(g.leading() == 1);
        // Trial division by all 32 monic linears z + c: no remainder may vanish.
        for (Element c = 0; c < 32; ++c)
            CHECK(!divmod(f5, g, Poly({c, 1})).rem.is_zero());
    }
    const Field& f8 = Field::standard(8);
    for (int i = 0; i < 5; ++i) {
        const Poly g = random_irreducible(f8, 4, rng);
        for (std::uint32_t x = 0; x < f8.size(); ++x)
            CHECK(eval(f8, g, Element(x)) != 0);
    }
}

TEST_CASE("is_irreducible rejects products") {
    Rng rng(8);
    const Field& f = Field::standard(6);
    for (int i = 0; i < 20; ++i) {
        const Poly a = random_irreducible(f, 2, rng), b = random_irreducible(f, 3, rng);
        CHECK_FALSE(is_irreducible(f, mul(f, a, b)));
        CHECK_FALSE(is_irreducible(f, mul(f, a, a)));
    }
}

TEST_CASE("splits_into_distinct_linears") {
    const Field& f = Field::standard(6);
    Poly p = Poly::constant(1);
    for (Element r : {Element(3), Element(17), Element(40)})
        p = mul(f, p, Poly({r, 1}));
    CHECK(splits_into_distinct_linears(f, p));
    CHECK_FALSE(splits_into_distinct_linears(f, mul(f, p, Poly({3, 1}))));
    Rng rng(1);
    CHECK_FALSE(splits_into_distinct_linears(f, mul(f, p, random_irreducible(f, 2, rng))));
}
