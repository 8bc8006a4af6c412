#pragma once

#include "cibi/rng.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

// Arithmetic in GF(2^m) (polynomial basis) and in GF(2^m)[z].
namespace cibi::gf2m {

using Element = std::uint16_t;

inline constexpr unsigned kMinDegree = 2;
inline constexpr unsigned kMaxDegree = 16;

struct FieldParams {
    unsigned m = 0;
    // Bit i is the coefficient of z^i; degree exactly m.
    std::uint32_t modulus = 0;

    friend bool operator==(const FieldParams&, const FieldParams&) = default;
};

// Irreducibility over GF(2) of a bit-encoded polynomial, by trial division.
bool is_irreducible_binary(std::uint32_t poly);

// The lexicographically least irreducible polynomial of degree m.
std::uint32_t least_irreducible(unsigned m);

FieldParams standard_params(unsigned m);

class Field {
public:
    explicit Field(const FieldParams& params);

    // Shared instance for standard_params(m); tables built once.
    static const Field& standard(unsigned m);

    const FieldParams& params() const noexcept { return params_; }
    unsigned m() const noexcept { return params_.m; }
    std::uint32_t size() const noexcept { return std::uint32_t(1) << params_.m; }
    bool valid(Element a) const noexcept { return a < size(); }

    Element mul(Element a, Element b) const noexcept {
        if (a == 0 || b == 0)
            return 0;
        return exp_[std::size_t(log_[a]) + log_[b]];
    }
    Element sqr(Element a) const noexcept { return mul(a, a); }
    Element inv(Element a) const;  // throws ZeroInverse
    Element div(Element a, Element b) const { return mul(a, inv(b)); }
    Element pow(Element a, std::uint64_t e) const noexcept;

    // Shift-and-reduce multiply; kept as the reference the tables are checked against.
    Element mul_reference(Element a, Element b) const noexcept;

private:
    FieldParams params_;
    // exp_ has length 2*(2^m - 1) so log sums need no reduction.
    std::vector<Element> exp_;
    std::vector<std::uint32_t> log_;
};

// Polynomial over GF(2^m); coefficient index = degree. Always normalized:
// no trailing zero coefficients, so the zero polynomial has no coefficients.
class Poly {
public:
    // Degree of the zero polynomial.
    static constexpr int kMinusInfinity = -1;

    Poly() = default;
    explicit Poly(std::vector<Element> coeffs);

    static Poly constant(Element c);
    static Poly monomial(unsigned degree, Element c = 1);

    int degree() const noexcept { return int(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    Element coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
    Element leading() const noexcept { return c_.empty() ? 0 : c_.back(); }
    std::span<const Element> coeffs() const noexcept { return c_; }

    void set_coeff(std::size_t i, Element v);

    friend Poly operator+(const Poly& a, const Poly& b);
    Poly& operator+=(const Poly& b);
    friend bool operator==(const Poly&, const Poly&) = default;

private:
    void normalize();
    std::vector<Element> c_;
};

Poly mul(const Field& f, const Poly& a, const Poly& b);
Poly scale(const Field& f, const Poly& a, Element c);
Poly shift(const Poly& a, unsigned k);  // a * z^k

struct DivMod {
    Poly quot;
    Poly rem;
};
DivMod divmod(const Field& f, const Poly& a, const Poly& b);  // throws ZeroOperand
Poly mod(const Field& f, const Poly& a, const Poly& g);
Poly mul_mod(const Field& f, const Poly& a, const Poly& b, const Poly& g);
Poly sqr_mod(const Field& f, const Poly& a, const Poly& g);
Poly make_monic(const Field& f, const Poly& a);

// Horner evaluation.
Element eval(const Field& f, const Poly& p, Element x);

struct ExtGcd {
    Poly r;
    Poly u;
    Poly v;
};

inline constexpr int kRunToEnd = -1;

// Walks the remainder sequence r_0 = a, r_1 = b, ... keeping r_i = u_i a + v_i b.
// Returns the first entry with deg(r_i) <= stop_deg, or for stop_deg = kRunToEnd
// the last nonzero remainder (gcd up to a scalar). Throws ZeroOperand if b = 0.
ExtGcd ext_gcd(const Field& f, const Poly& a, const Poly& b, int stop_deg);

Poly gcd(const Field& f, const Poly& a, const Poly& b);

// T with a*T = 1 mod g. g must be irreducible; throws NotInvertible when a = 0 mod g.
Poly inv_mod(const Field& f, const Poly& a, const Poly& g);

// R with R^2 = a mod g, computed as a^(2^(m*deg g - 1)) mod g.
Poly sqrt_mod(const Field& f, const Poly& a, const Poly& g);

// Rabin's test for a monic polynomial of degree >= 1.
bool is_irreducible(const Field& f, const Poly& g);

// True iff g (degree >= 1) is a product of distinct linear factors over GF(2^m),
// i.e. z^(2^m) = z mod g and g is squarefree.
bool splits_into_distinct_linears(const Field& f, const Poly& g);

// Rejection-samples monic degree-t polynomials until one is irreducible.
Poly random_irreducible(const Field& f, unsigned t, Rng& rng);

} // namespace cibi::gf2m
