#include "cibi/gf2m.hpp"

#include "cibi/error.hpp"

#include <array>
#include <bit>
#include <mutex>
#include <string>

namespace cibi::gf2m {

namespace {

int binary_degree(std::uint64_t p) {
    return p == 0 ? -1 : 63 - std::countl_zero(p);
}

std::uint64_t binary_mod(std::uint64_t a, std::uint64_t b) {
    const int db = binary_degree(b);
    for (int da = binary_degree(a); da >= db; da = binary_degree(a))
        a ^= b << (da - db);
    return a;
}

void check_params(const FieldParams& p) {
    if (p.m < kMinDegree || p.m > kMaxDegree)
        throw Error(Errc::ParameterError, "field degree m=" + std::to_string(p.m) + " out of range");
    if (binary_degree(p.modulus) != int(p.m))
        throw Error(Errc::ParameterError, "modulus degree differs from m");
    if (!is_irreducible_binary(p.modulus))
        throw Error(Errc::ParameterError, "modulus is reducible");
}

} // namespace

bool is_irreducible_binary(std::uint32_t poly) {
    const int d = binary_degree(poly);
    if (d < 1)
        return false;
    for (std::uint64_t q = 2; binary_degree(q) <= d / 2; ++q)
        if (binary_mod(poly, q) == 0)
            return false;
    return true;
}

std::uint32_t least_irreducible(unsigned m) {
    for (std::uint32_t p = std::uint32_t(1) << m; p < (std::uint32_t(2) << m); ++p)
        if (is_irreducible_binary(p))
            return p;
    throw Error(Errc::ParameterError, "no irreducible polynomial found");
}

FieldParams standard_params(unsigned m) {
    if (m < kMinDegree || m > kMaxDegree)
        throw Error(Errc::ParameterError, "field degree m=" + std::to_string(m) + " out of range");
    return {m, least_irreducible(m)};
}

Field::Field(const FieldParams& params) : params_(params) {
    check_params(params_);
    const std::uint32_t order = size() - 1;

    // The least irreducible modulus need not make z primitive (m = 8 is the
    // classic case), so search for a generator.
    std::vector<Element> powers(order);
    for (Element g = 2;; ++g) {
        Element x = 1;
        std::uint32_t k = 0;
        do {
            powers[k++] = x;
            x = mul_reference(x, g);
        } while (x != 1 && k < order);
        if (x == 1 && k == order)
            break;
    }

    exp_.resize(2 * std::size_t(order));
    log_.assign(size(), 0);
    for (std::uint32_t k = 0; k < order; ++k) {
        exp_[k] = exp_[k + order] = powers[k];
        log_[powers[k]] = k;
    }
}

const Field& Field::standard(unsigned m) {
    static std::array<std::unique_ptr<Field>, kMaxDegree + 1> cache;
    static std::array<std::once_flag, kMaxDegree + 1> once;
    if (m < kMinDegree || m > kMaxDegree)
        throw Error(Errc::ParameterError, "field degree m=" + std::to_string(m) + " out of range");
    std::call_once(once[m], [m] { cache[m] = std::make_unique<Field>(standard_params(m)); });
    return *cache[m];
}

Element Field::mul_reference(Element a, Element b) const noexcept {
    std::uint32_t acc = 0;
    std::uint32_t x = a;
    const std::uint32_t top = std::uint32_t(1) << params_.m;
    for (std::uint32_t y = b; y; y >>= 1) {
        if (y & 1)
            acc ^= x;
        x <<= 1;
        if (x & top)
            x ^= params_.modulus;
    }
    return Element(acc);
}

Element Field::inv(Element a) const {
    if (a == 0)
        throw Error(Errc::ZeroInverse, "inverse of zero");
    const std::uint32_t order = size() - 1;
    return exp_[(order - log_[a]) % order];
}

Element Field::pow(Element a, std::uint64_t e) const noexcept {
    if (e == 0)
        return 1;
    if (a == 0)
        return 0;
    const std::uint64_t order = size() - 1;
    return exp_[(std::uint64_t(log_[a]) * (e % order)) % order];
}

// ---------------------------------------------------------------------------

Poly::Poly(std::vector<Element> coeffs) : c_(std::move(coeffs)) {
    normalize();
}

Poly Poly::constant(Element c) {
    return Poly(std::vector<Element>{c});
}

Poly Poly::monomial(unsigned degree, Element c) {
    std::vector<Element> v(degree + 1, 0);
    v[degree] = c;
    return Poly(std::move(v));
}

void Poly::normalize() {
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

void Poly::set_coeff(std::size_t i, Element v) {
    if (i >= c_.size()) {
        if (v == 0)
            return;
        c_.resize(i + 1, 0);
    }
    c_[i] = v;
    normalize();
}

Poly& Poly::operator+=(const Poly& b) {
    if (b.c_.size() > c_.size())
        c_.resize(b.c_.size(), 0);
    for (std::size_t i = 0; i < b.c_.size(); ++i)
        c_[i] ^= b.c_[i];
    normalize();
    return *this;
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly r = a;
    r += b;
    return r;
}

Poly mul(const Field& f, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero())
        return {};
    const auto ac = a.coeffs();
    const auto bc = b.coeffs();
    std::vector<Element> r(ac.size() + bc.size() - 1, 0);
    for (std::size_t i = 0; i < ac.size(); ++i) {
        if (ac[i] == 0)
            continue;
        for (std::size_t j = 0; j < bc.size(); ++j)
            r[i + j] ^= f.mul(ac[i], bc[j]);
    }
    return Poly(std::move(r));
}

Poly scale(const Field& f, const Poly& a, Element c) {
    std::vector<Element> r(a.coeffs().begin(), a.coeffs().end());
    for (auto& x : r)
        x = f.mul(x, c);
    return Poly(std::move(r));
}

Poly shift(const Poly& a, unsigned k) {
    if (a.is_zero())
        return {};
    std::vector<Element> r(k, 0);
    r.insert(r.end(), a.coeffs().begin(), a.coeffs().end());
    return Poly(std::move(r));
}

DivMod divmod(const Field& f, const Poly& a, const Poly& b) {
    if (b.is_zero())
        throw Error(Errc::ZeroOperand, "polynomial division by zero");
    std::vector<Element> rem(a.coeffs().begin(), a.coeffs().end());
    const auto bc = b.coeffs();
    const int db = b.degree();
    const Element lead_inv = f.inv(b.leading());
    if (a.degree() < db)
        return {Poly{}, a};
    std::vector<Element> quot(std::size_t(a.degree() - db + 1), 0);
    for (int d = a.degree(); d >= db; --d) {
        const Element c = rem[std::size_t(d)];
        if (c == 0)
            continue;
        const Element q = f.mul(c, lead_inv);
        quot[std::size_t(d - db)] = q;
        for (int j = 0; j <= db; ++j)
            rem[std::size_t(d - db + j)] ^= f.mul(q, bc[std::size_t(j)]);
    }
    return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly mod(const Field& f, const Poly& a, const Poly& g) {
    if (a.degree() < g.degree())
        return a;
    return divmod(f, a, g).rem;
}

Poly mul_mod(const Field& f, const Poly& a, const Poly& b, const Poly& g) {
    return mod(f, mul(f, a, b), g);
}

Poly sqr_mod(const Field& f, const Poly& a, const Poly& g) {
    if (a.is_zero())
        return {};
    // Squaring is additive in characteristic 2: (sum a_i z^i)^2 = sum a_i^2 z^2i.
    std::vector<Element> r(2 * a.coeffs().size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        r[2 * i] = f.sqr(a.coeffs()[i]);
    return mod(f, Poly(std::move(r)), g);
}

Poly make_monic(const Field& f, const Poly& a) {
    if (a.is_zero())
        return a;
    return scale(f, a, f.inv(a.leading()));
}

Element eval(const Field& f, const Poly& p, Element x) {
    Element acc = 0;
    const auto c = p.coeffs();
    for (std::size_t i = c.size(); i-- > 0;)
        acc = f.mul(acc, x) ^ c[i];
    return acc;
}

ExtGcd ext_gcd(const Field& f, const Poly& a, const Poly& b, int stop_deg) {
    if (b.is_zero())
        throw Error(Errc::ZeroOperand, "ext_gcd with zero second operand");
    const bool to_end = stop_deg < 0;

    Poly r0 = a, r1 = b;
    Poly u0 = Poly::constant(1), u1;
    Poly v0, v1 = Poly::constant(1);

    if (!to_end && r0.degree() <= stop_deg)
        return {r0, u0, v0};
    for (;;) {
        if (to_end ? r1.is_zero() : r1.degree() <= stop_deg)
            return to_end ? ExtGcd{r0, u0, v0} : ExtGcd{r1, u1, v1};
        auto [q, r2] = divmod(f, r0, r1);
        Poly u2 = u0 + mul(f, q, u1);
        Poly v2 = v0 + mul(f, q, v1);
        r0 = std::move(r1);
        r1 = std::move(r2);
        u0 = std::move(u1);
        u1 = std::move(u2);
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
}

Poly gcd(const Field& f, const Poly& a, const Poly& b) {
    if (b.is_zero())
        return make_monic(f, a);
    return make_monic(f, ext_gcd(f, a, b, kRunToEnd).r);
}

Poly inv_mod(const Field& f, const Poly& a, const Poly& g) {
    const Poly r = mod(f, a, g);
    if (r.is_zero())
        throw Error(Errc::NotInvertible, "polynomial is zero modulo g");
    const ExtGcd e = ext_gcd(f, g, r, kRunToEnd);
    if (e.r.degree() != 0)
        throw Error(Errc::NotInvertible, "polynomial shares a factor with the modulus");
    return mod(f, scale(f, e.v, f.inv(e.r.leading())), g);
}

Poly sqrt_mod(const Field& f, const Poly& a, const Poly& g) {
    Poly x = mod(f, a, g);
    const unsigned squarings = f.m() * unsigned(g.degree()) - 1;
    for (unsigned i = 0; i < squarings; ++i)
        x = sqr_mod(f, x, g);
    return x;
}

namespace {

// z^(2^(m*k)) mod g, by m*k squarings of z.
Poly frobenius_power_of_z(const Field& f, const Poly& g, unsigned k) {
    Poly x = mod(f, Poly::monomial(1), g);
    for (unsigned i = 0; i < f.m() * k; ++i)
        x = sqr_mod(f, x, g);
    return x;
}

} // namespace

bool is_irreducible(const Field& f, const Poly& g) {
    const int t = g.degree();
    if (t < 1)
        return false;
    if (t == 1)
        return true;
    const Poly z = Poly::monomial(1);
    if (frobenius_power_of_z(f, g, unsigned(t)) != mod(f, z, g))
        return false;
    for (int p = 2; p <= t; ++p) {
        bool prime = true;
        for (int d = 2; d * d <= p; ++d)
            prime = prime && (p % d != 0);
        if (!prime || t % p != 0)
            continue;
        const Poly h = frobenius_power_of_z(f, g, unsigned(t / p)) + z;
        if (h.is_zero() || gcd(f, g, h).degree() != 0)
            return false;
    }
    return true;
}

bool splits_into_distinct_linears(const Field& f, const Poly& g) {
    if (g.degree() < 1)
        return false;
    return frobenius_power_of_z(f, g, 1) == mod(f, Poly::monomial(1), g);
}

Poly random_irreducible(const Field& f, unsigned t, Rng& rng) {
    if (t < 1)
        throw Error(Errc::ParameterError, "irreducible degree must be >= 1");
    for (;;) {
        std::vector<Element> c(t + 1);
        for (unsigned i = 0; i < t; ++i)
            c[i] = Element(rng.uniform_below(f.size()));
        c[t] = 1;
        Poly g(std::move(c));
        if (is_irreducible(f, g))
            return g;
    }
}

} // namespace cibi::gf2m
