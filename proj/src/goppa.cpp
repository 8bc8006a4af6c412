#include "cibi/goppa.hpp"

#include "cibi/error.hpp"
#include "cibi/kernels.hpp"

#include <string>

namespace cibi::goppa {

using binmat::BitMatrix;
using binmat::BitVector;
using gf2m::Element;
using gf2m::Poly;

void check_code_params(unsigned m, unsigned t) {
    if (m < gf2m::kMinDegree || m > gf2m::kMaxDegree)
        throw Error(Errc::ParameterError, "m=" + std::to_string(m) + " out of range");
    if (t < 2)
        throw Error(Errc::ParameterError, "t must be >= 2");
    if (std::uint64_t(m) * t >= (std::uint64_t(1) << m))
        throw Error(Errc::ParameterError, "m*t must be < 2^m");
}

GoppaCode::GoppaCode(unsigned m, unsigned t, Poly g) : field_(&gf2m::Field::standard(m)), t_(t), g_(std::move(g)) {
    check_code_params(m, t);
    const gf2m::Field& f = *field_;
    if (g_.degree() != int(t) || g_.leading() != 1)
        throw Error(Errc::ParameterError, "Goppa polynomial must be monic of degree t");
    for (Element c : g_.coeffs())
        if (!f.valid(c))
            throw Error(Errc::ParameterError, "Goppa polynomial coefficient outside the field");
    if (!gf2m::is_irreducible(f, g_))
        throw Error(Errc::ParameterError, "Goppa polynomial is reducible");

    h_bin_ = BitMatrix(redundancy(), n());
    for (std::size_t i = 0; i < n(); ++i) {
        const Element l = support(i);
        Element x = f.inv(gf2m::eval(f, g_, l));
        for (unsigned r = 0; r < t_; ++r) {
            for (unsigned b = 0; b < m; ++b)
                if ((x >> b) & 1U)
                    h_bin_.set(std::size_t(r) * m + b, i);
            x = f.mul(x, l);
        }
    }
    if (binmat::rank(h_bin_) != redundancy())
        throw Error(Errc::ParameterError, "parity-check matrix is rank deficient");
}

GoppaCode build_goppa(unsigned m, unsigned t, Rng& rng) {
    check_code_params(m, t);
    const gf2m::Field& f = gf2m::Field::standard(m);
    for (;;) {
        try {
            return GoppaCode(m, t, gf2m::random_irreducible(f, t, rng));
        } catch (const Error& e) {
            if (e.code() != Errc::ParameterError)
                throw;
        }
    }
}

BitVector binary_syndrome(const GoppaCode& code, const BitVector& e) {
    return binmat::mat_vec_mul(code.parity_check(), e);
}

Poly syndrome_poly(const GoppaCode& code, const BitVector& s) {
    if (s.size() != code.redundancy())
        throw Error(Errc::DimensionMismatch, "syndrome length must be m*t");
    const unsigned m = code.m(), t = code.t();
    const gf2m::Field& f = code.field();
    const Poly& g = code.goppa_poly();

    // Power-basis values s_r = sum e_i L_i^r / g(L_i).
    std::vector<Element> pw(t, 0);
    for (unsigned r = 0; r < t; ++r)
        for (unsigned b = 0; b < m; ++b)
            if (s.get(std::size_t(r) * m + b))
                pw[r] |= Element(1U << b);

    // 1/(z - a) = sum_r z^r sum_{j>r} g_j a^(j-1-r) / g(a)  (mod g).
    std::vector<Element> out(t, 0);
    for (unsigned r = 0; r < t; ++r)
        for (unsigned j = r + 1; j <= t; ++j)
            out[r] ^= f.mul(g.coeff(j), pw[j - 1 - r]);
    return Poly(std::move(out));
}

BitVector syndrome_bits(const GoppaCode& code, const Poly& s_poly) {
    const unsigned m = code.m(), t = code.t();
    if (s_poly.degree() >= int(t))
        throw Error(Errc::DimensionMismatch, "syndrome polynomial must have degree < t");
    const gf2m::Field& f = code.field();
    const Poly& g = code.goppa_poly();

    // Triangular back-substitution; g is monic so the diagonal is 1.
    std::vector<Element> pw(t, 0);
    for (unsigned r = t; r-- > 0;) {
        Element v = s_poly.coeff(r);
        for (unsigned j = r + 1; j < t; ++j)
            v ^= f.mul(g.coeff(j), pw[j - 1 - r]);
        pw[t - 1 - r] = v;
    }
    BitVector s(code.redundancy());
    for (unsigned r = 0; r < t; ++r)
        for (unsigned b = 0; b < m; ++b)
            if ((pw[r] >> b) & 1U)
                s.set(std::size_t(r) * m + b);
    return s;
}

std::optional<Poly> error_locator(const GoppaCode& code, const Poly& s_poly) {
    const gf2m::Field& f = code.field();
    const Poly& g = code.goppa_poly();
    const int t = int(code.t());
    const Poly z = Poly::monomial(1);

    const Poly inv = gf2m::inv_mod(f, s_poly, g);
    if (inv == z)
        return z;  // single error at the support element 0
    const Poly root = gf2m::sqrt_mod(f, inv + z, g);

    // a = b * root (mod g) with deg a <= t/2, deg b <= (t-1)/2.
    const gf2m::ExtGcd e = gf2m::ext_gcd(f, g, root, t / 2);
    const Poly& a = e.r;
    const Poly& b = e.v;
    if (b.degree() > (t - 1) / 2)
        return std::nullopt;
    Poly sigma = mul(f, a, a) + shift(mul(f, b, b), 1);
    if (sigma.degree() < 1 || sigma.degree() > t)
        return std::nullopt;
    return sigma;
}

std::optional<BitVector> try_decode(const GoppaCode& code, const BitVector& s) {
    const Poly s_poly = syndrome_poly(code, s);
    if (s_poly.is_zero())
        return BitVector(code.n());

    const auto sigma = error_locator(code, s_poly);
    // Cheap rejection for most undecodable syndromes before the root search.
    if (!sigma || !gf2m::splits_into_distinct_linears(code.field(), *sigma))
        return std::nullopt;

    const auto roots = kernels::find_roots(code.field(), *sigma, std::uint32_t(code.n()));
    if (roots.size() != std::size_t(sigma->degree()))
        return std::nullopt;
    BitVector e(code.n());
    for (std::uint32_t x : roots)
        e.set(x);
    if (binary_syndrome(code, e) != s)
        return std::nullopt;
    return e;
}

BitVector patterson_decode(const GoppaCode& code, const BitVector& s) {
    auto e = try_decode(code, s);
    if (!e)
        throw Error(Errc::Undecodable, "syndrome is not within distance t of the code");
    return std::move(*e);
}

} // namespace cibi::goppa
