#pragma once

#include "cibi/binmat.hpp"
#include "cibi/gf2m.hpp"
#include "cibi/rng.hpp"

#include <optional>

// Binary irreducible Goppa codes over the full support GF(2^m), with
// Patterson syndrome decoding.
namespace cibi::goppa {

// Support element i is the field element with encoding i, so n = 2^m and the
// support itself never has to be stored.
class GoppaCode {
public:
    // Validates g (monic, irreducible, degree t) and the rank of the expanded
    // parity-check matrix; throws ParameterError otherwise.
    GoppaCode(unsigned m, unsigned t, gf2m::Poly g);

    const gf2m::Field& field() const noexcept { return *field_; }
    const gf2m::FieldParams& params() const noexcept { return field_->params(); }
    unsigned m() const noexcept { return field_->m(); }
    unsigned t() const noexcept { return t_; }
    std::size_t n() const noexcept { return field_->size(); }
    std::size_t redundancy() const noexcept { return std::size_t(m()) * t_; }  // n - k
    std::size_t k() const noexcept { return n() - redundancy(); }
    const gf2m::Poly& goppa_poly() const noexcept { return g_; }
    gf2m::Element support(std::size_t i) const noexcept { return gf2m::Element(i); }

    // (mt x n): row r*m + b holds bit b of L_i^r / g(L_i).
    const binmat::BitMatrix& parity_check() const noexcept { return h_bin_; }

private:
    const gf2m::Field* field_;
    unsigned t_;
    gf2m::Poly g_;
    binmat::BitMatrix h_bin_;
};

// Throws ParameterError unless 2 <= t and m*t < 2^m.
void check_code_params(unsigned m, unsigned t);

// Samples g until the expanded parity-check matrix has full rank m*t.
GoppaCode build_goppa(unsigned m, unsigned t, Rng& rng);

binmat::BitVector binary_syndrome(const GoppaCode& code, const binmat::BitVector& e);

// Repacks an m*t-bit syndrome into S(z) = sum_{e_i = 1} 1/(z - L_i) mod g.
gf2m::Poly syndrome_poly(const GoppaCode& code, const binmat::BitVector& s);

// Inverse of syndrome_poly, for polynomials of degree < t.
binmat::BitVector syndrome_bits(const GoppaCode& code, const gf2m::Poly& s_poly);

// The error locator sigma(z) Patterson produces for a nonzero syndrome
// polynomial; nullopt when the key equation has no admissible solution.
std::optional<gf2m::Poly> error_locator(const GoppaCode& code, const gf2m::Poly& s_poly);

// The unique word of weight <= t with the given syndrome, or nullopt.
std::optional<binmat::BitVector> try_decode(const GoppaCode& code, const binmat::BitVector& s);

// As try_decode, but throws Undecodable.
binmat::BitVector patterson_decode(const GoppaCode& code, const binmat::BitVector& s);

} // namespace cibi::goppa
