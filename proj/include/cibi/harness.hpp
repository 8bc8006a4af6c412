#pragma once

#include "cibi/ibi.hpp"
#include "cibi/stern.hpp"

#include <array>
#include <optional>
#include <string>

namespace cibi::harness {

// --- cheating provers -----------------------------------------------------

// A answers {0,1}, B answers {0,2}, C answers {1,2}.
enum class Strategy { A, B, C };

std::array<bool, 3> answerable(Strategy s) noexcept;
char strategy_name(Strategy s) noexcept;

// All three strategies open their commitments from a fake secret s';
// they differ in which commitment is built from a lie.
//   A: s' solves H~ s' = identifier with arbitrary weight.
//   B: s' has weight w but the wrong syndrome.
//   C: as B, with c1 forged as H(sigma || H~(y ^ s') ^ identifier).
class CheatProver {
public:
    stern::Response respond(stern::Challenge ch);
    const binmat::BitVector& fake_secret() const noexcept { return s_prime_; }

private:
    friend std::pair<CheatProver, stern::Commitments> cheat_commit(Strategy, const stern::SternParams&,
                                                                   const stern::Statement&, Rng&,
                                                                   const binmat::BitVector*);
    binmat::BitVector y_;
    Seed256 seed_{};
    binmat::Permutation sigma_;
    binmat::BitVector s_prime_;
    bool consumed_ = false;
};

// `solution` may carry a precomputed H~ x = identifier solution for A.
std::pair<CheatProver, stern::Commitments> cheat_commit(Strategy strategy, const stern::SternParams& params,
                                                        const stern::Statement& st, Rng& rng,
                                                        const binmat::BitVector* solution = nullptr);

// --- impersonation game ---------------------------------------------------

enum class Adversary { NoKey, WrongKey, Honest };

std::string_view adversary_name(Adversary a) noexcept;
std::optional<Adversary> parse_adversary(std::string_view s) noexcept;

struct GameConfig {
    unsigned m = 8;
    unsigned t = 2;
    unsigned rounds = 1;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    Adversary adversary = Adversary::NoKey;
};

struct GameResult {
    GameConfig config;
    std::uint64_t successes = 0;
    double rate = 0;
    double bound = 0;        // (2/3)^k, or 1 for the honest prover
    double three_sigma = 0;  // 3 binomial standard deviations at `bound`
};

// Keys come from cfg.seed; trial i uses its own forked stream, so the
// result does not depend on the thread count.
GameResult impersonation_game(const GameConfig& cfg);

// --- decoding oracles -----------------------------------------------------

// Weight <= t word with H e = syndrome, smallest weight first and
// lexicographic (by support) within a weight. CostGuard unless n <= 40, t <= 3.
std::optional<binmat::BitVector> brute_force_decode(const binmat::BitMatrix& h, const binmat::BitVector& syndrome,
                                                    unsigned t);

struct IsdResult {
    std::optional<binmat::BitVector> error;
    std::uint64_t iterations = 0;
};

// Prange: eliminate over a random column order and read off the error
// supported on the pivot columns.
IsdResult prange_isd(const binmat::BitMatrix& h, const binmat::BitVector& syndrome, unsigned t,
                     std::uint64_t max_iters, Rng& rng);

// prod_{i<k} (1 - t/(n-i)) with k = n - redundancy.
double prange_success_probability(std::size_t n, std::size_t redundancy, unsigned t);

// --- cost model -----------------------------------------------------------

struct CostEstimate {
    unsigned m = 0, t = 0, rounds_ibi = 0, rounds_ibs = 0;
    std::uint64_t pk_bits = 0;
    std::uint64_t sk_bits = 0;
    std::uint64_t matrix_bits = 0;
    std::uint64_t comm_bits_identification = 0;
    std::uint64_t comm_bits_signature = 0;
    double extraction_binops = 0;
    double attack_binops_log2 = 0;
    bool attack_is_lower_bound = true;  // the o(1) term is dropped
    double isd_success_prob = 0;
};

CostEstimate estimate_costs(unsigned m, unsigned t, unsigned rounds_ibi, unsigned rounds_ibs);

// key=value lines
std::string to_text(const GameResult& r);
std::string to_text(const CostEstimate& c);
std::string to_json(const GameResult& r);
std::string to_json(const CostEstimate& c);

} // namespace cibi::harness
