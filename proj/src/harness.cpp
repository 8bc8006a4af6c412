#include "cibi/harness.hpp"

#include "cibi/error.hpp"
#include "cibi/kernels.hpp"

#include <json.hpp>

#include <cmath>
#include <numeric>
#include <sstream>

namespace cibi::harness {

using binmat::BitMatrix;
using binmat::BitVector;

std::array<bool, 3> answerable(Strategy s) noexcept {
    switch (s) {
    case Strategy::A: return {true, true, false};
    case Strategy::B: return {true, false, true};
    default: return {false, true, true};
    }
}

char strategy_name(Strategy s) noexcept {
    return s == Strategy::A ? 'A' : s == Strategy::B ? 'B' : 'C';
}

stern::Response CheatProver::respond(stern::Challenge ch) {
    if (consumed_)
        throw Error(Errc::StateReuse, "cheating round state already used");
    if (ch.b > 2)
        throw Error(Errc::RangeError, "challenge must be 0, 1 or 2");
    consumed_ = true;
    switch (ch.b) {
    case 0: return stern::RevealY{seed_, y_};
    case 1: return stern::RevealMasked{seed_, y_ ^ s_prime_};
    default:
        return stern::RevealPermuted{binmat::apply_permutation(sigma_, y_), binmat::apply_permutation(sigma_, s_prime_)};
    }
}

std::pair<CheatProver, stern::Commitments> cheat_commit(Strategy strategy, const stern::SternParams& params,
                                                        const stern::Statement& st, Rng& rng,
                                                        const BitVector* solution) {
    const BitMatrix& h = *params.h_tilde;
    CheatProver p;
    if (strategy == Strategy::A)
        p.s_prime_ = solution ? *solution : binmat::gaussian_solve(h, st.identifier);
    else
        p.s_prime_ = BitVector::random_weight(params.n(), st.weight, rng);
    p.y_ = BitVector::random(params.n(), rng);
    p.seed_ = rng.next_seed();
    p.sigma_ = stern::permutation_from_seed(p.seed_, params.n());

    const BitVector masked = p.y_ ^ p.s_prime_;
    stern::Commitments c;
    if (strategy == Strategy::C)
        c.c1 = stern::commit_c1(p.sigma_, binmat::mat_vec_mul(h, masked) ^ st.identifier);
    else
        c.c1 = stern::commit_c1(p.sigma_, binmat::mat_vec_mul(h, p.y_));
    c.c2 = stern::commit_vector(binmat::apply_permutation(p.sigma_, p.y_));
    c.c3 = stern::commit_vector(binmat::apply_permutation(p.sigma_, masked));
    return {std::move(p), c};
}

// ---------------------------------------------------------------------------

std::string_view adversary_name(Adversary a) noexcept {
    switch (a) {
    case Adversary::NoKey: return "no-key";
    case Adversary::WrongKey: return "wrong-key";
    default: return "honest";
    }
}

std::optional<Adversary> parse_adversary(std::string_view s) noexcept {
    for (Adversary a : {Adversary::NoKey, Adversary::WrongKey, Adversary::Honest})
        if (s == adversary_name(a))
            return a;
    return std::nullopt;
}

GameResult impersonation_game(const GameConfig& cfg) {
    if (cfg.trials == 0 || cfg.rounds == 0)
        throw Error(Errc::ParameterError, "trials and rounds must be at least 1");
    Rng setup(cfg.seed);
    const auto keys = ibi::master_keygen(cfg.m, cfg.t, cfg.rounds, setup);
    const ibi::MasterPublicKey& mpk = keys.mpk;
    const stern::SternParams params = mpk.stern_params(cfg.rounds);
    const Bytes target = to_bytes("target");

    stern::Statement st;
    stern::SternSecret secret;
    BitVector solution;
    switch (cfg.adversary) {
    case Adversary::Honest: {
        const auto usk = ibi::extract_user_key(keys.msk, mpk, target, setup).usk;
        st = {ibi::derive_identifier(mpk, target, usk.j), usk.w};
        secret.s = usk.s;
        break;
    }
    case Adversary::WrongKey: {
        // A genuine key for another identity, presented under the target's name.
        const auto usk = ibi::extract_user_key(keys.msk, mpk, to_bytes("bystander"), setup).usk;
        st = {ibi::derive_identifier(mpk, target, usk.j), usk.w};
        secret.s = usk.s;
        break;
    }
    case Adversary::NoKey:
        st = {ibi::derive_identifier(mpk, target, 1), cfg.t};
        solution = binmat::gaussian_solve(*params.h_tilde, st.identifier);
        break;
    }

    const Rng trials_root = setup.fork(0x7472);
    auto trial = [&](std::uint64_t i) {
        Rng rng = trials_root.fork(i);
        for (unsigned r = 0; r < cfg.rounds; ++r) {
            stern::Commitments com;
            stern::Response resp;
            if (cfg.adversary == Adversary::NoKey) {
                const auto strategy = Strategy(rng.uniform_below(3));
                auto [prover, c] = cheat_commit(strategy, params, st, rng, &solution);
                const stern::Challenge ch = stern::draw_challenge(rng);
                com = c;
                resp = prover.respond(ch);
                if (!stern::verify_round(params, st, com, ch, resp))
                    return false;
            } else {
                auto [state, c] = stern::commit(params, secret, rng);
                const stern::Challenge ch = stern::draw_challenge(rng);
                if (!stern::verify_round(params, st, c, ch, state.respond(secret, ch)))
                    return false;
            }
        }
        return true;
    };

    GameResult res;
    res.config = cfg;
    res.successes = kernels::count_successes(cfg.trials, trial);
    res.rate = double(res.successes) / double(cfg.trials);
    res.bound = cfg.adversary == Adversary::Honest ? 1.0 : std::pow(2.0 / 3.0, double(cfg.rounds));
    res.three_sigma = 3.0 * std::sqrt(res.bound * (1.0 - res.bound) / double(cfg.trials));
    return res;
}

// ---------------------------------------------------------------------------

std::optional<BitVector> brute_force_decode(const BitMatrix& h, const BitVector& syndrome, unsigned t) {
    const std::size_t n = h.cols();
    if (n > 40 || t > 3)
        throw Error(Errc::CostGuard, "brute force is limited to n <= 40 and t <= 3");
    if (syndrome.size() != h.rows())
        throw Error(Errc::DimensionMismatch, "syndrome length must equal the row count");
    std::vector<BitVector> col(n);
    for (std::size_t i = 0; i < n; ++i)
        col[i] = h.column(i);

    if (syndrome.weight() == 0)
        return BitVector(n);
    std::vector<std::size_t> pos;
    auto found = [&] { return BitVector::from_support(n, pos); };
    for (std::size_t a = 0; t >= 1 && a < n; ++a)
        if (col[a] == syndrome)
            return pos = {a}, found();
    for (std::size_t a = 0; t >= 2 && a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if ((col[a] ^ col[b]) == syndrome)
                return pos = {a, b}, found();
    for (std::size_t a = 0; t >= 3 && a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            const BitVector ab = col[a] ^ col[b];
            for (std::size_t c = b + 1; c < n; ++c)
                if ((ab ^ col[c]) == syndrome)
                    return pos = {a, b, c}, found();
        }
    return std::nullopt;
}

IsdResult prange_isd(const BitMatrix& h, const BitVector& syndrome, unsigned t, std::uint64_t max_iters, Rng& rng) {
    if (syndrome.size() != h.rows())
        throw Error(Errc::DimensionMismatch, "syndrome length must equal the row count");
    const std::size_t n = h.cols();
    IsdResult res;
    for (; res.iterations < max_iters;) {
        ++res.iterations;
        const auto order = binmat::Permutation::random(n, rng);
        std::vector<std::size_t> cols(order.map().begin(), order.map().end());
        const auto ech = binmat::row_reduce(h, syndrome, cols, h.rows());
        // rows past the pivots must be consistent
        bool consistent = true;
        for (std::size_t r = ech.pivot_cols.size(); r < h.rows(); ++r)
            consistent = consistent && !ech.rhs.get(r);
        if (!consistent)
            continue;
        BitVector e(n);
        for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r)
            if (ech.rhs.get(r))
                e.set(ech.pivot_cols[r]);
        if (e.weight() <= t) {
            res.error = std::move(e);
            return res;
        }
    }
    return res;
}

double prange_success_probability(std::size_t n, std::size_t redundancy, unsigned t) {
    const std::size_t k = n - redundancy;
    double log_p = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const double f = 1.0 - double(t) / double(n - i);
        if (f <= 0)
            return 0;
        log_p += std::log(f);
    }
    return std::exp(log_p);
}

// ---------------------------------------------------------------------------

CostEstimate estimate_costs(unsigned m, unsigned t, unsigned rounds_ibi, unsigned rounds_ibs) {
    if (m < 2 || m > 16 || t < 1 || std::uint64_t(m) * t >= (std::uint64_t(1) << m))
        throw Error(Errc::ParameterError, "need 2 <= m <= 16 and 1 <= t with mt < 2^m");
    CostEstimate c;
    c.m = m;
    c.t = t;
    c.rounds_ibi = rounds_ibi;
    c.rounds_ibs = rounds_ibs;
    const std::uint64_t n = std::uint64_t(1) << m;
    const std::uint64_t tm = std::uint64_t(t) * m;
    c.pk_bits = tm;
    c.sk_bits = tm;
    c.matrix_bits = n * tm;
    c.comm_bits_identification = n * rounds_ibi;
    c.comm_bits_signature = n * rounds_ibs;
    double fact = 1;
    for (unsigned i = 2; i <= t; ++i)
        fact *= i;
    c.extraction_binops = fact * t * t * double(m) * m * (0.5 + 2.0 + 6.0 / m);
    c.attack_binops_log2 = double(tm) / 2.0;
    c.isd_success_prob = prange_success_probability(n, tm, t);
    return c;
}

namespace {

nlohmann::ordered_json json_of(const GameResult& r) {
    return {{"kind", adversary_name(r.config.adversary)},
            {"m", r.config.m},
            {"t", r.config.t},
            {"rounds", r.config.rounds},
            {"trials", r.config.trials},
            {"seed", r.config.seed},
            {"successes", r.successes},
            {"rate", r.rate},
            {"bound", r.bound},
            {"three_sigma", r.three_sigma}};
}

nlohmann::ordered_json json_of(const CostEstimate& c) {
    return {{"m", c.m},
            {"t", c.t},
            {"rounds_ibi", c.rounds_ibi},
            {"rounds_ibs", c.rounds_ibs},
            {"pk_bits", c.pk_bits},
            {"sk_bits", c.sk_bits},
            {"matrix_bits", c.matrix_bits},
            {"comm_bits_identification", c.comm_bits_identification},
            {"comm_bits_signature", c.comm_bits_signature},
            {"extraction_binops", c.extraction_binops},
            {"attack_binops_log2", c.attack_binops_log2},
            {"attack_is_lower_bound", c.attack_is_lower_bound},
            {"isd_success_prob", c.isd_success_prob}};
}

std::string key_values(const nlohmann::ordered_json& j) {
    std::ostringstream out;
    for (const auto& [k, v] : j.items())
        out << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    return out.str();
}

} // namespace

std::string to_text(const GameResult& r) { return key_values(json_of(r)); }
std::string to_text(const CostEstimate& c) { return key_values(json_of(c)); }
std::string to_json(const GameResult& r) { return json_of(r).dump(2) + "\n"; }
std::string to_json(const CostEstimate& c) { return json_of(c).dump(2) + "\n"; }

} // namespace cibi::harness
