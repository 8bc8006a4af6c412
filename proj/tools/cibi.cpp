// Operator CLI. Exit codes: 0 accept/success, 1 reject/invalid, 2 usage, 3 I/O or protocol.
#include "cibi/envelope.hpp"
#include "cibi/error.hpp"
#include "cibi/goppa.hpp"
#include "cibi/harness.hpp"
#include "cibi/net.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>

using namespace cibi;

namespace {

enum Exit { kOk = 0, kReject = 1, kUsage = 2, kIo = 3 };

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Bytes read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoFailure("cannot open " + path);
    return Bytes(std::istreambuf_iterator<char>(in), {});
}

void write_file(const std::string& path, ByteView data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(data.data()), std::streamsize(data.size()));
    if (!out)
        throw IoFailure("cannot write " + path);
}

Rng make_rng(const std::optional<std::uint64_t>& seed) {
    return seed ? Rng(*seed) : Rng::from_os_entropy();
}

int exit_for(Errc c) {
    switch (c) {
    case Errc::ParameterError:
    case Errc::RangeError:
    case Errc::CostGuard:
        return kUsage;
    case Errc::ChannelError:
    case Errc::ProtocolViolation:
    case Errc::MalformedEnvelope:
    case Errc::VersionMismatch:
    case Errc::TruncatedInput:
        return kIo;
    default:
        return kReject;
    }
}

std::string hex_of(const binmat::BitVector& v) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    for (std::uint8_t b : v.to_bytes()) {
        s += digits[b >> 4];
        s += digits[b & 15];
    }
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Code-based identity-based identification and signatures"};
    app.require_subcommand(1);
    int status = kOk;

    // keygen
    unsigned kg_m = 10, kg_t = 3, kg_rounds = 28;
    std::optional<std::uint64_t> kg_seed;
    std::string kg_mpk, kg_msk;
    auto* keygen = app.add_subcommand("keygen", "Generate master keys");
    keygen->add_option("--m", kg_m, "Field degree")->check(CLI::Range(2, 16));
    keygen->add_option("--t", kg_t, "Errors corrected");
    keygen->add_option("--rounds", kg_rounds, "Default identification rounds")->check(CLI::PositiveNumber);
    keygen->add_option("--seed", kg_seed, "Deterministic seed");
    keygen->add_option("--out-mpk", kg_mpk)->required();
    keygen->add_option("--out-msk", kg_msk)->required();
    keygen->callback([&] {
        Rng rng = make_rng(kg_seed);
        const auto kp = ibi::master_keygen(kg_m, kg_t, kg_rounds, rng);
        write_file(kg_mpk, envelope::encode_mpk(kp.mpk));
        write_file(kg_msk, envelope::encode_msk(kp.msk));
        std::cout << "n=" << kp.mpk.n() << " redundancy=" << kp.mpk.redundancy() << " rounds=" << kg_rounds << "\n";
    });

    // extract
    std::string ex_msk, ex_mpk, ex_id, ex_out;
    std::optional<std::uint64_t> ex_seed;
    auto* extract = app.add_subcommand("extract", "Extract a user secret key for an identity");
    extract->add_option("--msk", ex_msk)->required();
    extract->add_option("--mpk", ex_mpk)->required();
    extract->add_option("--id", ex_id)->required();
    extract->add_option("--out-usk", ex_out)->required();
    extract->add_option("--seed", ex_seed);
    extract->callback([&] {
        const auto mpk = envelope::decode_mpk(read_file(ex_mpk));
        const auto msk = envelope::decode_msk(read_file(ex_msk));
        Rng rng = make_rng(ex_seed);
        const Bytes id = to_bytes(ex_id);
        const auto res = ibi::extract_user_key(msk, mpk, id, rng);
        write_file(ex_out, envelope::encode_usk({mpk, id, res.usk}));
        std::cout << "j=" << res.usk.j << " w=" << res.usk.w << " attempts=" << res.attempts << "\n";
    });

    // verify-serve
    std::string vs_mpk, vs_listen, vs_log;
    unsigned vs_rounds = 0;
    std::uint64_t vs_max = 0;
    std::optional<std::uint64_t> vs_seed;
    auto* serve = app.add_subcommand("verify-serve", "Run the verifier service");
    serve->add_option("--mpk", vs_mpk)->required();
    serve->add_option("--listen", vs_listen, "host:port")->required();
    serve->add_option("--rounds", vs_rounds, "Rounds per session (default: from the mpk)");
    serve->add_option("--seed", vs_seed, "Session i uses a stream forked from this seed");
    serve->add_option("--max-sessions", vs_max, "Stop after this many sessions (0: run forever)");
    serve->add_option("--log-dir", vs_log, "Write one transcript envelope per session here");
    serve->callback([&] {
        const auto mpk = envelope::decode_mpk(read_file(vs_mpk));
        net::TcpListener listener(net::parse_endpoint(vs_listen));
        std::cout << "listening port=" << listener.port() << std::endl;
        std::mutex out_mu;
        net::ServeOptions opts;
        opts.rounds = vs_rounds;
        opts.seed = vs_seed;
        opts.max_sessions = vs_max;
        opts.on_session = [&](const net::SessionRecord& rec) {
            std::lock_guard lock(out_mu);
            std::cout << "session=" << rec.index << " peer=" << rec.peer;
            if (rec.outcome) {
                const auto& h = rec.outcome->hello;
                std::cout << " id=" << std::string(h.id.begin(), h.id.end()) << " j=" << h.j
                          << " rounds=" << rec.outcome->session.rounds.size()
                          << " decision=" << (rec.accepted() ? "accept" : "reject");
            } else {
                std::cout << " decision=reject error=\"" << rec.error << "\"";
            }
            std::cout << std::endl;
            if (!vs_log.empty() && !rec.transcript.empty())
                write_file((std::filesystem::path(vs_log) / ("session-" + std::to_string(rec.index) + ".cibi")).string(),
                           rec.transcript);
        };
        net::serve_verifier(listener, mpk, opts);
    });

    // prove
    std::string pv_usk, pv_id, pv_connect;
    std::optional<std::uint64_t> pv_seed;
    auto* prove = app.add_subcommand("prove", "Identify to a verifier");
    prove->add_option("--usk", pv_usk)->required();
    prove->add_option("--id", pv_id)->required();
    prove->add_option("--connect", pv_connect, "host:port")->required();
    prove->add_option("--seed", pv_seed);
    prove->callback([&] {
        const auto rec = envelope::decode_usk(read_file(pv_usk));
        Rng rng = make_rng(pv_seed);
        const bool ok = net::run_prover(net::parse_endpoint(pv_connect), rec.mpk, to_bytes(pv_id), rec.usk, rng);
        std::cout << (ok ? "accept" : "reject") << "\n";
        status = ok ? kOk : kReject;
    });

    // ibs-sign
    std::string is_usk, is_mpk, is_id, is_msg, is_out;
    unsigned is_rounds = 137;
    std::optional<std::uint64_t> is_seed;
    auto* ibs_sign = app.add_subcommand("ibs-sign", "Sign a message under an identity");
    ibs_sign->add_option("--usk", is_usk)->required();
    ibs_sign->add_option("--mpk", is_mpk)->required();
    ibs_sign->add_option("--id", is_id)->required();
    ibs_sign->add_option("--msg-file", is_msg)->required();
    ibs_sign->add_option("--rounds", is_rounds)->check(CLI::PositiveNumber);
    ibs_sign->add_option("--out", is_out)->required();
    ibs_sign->add_option("--seed", is_seed);
    ibs_sign->callback([&] {
        const auto mpk = envelope::decode_mpk(read_file(is_mpk));
        const auto rec = envelope::decode_usk(read_file(is_usk));
        if (rec.mpk.pk->h_tilde != mpk.pk->h_tilde)
            throw Error(Errc::ParameterError, "user key was issued under a different master key");
        if (rec.id != to_bytes(is_id))
            throw Error(Errc::ParameterError, "user key belongs to another identity");
        Rng rng = make_rng(is_seed);
        const auto sig = ibi::ibs_sign(rec.usk, mpk, rec.id, read_file(is_msg), is_rounds, rng);
        const Bytes enc = envelope::encode_ibs_sig(sig, mpk.n());
        write_file(is_out, enc);
        std::cout << "rounds=" << is_rounds << " bytes=" << enc.size() << "\n";
    });

    // ibs-verify
    std::string iv_mpk, iv_id, iv_msg, iv_sig;
    auto* ibs_verify = app.add_subcommand("ibs-verify", "Verify an identity-based signature");
    ibs_verify->add_option("--mpk", iv_mpk)->required();
    ibs_verify->add_option("--id", iv_id)->required();
    ibs_verify->add_option("--msg-file", iv_msg)->required();
    ibs_verify->add_option("--sig", iv_sig)->required();
    ibs_verify->callback([&] {
        const auto mpk = envelope::decode_mpk(read_file(iv_mpk));
        const Bytes msg = read_file(iv_msg), raw = read_file(iv_sig);
        bool ok = false;
        try {
            std::size_t n = 0;
            const auto sig = envelope::decode_ibs_sig(raw, &n);
            ok = n == mpk.n() && ibi::ibs_verify(mpk, to_bytes(iv_id), msg, sig);
        } catch (const Error& e) {
            std::cerr << "malformed signature: " << e.what() << "\n";
        }
        std::cout << (ok ? "valid" : "invalid") << "\n";
        status = ok ? kOk : kReject;
    });

    // game
    harness::GameConfig gc;
    std::string g_kind = "no-key";
    bool g_json = false;
    auto* game = app.add_subcommand("game", "Run the impersonation game");
    game->add_option("--kind", g_kind, "no-key | wrong-key | honest");
    game->add_option("--m", gc.m)->check(CLI::Range(2, 16));
    game->add_option("--t", gc.t);
    game->add_option("--rounds", gc.rounds)->check(CLI::PositiveNumber);
    game->add_option("--trials", gc.trials)->check(CLI::PositiveNumber);
    game->add_option("--seed", gc.seed);
    game->add_flag("--json", g_json);
    game->callback([&] {
        const auto kind = harness::parse_adversary(g_kind);
        if (!kind)
            throw Error(Errc::ParameterError, "unknown adversary kind " + g_kind);
        gc.adversary = *kind;
        const auto res = harness::impersonation_game(gc);
        std::cout << (g_json ? harness::to_json(res) : harness::to_text(res));
    });

    // estimate
    unsigned es_m = 16, es_t = 9, es_ibi = 58, es_ibs = 280;
    bool es_json = false;
    auto* estimate = app.add_subcommand("estimate", "Evaluate the size and cost model");
    estimate->add_option("--m", es_m);
    estimate->add_option("--t", es_t);
    estimate->add_option("--rounds-ibi", es_ibi);
    estimate->add_option("--rounds-ibs", es_ibs);
    estimate->add_flag("--json", es_json);
    estimate->callback([&] {
        const auto c = harness::estimate_costs(es_m, es_t, es_ibi, es_ibs);
        std::cout << (es_json ? harness::to_json(c) : harness::to_text(c));
    });

    // oracle-check
    unsigned oc_m = 5, oc_t = 2;
    std::uint64_t oc_seed = 1;
    auto* oracle = app.add_subcommand("oracle-check", "Compare Patterson decoding with brute force on every syndrome");
    oracle->add_option("--m", oc_m);
    oracle->add_option("--t", oc_t);
    oracle->add_option("--seed", oc_seed);
    oracle->callback([&] {
        goppa::check_code_params(oc_m, oc_t);
        if ((std::size_t(1) << oc_m) > 40 || oc_t > 3 || oc_m * oc_t > 24)
            throw Error(Errc::CostGuard, "oracle-check needs n <= 40, t <= 3");
        Rng rng(oc_seed);
        const auto code = goppa::build_goppa(oc_m, oc_t, rng);
        const unsigned r = oc_m * oc_t;
        std::uint64_t decodable = 0, mismatches = 0;
        for (std::uint64_t v = 0; v < (std::uint64_t(1) << r); ++v) {
            binmat::BitVector s(r);
            for (unsigned b = 0; b < r; ++b)
                if ((v >> b) & 1)
                    s.set(b);
            const auto bf = harness::brute_force_decode(code.parity_check(), s, oc_t);
            const auto pd = goppa::try_decode(code, s);
            decodable += bf.has_value();
            if (bf != pd) {
                ++mismatches;
                std::cout << "mismatch syndrome=" << hex_of(s) << "\n";
            }
        }
        std::cout << "syndromes=" << (std::uint64_t(1) << r) << " decodable=" << decodable
                  << " mismatches=" << mismatches << "\n";
        status = mismatches ? kReject : kOk;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_for(e.code());
    } catch (const IoFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    }
    return status;
}
