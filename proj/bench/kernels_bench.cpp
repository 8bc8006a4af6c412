// Serial reference kernels against their OpenMP counterparts.
#include "cibi/gf2m.hpp"
#include "cibi/kernels.hpp"
#include "cibi/stern.hpp"

#include <benchmark/benchmark.h>

using namespace cibi;

namespace {

const binmat::BitMatrix& matrix_16_9() {
    static const binmat::BitMatrix m = [] {
        Rng rng(1);
        return binmat::BitMatrix::random(144, std::size_t(1) << 16, rng);
    }();
    return m;
}

gf2m::Poly split_poly(const gf2m::Field& f, unsigned t) {
    gf2m::Poly p = gf2m::Poly::constant(1);
    for (unsigned i = 1; i <= t; ++i)
        p = gf2m::mul(f, p, gf2m::Poly({gf2m::Element(i * 977 % f.size()), 1}));
    return p;
}

template <auto Kernel>
void bm_mat_vec(benchmark::State& state) {
    const auto& m = matrix_16_9();
    Rng rng(2);
    const auto v = binmat::BitVector::random(m.cols(), rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(Kernel(m, v));
    state.SetBytesProcessed(std::int64_t(state.iterations()) * std::int64_t(m.rows() * m.cols() / 8));
}

template <auto Kernel>
void bm_find_roots(benchmark::State& state) {
    const auto& f = gf2m::Field::standard(16);
    const auto p = split_poly(f, 9);
    for (auto _ : state)
        benchmark::DoNotOptimize(Kernel(f, p, std::uint32_t(f.size())));
}

// One no-key impersonation-style trial: a few Stern rounds on a toy key.
template <auto Kernel>
void bm_trials(benchmark::State& state) {
    Rng rng(3);
    auto h = std::make_shared<const binmat::BitMatrix>(binmat::BitMatrix::random(16, 256, rng));
    const stern::SternParams params{h, 2, 1};
    const stern::SternSecret secret{binmat::BitVector::random_weight(256, 2, rng)};
    const stern::Statement st{binmat::mat_vec_mul(*h, secret.s), 2};
    const Rng root(4);
    auto trial = [&](std::uint64_t i) {
        Rng r = root.fork(i);
        auto [state_, com] = stern::commit(params, secret, r);
        const auto ch = stern::draw_challenge(r);
        return stern::verify_round(params, st, com, ch, state_.respond(secret, ch));
    };
    for (auto _ : state)
        benchmark::DoNotOptimize(Kernel(std::uint64_t(state.range(0)), trial));
    state.SetItemsProcessed(std::int64_t(state.iterations()) * state.range(0));
}

} // namespace

BENCHMARK(bm_mat_vec<kernels::serial::mat_vec>)->Name("mat_vec/serial/144x65536");
BENCHMARK(bm_mat_vec<kernels::omp::mat_vec>)->Name("mat_vec/omp/144x65536");
BENCHMARK(bm_find_roots<kernels::serial::find_roots>)->Name("find_roots/serial/m16_t9");
BENCHMARK(bm_find_roots<kernels::omp::find_roots>)->Name("find_roots/omp/m16_t9");
BENCHMARK(bm_trials<kernels::serial::count_successes>)->Name("count_successes/serial")->Arg(4096);
BENCHMARK(bm_trials<kernels::omp::count_successes>)->Name("count_successes/omp")->Arg(4096);

BENCHMARK_MAIN();
