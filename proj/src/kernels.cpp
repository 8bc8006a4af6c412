#include "cibi/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>

namespace cibi::kernels {

namespace {

constexpr std::size_t kMatVecParallelWords = std::size_t(1) << 15;
constexpr std::uint32_t kRootsParallelSupport = std::uint32_t(1) << 13;

bool row_parity(std::span<const binmat::Word> row, std::span<const binmat::Word> v) {
    binmat::Word acc = 0;
    for (std::size_t k = 0; k < row.size(); ++k)
        acc ^= row[k] & v[k];
    return std::popcount(acc) & 1;
}

} // namespace

namespace serial {

binmat::BitVector mat_vec(const binmat::BitMatrix& m, const binmat::BitVector& v) {
    binmat::BitVector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (row_parity(m.row_span(r), v.words()))
            out.set(r);
    return out;
}

std::vector<std::uint32_t> find_roots(const gf2m::Field& f, const gf2m::Poly& p, std::uint32_t n) {
    std::vector<std::uint32_t> roots;
    for (std::uint32_t x = 0; x < n; ++x)
        if (gf2m::eval(f, p, gf2m::Element(x)) == 0)
            roots.push_back(x);
    return roots;
}

std::uint64_t count_successes(std::uint64_t trials, const std::function<bool(std::uint64_t)>& trial) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < trials; ++i)
        hits += trial(i) ? 1 : 0;
    return hits;
}

} // namespace serial

namespace omp {

int max_threads() {
    return omp_get_max_threads();
}

binmat::BitVector mat_vec(const binmat::BitMatrix& m, const binmat::BitVector& v) {
    const auto rows = std::int64_t(m.rows());
    std::vector<char> bits(m.rows(), 0);
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < rows; ++r)
        bits[std::size_t(r)] = row_parity(m.row_span(std::size_t(r)), v.words()) ? 1 : 0;
    binmat::BitVector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (bits[r])
            out.set(r);
    return out;
}

std::vector<std::uint32_t> find_roots(const gf2m::Field& f, const gf2m::Poly& p, std::uint32_t n) {
    std::vector<char> is_root(n, 0);
    const auto count = std::int64_t(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t x = 0; x < count; ++x)
        is_root[std::size_t(x)] = gf2m::eval(f, p, gf2m::Element(x)) == 0 ? 1 : 0;
    std::vector<std::uint32_t> roots;
    for (std::uint32_t x = 0; x < n; ++x)
        if (is_root[x])
            roots.push_back(x);
    return roots;
}

std::uint64_t count_successes(std::uint64_t trials, const std::function<bool(std::uint64_t)>& trial) {
    std::uint64_t hits = 0;
    const auto count = std::int64_t(trials);
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : hits)
    for (std::int64_t i = 0; i < count; ++i)
        hits += trial(std::uint64_t(i)) ? 1 : 0;
    return hits;
}

std::optional<Found<std::uint64_t>> first_success_index(std::uint64_t limit,
                                                        const std::function<bool(std::uint64_t)>& attempt) {
    const std::uint64_t batch = std::uint64_t(std::max(1, omp_get_max_threads())) * 4;
    std::vector<char> ok;
    for (std::uint64_t base = 0; base < limit; base += batch) {
        const std::uint64_t len = std::min(batch, limit - base);
        ok.assign(len, 0);
        const auto count = std::int64_t(len);
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t i = 0; i < count; ++i)
            ok[std::size_t(i)] = attempt(base + std::uint64_t(i)) ? 1 : 0;
        for (std::uint64_t i = 0; i < len; ++i)
            if (ok[i])
                return Found<std::uint64_t>{base + i, base + i};
    }
    return std::nullopt;
}

} // namespace omp

binmat::BitVector mat_vec(const binmat::BitMatrix& m, const binmat::BitVector& v) {
    if (omp::max_threads() > 1 && m.rows() * m.row_words() >= kMatVecParallelWords)
        return omp::mat_vec(m, v);
    return serial::mat_vec(m, v);
}

std::vector<std::uint32_t> find_roots(const gf2m::Field& f, const gf2m::Poly& p, std::uint32_t n) {
    if (omp::max_threads() > 1 && n >= kRootsParallelSupport)
        return omp::find_roots(f, p, n);
    return serial::find_roots(f, p, n);
}

std::uint64_t count_successes(std::uint64_t trials, const std::function<bool(std::uint64_t)>& trial) {
    if (omp::max_threads() > 1)
        return omp::count_successes(trials, trial);
    return serial::count_successes(trials, trial);
}

} // namespace cibi::kernels
