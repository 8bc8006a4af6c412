#pragma once

#include "cibi/binmat.hpp"
#include "cibi/gf2m.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

// Data-parallel inner loops. Each kernel has a serial reference in
// kernels::serial and an OpenMP version in kernels::omp with identical
// results; the library calls the dispatching wrappers at the bottom.
namespace cibi::kernels {

// Attempt index -> result, or nullopt on failure. Must be thread-safe.
template <class T>
using Attempt = std::function<std::optional<T>(std::uint64_t)>;

template <class T>
struct Found {
    std::uint64_t index;  // lowest successful attempt index
    T value;
};

namespace serial {

binmat::BitVector mat_vec(const binmat::BitMatrix& m, const binmat::BitVector& v);

// Support positions x in [0, n) with p(x) = 0, ascending.
std::vector<std::uint32_t> find_roots(const gf2m::Field& f, const gf2m::Poly& p, std::uint32_t n);

// Count of trials in [0, trials) for which `trial` returns true.
std::uint64_t count_successes(std::uint64_t trials, const std::function<bool(std::uint64_t)>& trial);

template <class T>
std::optional<Found<T>> first_success(std::uint64_t limit, const Attempt<T>& attempt) {
    for (std::uint64_t i = 0; i < limit; ++i)
        if (auto r = attempt(i))
            return Found<T>{i, std::move(*r)};
    return std::nullopt;
}

} // namespace serial

namespace omp {

int max_threads();

binmat::BitVector mat_vec(const binmat::BitMatrix& m, const binmat::BitVector& v);
std::vector<std::uint32_t> find_roots(const gf2m::Field& f, const gf2m::Poly& p, std::uint32_t n);
std::uint64_t count_successes(std::uint64_t trials, const std::function<bool(std::uint64_t)>& trial);

// Runs attempts in batches across threads; the result is the lowest
// successful index, so it matches serial::first_success exactly.
std::optional<Found<std::uint64_t>> first_success_index(std::uint64_t limit,
                                                        const std::function<bool(std::uint64_t)>& attempt);

template <class T>
std::optional<Found<T>> first_success(std::uint64_t limit, const Attempt<T>& attempt) {
    // Winners are re-run serially so T never has to cross threads.
    auto hit = first_success_index(limit, [&](std::uint64_t i) { return attempt(i).has_value(); });
    if (!hit)
        return std::nullopt;
    return Found<T>{hit->index, std::move(*attempt(hit->index))};
}

} // namespace omp

// Dispatch: OpenMP above a work threshold when more than one thread is available.
binmat::BitVector mat_vec(const binmat::BitMatrix& m, const binmat::BitVector& v);
std::vector<std::uint32_t> find_roots(const gf2m::Field& f, const gf2m::Poly& p, std::uint32_t n);
std::uint64_t count_successes(std::uint64_t trials, const std::function<bool(std::uint64_t)>& trial);

template <class T>
std::optional<Found<T>> first_success(std::uint64_t limit, const Attempt<T>& attempt) {
    if (omp::max_threads() > 1)
        return omp::first_success<T>(limit, attempt);
    return serial::first_success<T>(limit, attempt);
}

} // namespace cibi::kernels
