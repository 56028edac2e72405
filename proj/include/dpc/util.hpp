#pragma once

#include <cstdint>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace dpc {

/// A consumed configuration violates general position (singular system,
/// barycentric coordinate exactly zero, non-transverse hulls).  Callers
/// resample rather than skip: silent skips would corrupt cocycle values.
struct DegeneracyError : std::runtime_error {
    explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

/// An enumeration or matrix exceeds a configured cap; no verdict is produced.
struct ResourceLimitError : std::runtime_error {
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed files, out-of-range ids, shape mismatches.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// An operation was invoked outside its documented domain.
struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

/// splitmix64 step: advances the state and returns one pseudo-random word.
/// Used instead of <random> distributions because identical seeds must give
/// byte-identical output on every platform.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Uniform-ish value in [0, bound); bound must be positive.  The tiny modulo
/// bias is irrelevant for genericity sampling.
inline std::uint64_t rng_below(std::uint64_t& state, std::uint64_t bound) {
    return splitmix64(state) % bound;
}

/// FNV-1a over a byte string; used to echo input identities in reports.
inline std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Runs fn(i) for i in [0, n) on up to `workers` threads.  Results must be
/// written to pre-sized slots indexed by i so merging is deterministic; the
/// first exception in index order is rethrown.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::size_t nthreads = std::min<std::size_t>(workers, n);
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < n; i += nthreads) {
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    for (std::size_t i = 0; i < n; ++i)
        if (errors[i]) std::rethrow_exception(errors[i]);
}

}  // namespace dpc
