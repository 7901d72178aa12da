#pragma once

// Deterministic counter-based random source. A sampler is (seed, stream,
// counter); output k of a stream is a pure function of those three values, and
// split() derives independent child streams, so results never depend on
// evaluation order.

#include <cstdint>
#include <string_view>

#include "heisenberg.hpp"
#include "rational.hpp"

namespace heisconvex {

class Sampler {
public:
    explicit Sampler(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}

    [[nodiscard]] std::uint64_t seed() const { return seed_; }

    [[nodiscard]] Sampler split(std::string_view label) const {
        std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
        for (unsigned char ch : label) {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
        return Sampler(seed_, mix(stream_ ^ mix(h)));
    }

    [[nodiscard]] Sampler split(std::uint64_t index) const { return Sampler(seed_, mix(stream_ + mix(index + 1))); }

    std::uint64_t next_u64() {
        const std::uint64_t k = ++counter_;
        return mix(mix(seed_ ^ 0x9e3779b97f4a7c15ULL) ^ mix(stream_ + k * 0xbf58476d1ce4e5b9ULL));
    }

    /// Uniform integer in [lo, hi], by rejection.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = std::uint64_t(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next_u64());
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return lo + static_cast<std::int64_t>(x % span);
    }

    /// p/q with |p| <= num_bound and 1 <= q <= den_bound.
    Rational small_rational(std::int64_t num_bound, std::int64_t den_bound) {
        const auto p = uniform_int(-num_bound, num_bound);
        const auto q = uniform_int(1, den_bound);
        return Rational(static_cast<long long>(p), static_cast<long long>(q));
    }

    Rational nonzero_rational(std::int64_t num_bound, std::int64_t den_bound) {
        for (;;) {
            Rational r = small_rational(num_bound, den_bound);
            if (!r.is_zero()) return r;
        }
    }

    /// Group element whose coordinates are zero a quarter of the time, so the
    /// axes and the center get exercised too.
    RatElement element(std::int64_t num_bound = 5, std::int64_t den_bound = 4) {
        auto coord = [&] {
            return uniform_int(0, 3) == 0 ? Rational(0) : nonzero_rational(num_bound, den_bound);
        };
        RatElement g;
        g.a = coord();
        g.b = coord();
        g.c = coord();
        return g;
    }

    RatElement nontrivial_element(std::int64_t num_bound = 5, std::int64_t den_bound = 4) {
        for (;;) {
            RatElement g = element(num_bound, den_bound);
            if (!(g.a.is_zero() && g.b.is_zero() && g.c.is_zero())) return g;
        }
    }

private:
    static std::uint64_t mix(std::uint64_t z) {  // splitmix64 finalizer
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

}  // namespace heisconvex
