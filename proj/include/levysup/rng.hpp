#pragma once

#include <cmath>
#include <cstdint>

#include "levysup/special.hpp"

namespace levysup::rng {

// Philox 4x32-10 counter-based generator keyed by (seed, path_index).
// Draw k of path i is a pure function of (seed, i, k), so results do not
// depend on how paths are partitioned across workers.
class PathRng {
  public:
    PathRng(std::uint64_t seed, std::uint64_t path_index)
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)),
          ctr2_(static_cast<std::uint32_t>(path_index)),
          ctr3_(static_cast<std::uint32_t>(path_index >> 32)) {}

    std::uint64_t next_u64() {
        if (have_buffered_) {
            have_buffered_ = false;
            return buffered_;
        }
        std::uint32_t x0 = static_cast<std::uint32_t>(block_);
        std::uint32_t x1 = static_cast<std::uint32_t>(block_ >> 32);
        std::uint32_t x2 = ctr2_;
        std::uint32_t x3 = ctr3_;
        std::uint32_t k0 = key0_;
        std::uint32_t k1 = key1_;
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = 0xD2511F53ull * x0;
            const std::uint64_t p1 = 0xCD9E8D57ull * x2;
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            x0 = hi1 ^ x1 ^ k0;
            x1 = lo1;
            x2 = hi0 ^ x3 ^ k1;
            x3 = lo0;
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        ++block_;
        buffered_ = (static_cast<std::uint64_t>(x2) << 32) | x3;
        have_buffered_ = true;
        return (static_cast<std::uint64_t>(x0) << 32) | x1;
    }

    // uniform in [0, 1), 53-bit resolution
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double exponential() {
        double u = uniform01();
        return -std::log1p(-u);
    }

    double normal() {
        const double u1 = 1.0 - uniform01(); // (0, 1]
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * special::kPi * u2);
    }

    // Exact Poisson draw; Knuth product method, halving recursion keeps
    // the uniform product away from underflow for large means.
    std::uint64_t poisson(double mean) {
        if (mean <= 0.0) return 0;
        if (mean > 64.0) return poisson(0.5 * mean) + poisson(0.5 * mean);
        const double limit = std::exp(-mean);
        std::uint64_t n = 0;
        double prod = uniform01();
        while (prod > limit) {
            ++n;
            prod *= uniform01();
        }
        return n;
    }

  private:
    std::uint32_t key0_, key1_;
    std::uint32_t ctr2_, ctr3_;
    std::uint64_t block_ = 0;
    std::uint64_t buffered_ = 0;
    bool have_buffered_ = false;
};

// Adaptor exposing uniform01() on top of a std random engine (tests).
template <class Engine>
class StdUniform {
  public:
    explicit StdUniform(Engine& eng) : eng_(eng) {}
    double uniform01() {
        return static_cast<double>(eng_() - Engine::min()) /
               (static_cast<double>(Engine::max() - Engine::min()) + 1.0);
    }

  private:
    Engine& eng_;
};

} // namespace levysup::rng
