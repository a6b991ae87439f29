#pragma once

#include <cmath>
#include <cstdint>

namespace stepkernel {

// splitmix64: bijective 64-bit mixer, used for stream derivation and to seed
// the per-stream generator.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t s) : s_(s) {}
    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t s_;
};

// Counter-keyed random stream: Rng(seed, stream) is a deterministic function
// of the pair, so work can be partitioned across threads by stream index
// without the thread layout touching the draws. The generator behind each
// stream is xoshiro256++ seeded from splitmix64.
class Rng {
  public:
    Rng(std::uint64_t seed, std::uint64_t stream) {
        SplitMix64 outer(seed);
        SplitMix64 sm(outer.next() ^ SplitMix64(stream).next());
        for (auto& w : s_) w = sm.next();
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
    }

    std::uint64_t next_u64() {
        auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0, 1)
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in {0, ..., n-1}, unbiased
    long long next_below(long long n) {
        const std::uint64_t un = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % un;
        std::uint64_t x;
        do x = next_u64();
        while (x >= limit);
        return static_cast<long long>(x % un);
    }

    // Poisson: sequential inversion below mean 10, PTRS transformed rejection
    // (Hormann) above.
    int poisson(double mean) {
        if (mean <= 0.0) return 0;
        return mean < 10.0 ? poisson_inversion(mean) : poisson_ptrs(mean);
    }

  private:
    int poisson_inversion(double mean) {
        int x = 0;
        double p = std::exp(-mean), s = p;
        const double u = next_unit();
        while (u > s) {
            ++x;
            p *= mean / x;
            s += p;
            if (x > 400) break;  // p underflow guard; mean < 10 makes this unreachable in practice
        }
        return x;
    }

    int poisson_ptrs(double mean) {
        const double slam = std::sqrt(mean), llam = std::log(mean);
        const double b = 0.931 + 2.53 * slam;
        const double a = -0.059 + 0.02483 * b;
        const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
        const double vr = 0.9277 - 3.6224 / (b - 2.0);
        for (;;) {
            const double u = next_unit() - 0.5;
            const double v = next_unit();
            const double us = 0.5 - std::abs(u);
            const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
            if (us >= 0.07 && v <= vr) return static_cast<int>(kf);
            if (kf < 0.0 || (us < 0.013 && v > us)) continue;
            if (std::log(v * inv_alpha / (a / (us * us) + b)) <= kf * llam - mean - std::lgamma(kf + 1.0))
                return static_cast<int>(kf);
        }
    }

    std::uint64_t s_[4];
};

}  // namespace stepkernel
