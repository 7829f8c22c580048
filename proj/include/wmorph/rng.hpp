#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace wmorph::rng {

// Philox 4x32-10 block function (Salmon et al., "Parallel random numbers:
// as easy as 1, 2, 3", SC'11). Pure function of (counter, key), which is what
// makes per-sample streams splittable and reductions worker-count-invariant.
inline std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> counter,
                                          std::array<uint32_t, 2> key) {
    constexpr uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
    constexpr uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kW0;
            key[1] += kW1;
        }
        const uint64_t p0 = static_cast<uint64_t>(kM0) * counter[0];
        const uint64_t p1 = static_cast<uint64_t>(kM1) * counter[2];
        counter = {static_cast<uint32_t>(p1 >> 32) ^ counter[1] ^ key[0],
                   static_cast<uint32_t>(p1),
                   static_cast<uint32_t>(p0 >> 32) ^ counter[3] ^ key[1],
                   static_cast<uint32_t>(p0)};
    }
    return counter;
}

// Uniform bit stream for one logical draw sequence. key = seed, the high
// counter words carry the stream id, the low words count blocks. Streams with
// distinct (seed, id) never share state, so concurrent samplers need no
// synchronization.
class Stream {
public:
    Stream(uint64_t seed, uint64_t stream_id)
        : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)},
          id_lo_(static_cast<uint32_t>(stream_id)),
          id_hi_(static_cast<uint32_t>(stream_id >> 32)) {}

    uint32_t next_u32() {
        if (pos_ == 4) {
            buf_ = philox4x32({static_cast<uint32_t>(block_),
                               static_cast<uint32_t>(block_ >> 32), id_lo_, id_hi_},
                              key_);
            ++block_;
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    uint64_t next_u64() {
        const uint64_t hi = next_u32();
        const uint64_t lo = next_u32();
        return (hi << 32) | lo;
    }

    // [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller; the second variate of each pair is cached.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - next_double();  // (0, 1], keeps log finite
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

private:
    std::array<uint32_t, 2> key_;
    uint32_t id_lo_, id_hi_;
    uint64_t block_ = 0;
    std::array<uint32_t, 4> buf_{};
    int pos_ = 4;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace wmorph::rng
