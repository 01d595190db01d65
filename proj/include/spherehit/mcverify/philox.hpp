// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace spherehit::mcverify {

/// Philox4x32-10 (Salmon et al.), counter-based: output depends only on
/// (key, counter).
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> c, std::array<std::uint32_t, 2> k) {
    constexpr std::uint32_t m0 = 0xD2511F53u, m1 = 0xCD9E8D57u;
    constexpr std::uint32_t w0 = 0x9E3779B9u, w1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(m0) * c[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(m1) * c[2];
        c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1], static_cast<std::uint32_t>(p0)};
        k[0] += w0;
        k[1] += w1;
    }
    return c;
}

/// Random stream of one simulated path: key = seed, counter = (draw, path).
class PathRng {
  public:
    PathRng(std::uint64_t seed, std::uint64_t path)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          path_lo_(static_cast<std::uint32_t>(path)),
          path_hi_(static_cast<std::uint32_t>(path >> 32)) {}

    /// Standard normal by the Marsaglia polar method.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        for (;;) {
            const double x = symmetric_unit();
            const double y = symmetric_unit();
            const double s = x * x + y * y;
            if (s >= 1.0 || s == 0.0) continue;
            const double m = std::sqrt(-2.0 * std::log(s) / s);
            spare_ = y * m;
            have_spare_ = true;
            return x * m;
        }
    }

    /// 32 random bits.
    std::uint32_t bits() {
        if (used_ == 4) {
            block_ = philox4x32({static_cast<std::uint32_t>(draw_), static_cast<std::uint32_t>(draw_ >> 32), path_lo_,
                                 path_hi_},
                                key_);
            ++draw_;
            used_ = 0;
        }
        return block_[used_++];
    }

  private:
    // uniform on (-1, 1)
    double symmetric_unit() { return (static_cast<double>(bits()) + 0.5) * 0x1.0p-31 - 1.0; }

    std::array<std::uint32_t, 2> key_;
    std::uint32_t path_lo_, path_hi_;
    std::uint64_t draw_ = 0;
    std::array<std::uint32_t, 4> block_{};
    int used_ = 4;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace spherehit::mcverify
