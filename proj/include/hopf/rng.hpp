#pragma once

#include <cmath>
#include <cstdint>
#include <array>
#include <numbers>

// Counter-based random numbers for reproducible Monte Carlo.
//
// philox4x64_block computes one 10-round Philox-4x64 block: 256 bits of
// output from a 256-bit counter and a 128-bit key. The draw at any index is
// a pure function of (seed, stream, index), so ensembles can be replayed or
// sharded without shared cursor state, and identical (seed, stream) always
// reproduce the same sequence bit for bit.

namespace hopf::rng {

struct Block {
    std::array<std::uint64_t, 4> x;
};

namespace detail {

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) {
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

}  // namespace detail

inline Block philox4x64_block(const std::array<std::uint64_t, 4>& counter,
                              const std::array<std::uint64_t, 2>& key) {
    std::uint64_t x0 = counter[0], x1 = counter[1], x2 = counter[2], x3 = counter[3];
    std::uint64_t k0 = key[0], k1 = key[1];
    for (int round = 0; round < 10; ++round) {
        std::uint64_t hi0, lo0, hi1, lo1;
        detail::mulhilo(detail::kMul0, x0, hi0, lo0);
        detail::mulhilo(detail::kMul1, x2, hi1, lo1);
        std::uint64_t y0 = hi1 ^ x1 ^ k0;
        std::uint64_t y1 = lo1;
        std::uint64_t y2 = hi0 ^ x3 ^ k1;
        std::uint64_t y3 = lo0;
        x0 = y0; x1 = y1; x2 = y2; x3 = y3;
        k0 += detail::kWeyl0;
        k1 += detail::kWeyl1;
    }
    return Block{{x0, x1, x2, x3}};
}

// 53-bit uniforms. unit_open_closed avoids 0 so log() is safe in Box-Muller.
inline double unit_closed_open(std::uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}
inline double unit_open_closed(std::uint64_t x) {
    return (static_cast<double>(x >> 11) + 1.0) * 0x1.0p-53;
}

// Decode one Box-Muller pair from two block words. Single shared path for
// NoiseStream and GaussianCursor: compilers may fuse adjacent cos/sin into a
// sincos call, and two source copies of this block can then disagree in the
// last ulp, breaking the bitwise-replay contract between the two classes.
inline void box_muller_pair(std::uint64_t w0, std::uint64_t w1, double& even,
                            double& odd) {
    const double u1 = unit_open_closed(w0);
    const double u2 = unit_closed_open(w1);
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    even = rad * std::cos(ang);
    odd = rad * std::sin(ang);
}

// Stateless Gaussian stream: normal(i) is the i-th N(0,1) draw of the stream
// identified by (seed, stream). One Philox block yields four normals via two
// Box-Muller pairs.
class NoiseStream {
  public:
    NoiseStream(std::uint64_t seed, std::uint64_t stream)
        : key_{seed, stream} {}

    double normal(std::uint64_t i) const {
        const std::uint64_t block_index = i >> 2;
        const unsigned lane = static_cast<unsigned>(i & 3);
        Block blk = philox4x64_block({block_index, 0, 0, 0}, key_);
        const unsigned pair = lane >> 1;
        double even, odd;
        box_muller_pair(blk.x[2 * pair], blk.x[2 * pair + 1], even, odd);
        return (lane & 1) ? odd : even;
    }

    // Brownian increment for step n, component c, of a dim-dimensional driver.
    double increment(std::uint64_t step, unsigned component, unsigned dim,
                     double sqrt_dt) const {
        return sqrt_dt * normal(step * dim + component);
    }

    // Uniform in [0,1) at index i, independent of the Gaussian lanes above
    // only if consumed on a distinct stream id; callers allocate streams.
    double uniform(std::uint64_t i) const {
        const std::uint64_t block_index = i >> 2;
        const unsigned lane = static_cast<unsigned>(i & 3);
        Block blk = philox4x64_block({block_index, 0, 0, 0}, key_);
        return unit_closed_open(blk.x[lane]);
    }

  private:
    std::array<std::uint64_t, 2> key_;
};

// Cached block cursor over a NoiseStream for tight integration loops: same
// sequence as NoiseStream::normal(0), normal(1), ... but each Philox block is
// computed once.
class GaussianCursor {
  public:
    GaussianCursor(std::uint64_t seed, std::uint64_t stream)
        : key_{seed, stream} {}

    double next() {
        if (lane_ == 0) refill();
        double v = vals_[lane_];
        lane_ = (lane_ + 1) & 3;
        if (lane_ == 0) ++block_;
        return v;
    }

  private:
    void refill() {
        Block blk = philox4x64_block({block_, 0, 0, 0}, key_);
        box_muller_pair(blk.x[0], blk.x[1], vals_[0], vals_[1]);
        box_muller_pair(blk.x[2], blk.x[3], vals_[2], vals_[3]);
    }

    std::array<std::uint64_t, 2> key_;
    std::uint64_t block_ = 0;
    std::array<double, 4> vals_{};
    unsigned lane_ = 0;
};

}  // namespace hopf::rng
