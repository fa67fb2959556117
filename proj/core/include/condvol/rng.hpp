#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace condvol {

// Philox4x64-10 counter-based generator (Salmon et al., SC'11), the same
// variant numpy exposes as numpy.random.Philox. The 128-bit key doubles as
// the stream identity: (seed, stream_id) pairs give independent sequences
// with a 2^256 counter space each, so parallel workers never have to
// coordinate beyond choosing distinct stream ids.
class Philox4x64 {
 public:
  using Block = std::array<std::uint64_t, 4>;

  Philox4x64(std::uint64_t key0, std::uint64_t key1) : key_{key0, key1} {}

  static Block round10(Block ctr, std::array<std::uint64_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
      ctr = single_round(ctr, key);
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return ctr;
  }

  // The 256-bit counter is advanced before each block, matching numpy's
  // stream semantics for a given key.
  std::uint64_t next() {
    if (pos_ == 4) {
      advance_counter();
      buf_ = round10(counter_, key_);
      pos_ = 0;
    }
    return buf_[pos_++];
  }

 private:
  static constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
  static constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
  static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

  static Block single_round(const Block& ctr, const std::array<std::uint64_t, 2>& key) {
    const unsigned __int128 p0 = static_cast<unsigned __int128>(kMul0) * ctr[0];
    const unsigned __int128 p1 = static_cast<unsigned __int128>(kMul1) * ctr[2];
    const std::uint64_t lo0 = static_cast<std::uint64_t>(p0);
    const std::uint64_t hi0 = static_cast<std::uint64_t>(p0 >> 64);
    const std::uint64_t lo1 = static_cast<std::uint64_t>(p1);
    const std::uint64_t hi1 = static_cast<std::uint64_t>(p1 >> 64);
    return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }

  void advance_counter() {
    for (int i = 0; i < 4; ++i) {
      if (++counter_[i] != 0) break;
    }
  }

  std::array<std::uint64_t, 2> key_;
  Block counter_{0, 0, 0, 0};
  Block buf_{};
  int pos_ = 4;
};

// Seeded stream of doubles and gaussians. Identical (seed, stream_id) pairs
// replay the identical sequence; distinct stream ids are independent.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : gen_(seed, stream_id), seed_(seed), stream_id_(stream_id) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() { return gen_.next(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_.next() >> 11) * 0x1.0p-53; }

  // Uniform on [-1, 1).
  double uniform_symmetric() { return 2.0 * uniform() - 1.0; }

  double uniform_in(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via the Marsaglia polar method; the spare value is cached.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = uniform_symmetric();
      v = uniform_symmetric();
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  // Standard complex normal with E|z|^2 = 1.
  std::complex<double> complex_gaussian() {
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    const double re = gaussian();
    const double im = gaussian();
    return {re * inv_sqrt2, im * inv_sqrt2};
  }

  // Uniform point in the closed disk of the given radius.
  std::array<double, 2> uniform_in_disk(double radius) {
    double u, v;
    do {
      u = uniform_symmetric();
      v = uniform_symmetric();
    } while (u * u + v * v > 1.0);
    return {radius * u, radius * v};
  }

 private:
  Philox4x64 gen_;
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Stream id layout used by the chunked estimators: the task index selects an
// estimator-level substream, the chunk index a worker chunk within it.
inline std::uint64_t make_stream_id(std::uint64_t task, std::uint64_t chunk) {
  return (task << 32) | chunk;
}

}  // namespace condvol
