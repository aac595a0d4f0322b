#pragma once

#include <cstdint>
#include <random>

namespace cachewave {

/// Seedable uniform source used by every sampler in the library.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard, and uniforms are built from raw 64-bit words rather than
/// std::uniform_real_distribution so the seed -> sequence mapping is identical
/// across standard library implementations.
///
/// Independent substreams are keyed by (seed, stream, substream) through
/// std::seed_seq, which is also fully specified by the standard.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0,
                        std::uint64_t substream = 0);

  /// Uniform on (0,1]; never returns 0.
  double uniform_open_closed() noexcept {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform on [0,1).
  double uniform() noexcept {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; consumes two words per call.
  double normal() noexcept;

  std::uint64_t next_u64() noexcept { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cachewave
