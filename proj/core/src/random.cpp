#include "cachewave/random.hpp"

#include <cmath>
#include <numbers>

namespace cachewave {

namespace {

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream,
                              std::uint64_t substream) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(seed),   hi(seed),      lo(stream),
                    hi(stream), lo(substream), hi(substream)};
  return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t substream)
    : engine_(seeded_engine(seed, stream, substream)) {}

double RandomStream::normal() noexcept {
  const double u1 = uniform_open_closed();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace cachewave
