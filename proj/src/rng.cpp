#include "satmp/rng.hpp"

#include <limits>

namespace satmp {

namespace {

std::mt19937_64::result_type derive_engine_seed(std::uint64_t seed, StreamTag tag) {
  // splitmix64 finalizer over (seed, tag); keeps nearby seeds apart.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(tag);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, StreamTag tag)
    : seed_(seed), engine_(derive_engine_seed(seed, tag)) {}

std::uint64_t RngStream::next_u64() {
  ++position_;
  return engine_();
}

double RngStream::uniform_open_closed() {
  const std::uint64_t bits = next_u64() >> 11;
  return static_cast<double>(bits + 1) * 0x1.0p-53;
}

std::uint64_t RngStream::below(std::uint64_t bound) {
  // Rejection sampling keeps the result exactly uniform.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = next_u64();
  while (x >= limit) x = next_u64();
  return x % bound;
}

bool RngStream::coin() { return (next_u64() >> 63) != 0; }

}  // namespace satmp
