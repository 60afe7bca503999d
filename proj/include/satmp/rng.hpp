#pragma once

#include <cstdint>
#include <random>

namespace satmp {

// Named sub-streams derived from one user seed. Each consumer gets its own
// stream so adding draws in one place never shifts another.
enum class StreamTag : std::uint64_t {
  InitialAssignment = 1,
  Coupled = 2,
  Codebook = 3,
  Generator = 4,
  Search = 5,
};

/// Seeded, platform-independent draw sequence.
///
/// mt19937_64 output is fixed by the standard; the mappings to integer
/// ranges and to (0,1] are done here rather than through <random>
/// distributions, whose outputs are implementation-defined.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed, StreamTag tag = StreamTag::Search);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t position() const noexcept { return position_; }

  std::uint64_t next_u64();
  /// Uniform on (0, 1], 53-bit resolution.
  double uniform_open_closed();
  /// Uniform on [0, bound). bound must be nonzero.
  std::uint64_t below(std::uint64_t bound);
  bool coin();

private:
  std::uint64_t seed_;
  std::uint64_t position_ = 0;
  std::mt19937_64 engine_;
};

}  // namespace satmp
