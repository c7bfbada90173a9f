#include "pseudologit/random.hpp"

namespace pseudologit {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// splitmix64 output function (Vigna). Full-period 64-bit mixer.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) : state_(seed), key_(seed) {}

RandomStream RandomStream::split(std::uint64_t child_index) const {
  // Hash (key, index) so that nested splits with distinct paths do not
  // collide and draws taken so far do not affect the child.
  std::uint64_t child = mix64(mix64(key_ + kGolden) ^ (child_index + kGolden));
  return RandomStream(child);
}

std::uint64_t RandomStream::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double RandomStream::uniform() {
  // 53 random bits centered in each cell of a 2^53 grid: range is
  // [2^-54, 1 - 2^-54], so exactly 0 or 1 can never come back.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace pseudologit
