#ifndef PSEUDOLOGIT_RANDOM_HPP
#define PSEUDOLOGIT_RANDOM_HPP

#include <cstdint>

namespace pseudologit {

/// Seedable, splittable random stream.
///
/// The generator is a splitmix64 sequence. split(i) derives a child stream
/// whose draws are determined only by this stream's seed and the child
/// index, never by how many values have been drawn, so a fixed seed and
/// split path always reproduce the same sequence. Streams are cheap values;
/// each thread must own its own.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  /// Child stream for the given index, statistically independent of this
  /// stream and of siblings with other indices.
  RandomStream split(std::uint64_t child_index) const;

  std::uint64_t next_u64();

  /// Uniform draw strictly inside (0,1); endpoints are never produced.
  double uniform();

 private:
  std::uint64_t state_;
  std::uint64_t key_;  // derivation key, fixed at construction
};

}  // namespace pseudologit

#endif
