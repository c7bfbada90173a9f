#include <doctest.h>

#include <set>
#include <vector>

#include "pseudologit/random.hpp"

using namespace pseudologit;

TEST_CASE("identical seed and split path reproduce the sequence") {
  RandomStream a = RandomStream(42).split(3).split(7);
  RandomStream b = RandomStream(42).split(3).split(7);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
}

TEST_CASE("split children do not depend on parent draws") {
  RandomStream parent1(9);
  RandomStream parent2(9);
  (void)parent2.next_u64();
  (void)parent2.next_u64();
  RandomStream c1 = parent1.split(5);
  RandomStream c2 = parent2.split(5);
  for (int i = 0; i < 20; ++i) {
    CHECK(c1.next_u64() == c2.next_u64());
  }
}

TEST_CASE("different split indices give disjoint draws") {
  RandomStream root(1234);
  RandomStream a = root.split(0);
  RandomStream b = root.split(1);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 100; ++i) seen.insert(a.next_u64());
  for (int i = 0; i < 100; ++i) {
    CHECK(seen.count(b.next_u64()) == 0);
  }
}

TEST_CASE("uniforms stay strictly inside (0,1)") {
  RandomStream rng(77);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 200000; ++i) {
    const double u = rng.uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  // The range should actually be exercised.
  CHECK(lo < 0.01);
  CHECK(hi > 0.99);
}
