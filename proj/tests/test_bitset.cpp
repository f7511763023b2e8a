#include <doctest.h>

#include "cbfs/bit_subset.hpp"

using namespace cbfs;

TEST_CASE("string form lists source 0 first") {
  const auto s = BitSubset::from_string("1010");
  CHECK(s.capacity() == 4);
  CHECK(s.test(0));
  CHECK_FALSE(s.test(1));
  CHECK(s.test(2));
  CHECK(s.count() == 2);
  CHECK(s.to_string() == "1010");
  CHECK(s.lowest() == 0u);
  CHECK_THROWS_AS(BitSubset::from_string("10a"), UsageError);
}

TEST_CASE("set algebra") {
  const auto a = BitSubset::from_string("1100");
  const auto b = BitSubset::from_string("0110");
  CHECK(bitset_union(a, b).to_string() == "1110");
  CHECK(bitset_difference(a, b).to_string() == "1000");
  CHECK(bitset_intersect_nonempty(a, b));
  CHECK_FALSE(bitset_intersect_nonempty(a, BitSubset::from_string("0011")));
  CHECK_THROWS_AS(bitset_union(a, BitSubset(5)), UsageError);
  CHECK_THROWS_AS(bitset_intersect_nonempty(a, BitSubset(3)), UsageError);
}

TEST_CASE("multi-word subsets") {
  BitSubset s(130);
  CHECK(s.word_count() == 3);
  s.set(0);
  s.set(64);
  s.set(129);
  CHECK(s.count() == 3);
  CHECK(s.test(129));
  s.reset(64);
  CHECK_FALSE(s.test(64));
  CHECK_THROWS_AS(s.set(130), UsageError);
  CHECK(BitSubset::full(130).count() == 130);
  CHECK(BitSubset(130).empty());
}

TEST_CASE("from_words clears bits past capacity") {
  const Word w[2] = {~Word{0}, ~Word{0}};
  const auto s = BitSubset::from_words(70, w);
  CHECK(s.count() == 70);
  CHECK(s == BitSubset::full(70));
}

TEST_CASE("word kernels") {
  Word a[2] = {0b1010, 0};
  const Word b[2] = {0b0110, 1};
  CHECK(bits::intersects(a, b));
  CHECK(bits::lowest_common(a, b) == 1u);
  CHECK(bits::has_extra(b, a));
  bits::or_into(a, b);
  CHECK(a[0] == 0b1110);
  CHECK(a[1] == 1);
  CHECK_FALSE(bits::has_extra(b, a));
}
