#include "cbfs/bit_subset.hpp"

#include <algorithm>

namespace cbfs {

namespace {

Word tail_mask(std::size_t capacity) {
  const std::size_t used = capacity % kWordBits;
  return used == 0 ? ~Word{0} : (Word{1} << used) - 1;
}

void require_same_capacity(const BitSubset& a, const BitSubset& b) {
  if (a.capacity() != b.capacity())
    throw UsageError("bit-subset capacity mismatch: " + std::to_string(a.capacity()) + " vs " +
                     std::to_string(b.capacity()));
}

}  // namespace

BitSubset BitSubset::from_words(std::size_t capacity, std::span<const Word> words) {
  BitSubset s(capacity);
  std::copy_n(words.begin(), std::min(words.size(), s.words_.size()), s.words_.begin());
  if (!s.words_.empty()) s.words_.back() &= tail_mask(capacity);
  return s;
}

BitSubset BitSubset::from_string(std::string_view members) {
  BitSubset s(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] == '1')
      s.set(i);
    else if (members[i] != '0')
      throw UsageError("bit-subset string may only contain 0 and 1");
  }
  return s;
}

BitSubset BitSubset::full(std::size_t capacity) {
  BitSubset s(capacity);
  std::fill(s.words_.begin(), s.words_.end(), ~Word{0});
  if (!s.words_.empty()) s.words_.back() &= tail_mask(capacity);
  return s;
}

void BitSubset::check_index(std::size_t i) const {
  if (i >= capacity_) throw UsageError("bit index " + std::to_string(i) + " out of capacity");
}

void BitSubset::set(std::size_t i) {
  check_index(i);
  words_[i / kWordBits] |= Word{1} << (i % kWordBits);
}

void BitSubset::reset(std::size_t i) {
  check_index(i);
  words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits));
}

bool BitSubset::test(std::size_t i) const {
  check_index(i);
  return bits::test(words_, i);
}

std::size_t BitSubset::count() const {
  std::size_t c = 0;
  for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::optional<std::size_t> BitSubset::lowest() const { return bits::lowest_common(words_, words_); }

std::string BitSubset::to_string() const {
  std::string s(capacity_, '0');
  for (std::size_t i = 0; i < capacity_; ++i)
    if (bits::test(words_, i)) s[i] = '1';
  return s;
}

BitSubset bitset_union(const BitSubset& a, const BitSubset& b) {
  require_same_capacity(a, b);
  std::vector<Word> w(a.words().begin(), a.words().end());
  bits::or_into(w, b.words());
  return BitSubset::from_words(a.capacity(), w);
}

BitSubset bitset_difference(const BitSubset& a, const BitSubset& b) {
  require_same_capacity(a, b);
  std::vector<Word> w(a.word_count());
  bits::assign_difference(w, a.words(), b.words());
  return BitSubset::from_words(a.capacity(), w);
}

bool bitset_intersect_nonempty(const BitSubset& a, const BitSubset& b) {
  require_same_capacity(a, b);
  return bits::intersects(a.words(), b.words());
}

}  // namespace cbfs
