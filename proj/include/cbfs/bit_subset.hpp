#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cbfs/types.hpp"

namespace cbfs {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t capacity) { return (capacity + kWordBits - 1) / kWordBits; }

// Word-level kernels over equal-length spans. The cluster-BFS engine runs
// these directly on its flat per-vertex arrays.
namespace bits {

inline void or_into(std::span<Word> dst, std::span<const Word> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] |= src[i];
}

inline void assign_difference(std::span<Word> dst, std::span<const Word> a, std::span<const Word> b) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = a[i] & ~b[i];
}

inline bool intersects(std::span<const Word> a, std::span<const Word> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & b[i]) return true;
  return false;
}

inline bool any(std::span<const Word> a) {
  for (Word w : a)
    if (w) return true;
  return false;
}

// True when `a` has a bit that `b` lacks.
inline bool has_extra(std::span<const Word> a, std::span<const Word> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return true;
  return false;
}

inline bool test(std::span<const Word> a, std::size_t i) {
  return (a[i / kWordBits] >> (i % kWordBits)) & 1U;
}

// Index of the lowest set bit in a & b, if any.
inline std::optional<std::size_t> lowest_common(std::span<const Word> a, std::span<const Word> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (Word w = a[i] & b[i]) return i * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
  return std::nullopt;
}

}  // namespace bits

// A subset of a cluster's k sources: bit i set iff source i is a member.
// Bits at positions >= capacity are kept zero.
class BitSubset {
 public:
  BitSubset() = default;
  explicit BitSubset(std::size_t capacity) : capacity_(capacity), words_(words_for(capacity), 0) {}

  // Copies `words` and clears any bits past `capacity`.
  static BitSubset from_words(std::size_t capacity, std::span<const Word> words);
  // Parses a left-to-right membership string such as "1010" (source 0 first).
  static BitSubset from_string(std::string_view members);
  static BitSubset full(std::size_t capacity);

  std::size_t capacity() const { return capacity_; }
  std::size_t word_count() const { return words_.size(); }
  std::span<const Word> words() const { return words_; }

  void set(std::size_t i);
  void reset(std::size_t i);
  bool test(std::size_t i) const;
  std::size_t count() const;
  bool empty() const { return !bits::any(words_); }
  std::optional<std::size_t> lowest() const;

  std::string to_string() const;

  bool operator==(const BitSubset&) const = default;

 private:
  void check_index(std::size_t i) const;

  std::size_t capacity_ = 0;
  std::vector<Word> words_;
};

// All three throw UsageError when capacities differ.
BitSubset bitset_union(const BitSubset& a, const BitSubset& b);
BitSubset bitset_difference(const BitSubset& a, const BitSubset& b);
bool bitset_intersect_nonempty(const BitSubset& a, const BitSubset& b);

}  // namespace cbfs
