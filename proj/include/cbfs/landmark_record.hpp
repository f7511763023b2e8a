#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "cbfs/bit_subset.hpp"

namespace cbfs::record {

// Unpacks one stored cluster record into d+1 subsets of words_for(k) words
// each, rebuilding the last subset from the sources the others leave out.
// The caller checks the delta byte first; the output is meaningless for an
// unreachable record.
void unpack(std::span<const std::uint8_t> rec, std::size_t k, std::uint32_t d, std::span<Word> out);

}  // namespace cbfs::record
