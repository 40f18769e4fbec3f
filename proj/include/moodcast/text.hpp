#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace moodcast {

/// ASCII-only case folding; bytes outside ASCII pass through.
std::string to_lower(std::string_view s);
std::string trim(std::string_view s);
bool iequals(std::string_view a, std::string_view b) noexcept;
std::vector<std::string> split_words(std::string_view s);
std::size_t word_count(std::string_view s);
/// Keeps the first max_words whitespace-separated words.
std::string truncate_words(std::string_view s, std::size_t max_words);

/// Hex SHA-256 of the input; the stable key for prompts and fixtures.
std::string sha256_hex(std::string_view data);
/// First 8 bytes of SHA-256 as an integer, for seeding.
std::uint64_t stable_hash64(std::string_view data);
/// SplitMix64 finalizer; mixes a project seed with a sub-stream index.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

std::string base64_encode(std::string_view bytes);
/// Throws DecodeError on malformed input.
std::string base64_decode(std::string_view text);

/// Shortest decimal representation that round-trips.
std::string format_number(double v);

}  // namespace moodcast
