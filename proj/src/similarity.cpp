#include "moodcast/similarity.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

#include "moodcast/error.hpp"

namespace moodcast {
namespace {

std::string normalize(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') continue;
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    out += c;
  }
  return out;
}

// Bigrams packed as 16-bit keys and sorted, so multiset intersection is a
// linear merge.
std::vector<std::uint16_t> bigrams(const std::string& s) {
  std::vector<std::uint16_t> out;
  if (s.size() < 2) return out;
  out.reserve(s.size() - 1);
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    out.push_back(static_cast<std::uint16_t>((static_cast<unsigned char>(s[i]) << 8) |
                                             static_cast<unsigned char>(s[i + 1])));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

double dice_similarity(std::string_view a, std::string_view b) {
  const auto na = normalize(a);
  const auto nb = normalize(b);
  if (na.size() < 2 || nb.size() < 2) return na == nb ? 1.0 : 0.0;
  const auto ba = bigrams(na);
  const auto bb = bigrams(nb);
  std::size_t common = 0;
  std::size_t i = 0, j = 0;
  while (i < ba.size() && j < bb.size()) {
    if (ba[i] == bb[j]) {
      ++common;
      ++i;
      ++j;
    } else if (ba[i] < bb[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return 2.0 * static_cast<double>(common) / static_cast<double>(ba.size() + bb.size());
}

BestMatch best_match(std::string_view query, std::span<const std::string> candidates) {
  if (candidates.empty()) throw ValidationError("no scenes available to match against");
  BestMatch best{0, dice_similarity(query, candidates[0])};
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double s = dice_similarity(query, candidates[i]);
    if (s > best.score) best = {i, s};
  }
  return best;
}

}  // namespace moodcast
