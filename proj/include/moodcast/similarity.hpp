#pragma once

#include <span>
#include <string>
#include <string_view>

namespace moodcast {

/// Sørensen–Dice coefficient over character bigram multisets, after
/// ASCII case folding and whitespace removal. Inputs that normalize to fewer
/// than two characters score 1.0 when equal and 0.0 otherwise.
double dice_similarity(std::string_view a, std::string_view b);

struct BestMatch {
  std::size_t index = 0;
  double score = 0.0;
};

/// Highest-scoring candidate; the lowest index wins ties.
/// Throws ValidationError if there are no candidates.
BestMatch best_match(std::string_view query, std::span<const std::string> candidates);

}  // namespace moodcast
