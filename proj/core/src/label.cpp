#include "tweetpol/label.hpp"

#include <algorithm>
#include <cctype>

namespace tweetpol {

std::string_view to_string(Label label) noexcept {
  switch (label) {
    case Label::Negative:
      return "negative";
    case Label::Neutral:
      return "neutral";
    case Label::Positive:
      return "positive";
  }
  return "neutral";
}

std::optional<Label> parse_label(std::string_view text) {
  std::string lowered(text);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (Label label : kAllLabels) {
    if (lowered == to_string(label)) return label;
  }
  return std::nullopt;
}

}  // namespace tweetpol
