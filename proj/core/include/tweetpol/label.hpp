#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace tweetpol {

/// Polarity class. The enumerator order is the canonical order used for
/// every deterministic tie-break in the library: Negative < Neutral < Positive.
enum class Label : unsigned char { Negative = 0, Neutral = 1, Positive = 2 };

inline constexpr std::size_t kNumLabels = 3;

inline constexpr std::array<Label, kNumLabels> kAllLabels = {
    Label::Negative, Label::Neutral, Label::Positive};

constexpr std::size_t index_of(Label label) noexcept {
  return static_cast<std::size_t>(label);
}

constexpr Label label_at(std::size_t index) noexcept {
  return static_cast<Label>(index);
}

std::string_view to_string(Label label) noexcept;

/// Case-insensitive parse of "positive" / "neutral" / "negative".
std::optional<Label> parse_label(std::string_view text);

/// Opinion code used by the ensemble layer: Negative -1, Neutral 0, Positive +1.
constexpr int opinion_code(Label label) noexcept {
  return static_cast<int>(index_of(label)) - 1;
}

/// Per-label counters indexed by canonical order.
template <typename T>
using PerLabel = std::array<T, kNumLabels>;

}  // namespace tweetpol
