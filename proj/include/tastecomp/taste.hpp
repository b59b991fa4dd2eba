#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace tastecomp {

enum class Dimension : std::size_t { kSweet = 0, kSour, kBitter, kUmami, kSalt };

inline constexpr std::size_t kNumDimensions = 5;

inline constexpr std::array<Dimension, kNumDimensions> kAllDimensions = {
    Dimension::kSweet, Dimension::kSour, Dimension::kBitter, Dimension::kUmami,
    Dimension::kSalt};

// Dimensions pooled into the "AVG_4D" summary; bitterness sits on the scale
// floor and is reported separately.
inline constexpr std::array<Dimension, 4> kAvgDimensions = {
    Dimension::kSweet, Dimension::kSour, Dimension::kUmami, Dimension::kSalt};

constexpr std::size_t index(Dimension d) noexcept { return static_cast<std::size_t>(d); }

std::string_view to_string(Dimension d) noexcept;
std::optional<Dimension> parse_dimension(std::string_view name) noexcept;

// Scores on the five taste dimensions, 0-100 Spectrum scale.
struct TasteVector {
  std::array<double, kNumDimensions> values{};

  double& operator[](Dimension d) noexcept { return values[index(d)]; }
  double operator[](Dimension d) const noexcept { return values[index(d)]; }

  double sweet() const noexcept { return values[0]; }
  double sour() const noexcept { return values[1]; }
  double bitter() const noexcept { return values[2]; }
  double umami() const noexcept { return values[3]; }
  double salt() const noexcept { return values[4]; }

  bool operator==(const TasteVector&) const = default;
};

// Throws ValidationError unless every score is finite and inside [0, 100].
void validate_scores(const TasteVector& taste, std::string_view context);

}  // namespace tastecomp
