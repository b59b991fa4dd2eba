#include "tastecomp/taste.hpp"

#include <cmath>
#include <string>

#include "tastecomp/error.hpp"

namespace tastecomp {

namespace {
constexpr std::array<std::string_view, kNumDimensions> kNames = {"sweet", "sour", "bitter",
                                                                 "umami", "salt"};
}

std::string_view to_string(Dimension d) noexcept { return kNames[index(d)]; }

std::optional<Dimension> parse_dimension(std::string_view name) noexcept {
  for (auto d : kAllDimensions) {
    if (kNames[index(d)] == name) return d;
  }
  if (name == "salty" || name == "saltiness") return Dimension::kSalt;
  if (name == "sweetness") return Dimension::kSweet;
  if (name == "sourness") return Dimension::kSour;
  if (name == "bitterness") return Dimension::kBitter;
  return std::nullopt;
}

void validate_scores(const TasteVector& taste, std::string_view context) {
  for (auto d : kAllDimensions) {
    const double v = taste[d];
    if (!std::isfinite(v) || v < 0.0 || v > 100.0) {
      throw ValidationError(std::string(context) + ": " + std::string(to_string(d)) +
                                " score " + std::to_string(v) + " outside [0, 100]",
                            std::string(to_string(d)));
    }
  }
}

}  // namespace tastecomp
