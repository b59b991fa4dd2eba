#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "tastecomp/dataset.hpp"
#include "tastecomp/taste.hpp"

namespace tastecomp {

struct BoundsConfig {
  double epsilon = 0.01;  // zero-score floor
  double d = 3.0;         // shape parameter; the inclusion factor is (d - 1)

  void validate() const;
};

struct DimensionBounds {
  double reuss = 0.0;
  double voigt = 0.0;
  double hs_lower = 0.0;
  double hs_upper = 0.0;
  double hs_midpoint = 0.0;
};

struct BoundsResult {
  std::array<DimensionBounds, kNumDimensions> dims{};

  const DimensionBounds& operator[](Dimension d) const noexcept { return dims[index(d)]; }
  DimensionBounds& operator[](Dimension d) noexcept { return dims[index(d)]; }

  TasteVector midpoint() const noexcept;
  TasteVector voigt() const noexcept;
};

struct HsBracket {
  double lower = 0.0;
  double upper = 0.0;
};

// Arithmetic mixture mean, sum v_i T_i. Scores are used as given.
double voigt(std::span<const double> scores, std::span<const double> fractions);

// Harmonic mixture mean with each score floored at cfg.epsilon.
double reuss(std::span<const double> scores, std::span<const double> fractions,
             const BoundsConfig& cfg = {});

// A(T0) = [sum v_i / (T_i + (d-1) T0)]^-1 - (d-1) T0, scores floored at epsilon.
double hs_auxiliary(std::span<const double> scores, std::span<const double> fractions,
                    double t0, const BoundsConfig& cfg = {});

// (A(T_min), A(T_max)) over the floored scores.
HsBracket hs_bounds(std::span<const double> scores, std::span<const double> fractions,
                    const BoundsConfig& cfg = {});

// All five dimensions for a mixture of phases. Every bound, Voigt included,
// is evaluated on the epsilon-floored scores so the ordering
// reuss <= hs_lower <= hs_upper <= voigt holds on the same inputs.
BoundsResult mixture_bounds(std::span<const TasteVector> phases, std::span<const double> fractions,
                            const BoundsConfig& cfg = {});

BoundsResult recipe_bounds(const RecipeComposition& recipe, const Corpus& corpus,
                           const BoundsConfig& cfg = {});

struct SweepRow {
  double d = 0.0;
  double fraction_above_upper = 0.0;
  std::size_t pairs = 0;
};

// Fraction of recipe-dimension pairs whose ground truth exceeds hs_upper, per d.
std::vector<SweepRow> sweep_d(const Corpus& corpus, std::span<const double> d_values,
                              const BoundsConfig& base = {});

}  // namespace tastecomp
