#pragma once

#include <cstddef>
#include <cstdint>

#include "tastecomp/dataset.hpp"

namespace tastecomp {

struct SyntheticOptions {
  std::uint64_t seed = 42;
  std::size_t recipes = 70;  // at least 68 so RP14, RP55 and RP68 exist
  double noise = 2.0;        // panel noise sd on the 0-100 scale
};

// Seeded stand-in for a sensory corpus: ~40 ingredients, recipes RP01...,
// including the pea soup (RP14), chocolate spread (RP55) and ketchup (RP68)
// templates. Ground truth sits above the HS midpoint by a chemistry-driven
// gap plus noise.
Corpus synthetic_corpus(const SyntheticOptions& options = {});

// Noise-free corpus whose ground truth is hs_midpoint + coefficient * phi_salt
// on every dimension, with salt fractions spread around 5%.
Corpus planted_salt_corpus(std::uint64_t seed = 7, std::size_t recipes = 40, double coefficient = 5.0);

}  // namespace tastecomp
