#pragma once

#include <cstdint>
#include <random>

namespace hawkes_queue {

using Rng = std::mt19937_64;

/// Independent stream for path `index` of a run seeded with `base_seed`.
/// Depends only on the pair, never on scheduling.
Rng make_path_rng(std::uint64_t base_seed, std::uint64_t index);

/// Uniform on [0, 1) from the top 53 bits of one draw.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Exponential(rate) by inverse CDF.
double exponential_draw(Rng& rng, double rate);

}  // namespace hawkes_queue
