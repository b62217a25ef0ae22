#pragma once

#include <cstdint>
#include <vector>

#include "dynclock/minmax.hpp"
#include "dynclock/sap.hpp"

namespace dynclock {

// Seeded initial-state presets. Self-stabilization admits any starting
// state; these cover the "arbitrary" quantifier with reproducible draws.

struct MinMaxInitOptions {
  std::uint64_t value_max = 20;
  std::uint64_t depth_max = 4;
  std::uint64_t age_max = 6;
  std::uint64_t entries_max = 4;  // per view, at least one
  bool zero_age = false;          // pin every age to zero
};

std::vector<MinMaxState> random_minmax_states(std::uint32_t n, std::uint64_t seed,
                                              const MinMaxInitOptions& opts = {});

struct SapInitOptions {
  std::uint64_t clock_max = 1000;  // reduced modulo period * factor before round 1
  std::uint64_t factor_min = 1;
  std::uint64_t factor_max = 3;
};

std::vector<SapState> random_sap_states(std::uint32_t n, std::uint64_t seed,
                                        const SapInitOptions& opts = {});

std::vector<std::uint64_t> random_clocks(std::uint32_t n, std::uint64_t seed,
                                         std::uint64_t clock_max);

}  // namespace dynclock
