#include "dynclock/presets.hpp"

#include "dynclock/random.hpp"

namespace dynclock {

std::vector<MinMaxState> random_minmax_states(std::uint32_t n, std::uint64_t seed,
                                              const MinMaxInitOptions& opts) {
  std::mt19937_64 rng(seed);
  std::vector<MinMaxState> out;
  out.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    MinMaxState s;
    s.age = opts.zero_age ? 0 : uniform_u64(rng, 0, opts.age_max);
    std::uint64_t k = uniform_u64(rng, 1, std::max<std::uint64_t>(1, opts.entries_max));
    std::vector<ViewEntry> entries;
    for (std::uint64_t e = 0; e < k; ++e)
      entries.push_back({uniform_u64(rng, 0, opts.value_max), uniform_u64(rng, 0, opts.depth_max)});
    s.view = View(std::move(entries));
    s.clock = uniform_u64(rng, 0, opts.value_max);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<SapState> random_sap_states(std::uint32_t n, std::uint64_t seed,
                                        const SapInitOptions& opts) {
  std::mt19937_64 rng(seed);
  std::vector<SapState> out;
  out.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i)
    out.push_back({uniform_u64(rng, 0, opts.clock_max),
                   uniform_u64(rng, opts.factor_min, opts.factor_max)});
  return out;
}

std::vector<std::uint64_t> random_clocks(std::uint32_t n, std::uint64_t seed,
                                         std::uint64_t clock_max) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> out;
  out.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) out.push_back(uniform_u64(rng, 0, clock_max));
  return out;
}

}  // namespace dynclock
