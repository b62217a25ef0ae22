#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dynclock/digraph.hpp"

namespace dynclock {

/// Non-decreasing growth policy for the adaptive period factor. Arithmetic
/// saturates at the 64-bit ceiling so bound computations with aggressive
/// growth stay well-defined.
class GrowthFunction {
 public:
  static GrowthFunction constant(std::uint64_t m);
  static GrowthFunction successor();  // x + 1
  static GrowthFunction affine();     // 2x + 1
  static GrowthFunction table(std::vector<std::uint64_t> values);

  std::uint64_t operator()(std::uint64_t x) const;

  /// x < g(x) for every x.
  bool inflationary() const;

  /// g iterated q times.
  std::uint64_t iterate(std::uint64_t x, std::uint64_t q) const;

  std::string name() const;
  static std::optional<GrowthFunction> parse(const std::string& spec);

  bool operator==(const GrowthFunction&) const = default;

 private:
  enum class Kind { constant, successor, affine, table };
  GrowthFunction(Kind k, std::uint64_t c, std::vector<std::uint64_t> t);

  Kind kind_;
  std::uint64_t constant_ = 0;
  std::vector<std::uint64_t> table_;  // clamped at the last entry
};

/// Least q with g^q(0) >= m; nullopt when no iterate reaches m (constant
/// growth below m, or a table that plateaus short of it).
std::optional<std::uint64_t> growth_star(const GrowthFunction& g, std::uint64_t m,
                                         std::uint64_t cap = 1'000'000);

struct SapConfig {
  std::uint64_t period = 1;  // P >= 1
  GrowthFunction growth = GrowthFunction::successor();
};

struct SapState {
  std::uint64_t clock = 0;          // counted modulo period * period_factor
  std::uint64_t period_factor = 0;  // non-decreasing across steps
  bool operator==(const SapState&) const = default;
};

struct SapMessage {
  std::uint64_t clock = 0;
  std::uint64_t period_factor = 0;
};

inline SapMessage sap_send(const SapState& s) { return {s.clock, s.period_factor}; }

struct SapStepResult {
  SapState state;
  bool growth_fired = false;  // whether discordant clocks escalated the factor
};

/// Remainder with the convention that a zero modulus leaves the value
/// unchanged (a zero period factor before the first growth application).
std::uint64_t reduce_mod(std::uint64_t value, std::uint64_t modulus);

/// One transition, in pseudocode order: the clock wraps modulo
/// period * OLD factor; the factor then takes the maximum of the received
/// factors; finally, if two received clocks differ modulo the period, the
/// growth function is applied.
///
/// `received` must include the node's own message.
SapStepResult sap_step(const SapState& state, const std::vector<SapMessage>& received,
                       const SapConfig& cfg);

/// Fixed-period specialization: clocks wrap modulo period * factor, with no
/// adaptive state. The node's own clock must be among the received ones.
std::uint64_t sap_fixed_step(const std::vector<std::uint64_t>& received,
                             std::uint64_t period, std::uint64_t period_factor);

/// Stabilization bound for a finite dynamic diameter D:
/// (g*(ceil(2D/P)) + 2) * D. nullopt when the growth function cannot reach
/// the required factor.
std::optional<Round> sap_diameter_bound(std::uint64_t diameter, const SapConfig& cfg);

struct SapUniformBound {
  Round table_bound = 0;    // a-priori bound from radius, center diameter, and inits
  std::uint64_t q1 = 0;     // growth iterations needed past the center factor
  std::uint64_t center_factor = 0;
};

/// A-priori bound for uniformly rooted schedules (radius R, center diameter
/// D_Z) with an inflationary growth function; center_factor is the
/// stabilized common factor inside the center, max_initial_factor the
/// largest factor in the initial states. Throws for non-inflationary g.
SapUniformBound sap_uniform_bound(std::uint64_t radius, std::uint64_t center_diameter,
                                  const SapConfig& cfg, std::uint64_t center_factor,
                                  std::uint64_t max_initial_factor);

/// Trace-measured synchronization deadline: t0 + q1 * R + P * M_Z + R.
Round sap_uniform_deadline(Round t0, const SapUniformBound& b, std::uint64_t radius,
                           std::uint64_t period);

}  // namespace dynclock
