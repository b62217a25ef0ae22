#include "dynclock/sap.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace dynclock {

namespace {

constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > kSat - b ? kSat : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSat / b ? kSat : a * b;
}

}  // namespace

GrowthFunction::GrowthFunction(Kind k, std::uint64_t c, std::vector<std::uint64_t> t)
    : kind_(k), constant_(c), table_(std::move(t)) {}

GrowthFunction GrowthFunction::constant(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("constant growth must be positive");
  return GrowthFunction(Kind::constant, m, {});
}

GrowthFunction GrowthFunction::successor() { return GrowthFunction(Kind::successor, 0, {}); }

GrowthFunction GrowthFunction::affine() { return GrowthFunction(Kind::affine, 0, {}); }

GrowthFunction GrowthFunction::table(std::vector<std::uint64_t> values) {
  if (values.empty()) throw std::invalid_argument("growth table must be non-empty");
  if (!std::is_sorted(values.begin(), values.end()))
    throw std::invalid_argument("growth table must be non-decreasing");
  return GrowthFunction(Kind::table, 0, std::move(values));
}

std::uint64_t GrowthFunction::operator()(std::uint64_t x) const {
  switch (kind_) {
    case Kind::constant:
      return constant_;
    case Kind::successor:
      return sat_add(x, 1);
    case Kind::affine:
      return sat_add(sat_mul(2, x), 1);
    case Kind::table:
      return table_[std::min<std::uint64_t>(x, table_.size() - 1)];
  }
  return 0;
}

bool GrowthFunction::inflationary() const {
  // A clamped table is eventually constant, so it can never dominate the
  // identity everywhere.
  return kind_ == Kind::successor || kind_ == Kind::affine;
}

std::uint64_t GrowthFunction::iterate(std::uint64_t x, std::uint64_t q) const {
  for (std::uint64_t k = 0; k < q; ++k) {
    std::uint64_t next = (*this)(x);
    if (next == x && kind_ != Kind::constant) return x;  // fixpoint, saturated
    x = next;
  }
  return x;
}

std::string GrowthFunction::name() const {
  switch (kind_) {
    case Kind::constant:
      return "constant:" + std::to_string(constant_);
    case Kind::successor:
      return "successor";
    case Kind::affine:
      return "affine";
    case Kind::table: {
      std::string s = "table:";
      for (std::size_t k = 0; k < table_.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(table_[k]);
      }
      return s;
    }
  }
  return "";
}

std::optional<GrowthFunction> GrowthFunction::parse(const std::string& spec) {
  if (spec == "successor") return successor();
  if (spec == "affine") return affine();
  auto parse_list = [](const std::string& body) -> std::optional<std::vector<std::uint64_t>> {
    std::vector<std::uint64_t> out;
    std::size_t pos = 0;
    while (pos <= body.size()) {
      std::size_t comma = body.find(',', pos);
      std::string tok = body.substr(pos, comma == std::string::npos ? comma : comma - pos);
      if (tok.empty()) return std::nullopt;
      try {
        out.push_back(std::stoull(tok));
      } catch (...) {
        return std::nullopt;
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return out;
  };
  if (spec.rfind("constant:", 0) == 0) {
    try {
      std::uint64_t m = std::stoull(spec.substr(9));
      if (m == 0) return std::nullopt;
      return constant(m);
    } catch (...) {
      return std::nullopt;
    }
  }
  if (spec.rfind("table:", 0) == 0) {
    auto vals = parse_list(spec.substr(6));
    if (!vals || vals->empty() || !std::is_sorted(vals->begin(), vals->end()))
      return std::nullopt;
    return table(std::move(*vals));
  }
  return std::nullopt;
}

std::optional<std::uint64_t> growth_star(const GrowthFunction& g, std::uint64_t m,
                                         std::uint64_t cap) {
  std::uint64_t x = 0;
  std::uint64_t q = 0;
  while (x < m) {
    std::uint64_t next = g(x);
    if (next <= x) return std::nullopt;  // stuck below m
    x = next;
    ++q;
    if (q > cap) return std::nullopt;
  }
  return q;
}

std::uint64_t reduce_mod(std::uint64_t value, std::uint64_t modulus) {
  return modulus == 0 ? value : value % modulus;
}

SapStepResult sap_step(const SapState& state, const std::vector<SapMessage>& received,
                       const SapConfig& cfg) {
  if (received.empty()) throw std::invalid_argument("a node always hears itself");
  if (cfg.period == 0) throw std::invalid_argument("period must be positive");

  std::uint64_t min_clock = received.front().clock;
  std::uint64_t max_factor = received.front().period_factor;
  bool discordant = false;
  std::uint64_t first_residue = received.front().clock % cfg.period;
  for (const SapMessage& m : received) {
    min_clock = std::min(min_clock, m.clock);
    max_factor = std::max(max_factor, m.period_factor);
    if (m.clock % cfg.period != first_residue) discordant = true;
  }

  SapStepResult r;
  // The wrap uses the factor held before this step.
  r.state.clock = reduce_mod(min_clock + 1, cfg.period * state.period_factor);
  r.state.period_factor = max_factor;
  if (discordant) {
    r.state.period_factor = cfg.growth(r.state.period_factor);
    r.growth_fired = true;
  }
  return r;
}

std::uint64_t sap_fixed_step(const std::vector<std::uint64_t>& received,
                             std::uint64_t period, std::uint64_t period_factor) {
  if (received.empty()) throw std::invalid_argument("a node always hears itself");
  if (period == 0 || period_factor == 0)
    throw std::invalid_argument("period and factor must be positive");
  std::uint64_t m = *std::min_element(received.begin(), received.end());
  return (m + 1) % (period * period_factor);
}

std::optional<Round> sap_diameter_bound(std::uint64_t diameter, const SapConfig& cfg) {
  std::uint64_t need = (2 * diameter + cfg.period - 1) / cfg.period;  // ceil(2D/P)
  auto q0 = growth_star(cfg.growth, need);
  if (!q0) return std::nullopt;
  return sat_mul(sat_add(*q0, 2), diameter);
}

SapUniformBound sap_uniform_bound(std::uint64_t radius, std::uint64_t center_diameter,
                                  const SapConfig& cfg, std::uint64_t center_factor,
                                  std::uint64_t max_initial_factor) {
  if (!cfg.growth.inflationary())
    throw std::invalid_argument("uniform-rootedness bound needs an inflationary growth function");
  std::uint64_t P = cfg.period;
  std::uint64_t q0 = *growth_star(cfg.growth, (2 * center_diameter + P - 1) / P);
  std::uint64_t T = sat_mul(q0 + 2, center_diameter);
  std::uint64_t M = cfg.growth.iterate(max_initial_factor, T);

  SapUniformBound b;
  b.center_factor = center_factor;
  // ceil(M + (2+R)/P)
  std::uint64_t arg = sat_add(M, (sat_add(2, radius) + P - 1) / P);
  b.table_bound = sat_add(sat_mul(radius, sat_add(1, *growth_star(cfg.growth, arg))),
                          sat_add(sat_mul(P, M), sat_mul(q0 + 2, center_diameter)));
  // ceil(M_Z + (R+1)/P)
  std::uint64_t arg1 = sat_add(center_factor, (sat_add(radius, 1) + P - 1) / P);
  b.q1 = *growth_star(cfg.growth, arg1);
  return b;
}

Round sap_uniform_deadline(Round t0, const SapUniformBound& b, std::uint64_t radius,
                           std::uint64_t period) {
  return sat_add(sat_add(t0, sat_mul(b.q1, radius)),
                 sat_add(sat_mul(period, b.center_factor), radius));
}

}  // namespace dynclock
