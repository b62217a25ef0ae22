#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dynclock/analysis.hpp"
#include "dynclock/engine.hpp"
#include "dynclock/io.hpp"
#include "dynclock/presets.hpp"
#include "dynclock/random.hpp"
#include "dynclock/scenarios.hpp"
#include "json.hpp"

using namespace dynclock;
using json = nlohmann::ordered_json;

namespace {

struct ScenarioParams {
  std::uint64_t period = 2;
  std::uint64_t factor = 3;
  std::uint32_t n = 5;
  std::uint64_t factor0 = 2;
  std::uint64_t clock0 = 1;
  std::string growth = "successor";
  std::uint32_t blocks = 4;
  std::uint32_t losses = 9;
  std::uint64_t seed = 1;
  std::string cls = "rooted";
  std::uint64_t delta = 2;
  std::string schedule_file;
};

Digraph ring_graph(std::uint32_t n) {
  Digraph g(n);
  for (NodeId i = 0; i < n; ++i) {
    g.add_edge(i, (i + 1) % n);
    g.add_edge((i + 1) % n, i);
  }
  return g;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Scenario build_scenario(const std::string& name, const ScenarioParams& p) {
  if (name == "chain") return chain_counterexample(p.period, p.factor, p.n);
  if (name == "h") return h_counterexample(p.period, p.factor);
  if (name == "rooted-cex") {
    auto g = GrowthFunction::parse(p.growth);
    if (!g) throw std::runtime_error("bad growth spec: " + p.growth);
    return rooted_counterexample(p.period, p.factor0, p.clock0, *g, p.blocks);
  }
  if (name == "stars-2cycle") return star_alternation_2cycle(p.n);
  if (name == "stars-growing") return star_alternation_growing(p.n);
  if (name == "link-loss") return link_loss_adversary(p.n, p.losses, p.seed);
  if (name == "round-robin") {
    Digraph base = p.schedule_file.empty()
                       ? ring_graph(p.n)
                       : parse_schedule(slurp(p.schedule_file)).at(1);
    return round_robin_transform(base);
  }
  if (name == "random-rooted") {
    ScheduleClass cls;
    if (p.cls == "rooted")
      cls = ScheduleClass::rooted;
    else if (p.cls == "uniformly-rooted")
      cls = ScheduleClass::uniformly_rooted;
    else if (p.cls == "strongly-connected")
      cls = ScheduleClass::strongly_connected;
    else
      throw std::runtime_error("unknown class: " + p.cls);
    RandomSchedule rs = random_rooted(p.n, p.delta, cls, p.seed);
    Scenario s;
    s.name = "random-rooted";
    s.summary = "sampled schedule of class " + p.cls;
    s.graph = rs.graph;
    s.algorithm = MinMaxAlgorithm{};
    s.init = random_minmax_states(p.n, p.seed);
    s.suggested_horizon = 500;
    s.expect_sync = true;
    s.advertised = rs.cls;
    return s;
  }
  throw std::runtime_error("unknown scenario: " + name + " (see `dynclock scenario list`)");
}

void add_scenario_flags(CLI::App* cmd, ScenarioParams& p) {
  cmd->add_option("--period", p.period, "period P");
  cmd->add_option("--factor", p.factor, "period factor M");
  cmd->add_option("--n", p.n, "node count");
  cmd->add_option("--factor0", p.factor0, "initial factor of the rooted adversary");
  cmd->add_option("--clock0", p.clock0, "initial aligned clock of the rooted adversary");
  cmd->add_option("--growth", p.growth, "growth function: successor|affine|constant:M|table:a,b,...");
  cmd->add_option("--blocks", p.blocks, "adversary blocks to construct");
  cmd->add_option("--losses", p.losses, "message losses per round");
  cmd->add_option("--class", p.cls, "rooted|uniformly-rooted|strongly-connected");
  cmd->add_option("--delta", p.delta, "delay bound for sampled schedules");
}

json eccentricity_json(const Eccentricity& e) {
  switch (e.kind) {
    case Eccentricity::Kind::finite:
      return e.value;
    case Eccentricity::Kind::infinite:
      return "infinite";
    case Eccentricity::Kind::exceeds_cap:
      return ">" + std::to_string(e.value);
  }
  return nullptr;
}

json class_json(const ConnectivityClass& c) {
  json j;
  j["n"] = c.n;
  j["rooted_with_delay"] = c.rooted_with_delay ? json(*c.rooted_with_delay) : json(nullptr);
  j["uniformly_rooted_with_delay"] =
      c.uniformly_rooted_with_delay ? json(*c.uniformly_rooted_with_delay) : json(nullptr);
  j["uniform_root_set"] = mask_to_nodes(c.uniform_root_set);
  j["strongly_connected_with_delay"] =
      c.strongly_connected_with_delay ? json(*c.strongly_connected_with_delay) : json(nullptr);
  j["center"] = mask_to_nodes(c.center);
  j["kernel"] = mask_to_nodes(c.kernel);
  j["radius"] = eccentricity_json(c.radius);
  j["diameter"] = eccentricity_json(c.diameter);
  json ecc = json::array();
  for (const Eccentricity& e : c.eccentricity) ecc.push_back(eccentricity_json(e));
  j["eccentricity"] = ecc;
  return j;
}

void print_class(const ConnectivityClass& c) {
  auto opt = [](const std::optional<std::uint64_t>& v) {
    return v ? std::to_string(*v) : std::string("absent");
  };
  std::cout << "n=" << c.n << "\n"
            << "rooted_with_delay=" << opt(c.rooted_with_delay) << "\n"
            << "uniformly_rooted_with_delay=" << opt(c.uniformly_rooted_with_delay) << "\n"
            << "uniform_root_set=" << mask_to_string(c.uniform_root_set) << "\n"
            << "strongly_connected_with_delay=" << opt(c.strongly_connected_with_delay) << "\n"
            << "center=" << mask_to_string(c.center) << "\n"
            << "kernel=" << mask_to_string(c.kernel) << "\n"
            << "radius=" << c.radius.to_string() << "\n"
            << "diameter=" << c.diameter.to_string() << "\n";
}

struct RunReport {
  std::uint64_t seed = 0;
  SyncVerdict verdict;
  std::optional<Round> bound;
  std::string bound_kind = "none";
  std::optional<bool> bound_ok;
  json measured = json::object();
  bool checks_ok = true;
  std::vector<std::string> violations;
};

// One seeded run: execute, detect, attach the applicable bound given what
// classify says about the schedule, collect measured quantities.
RunReport execute_one(const Algorithm& algo, const Scenario& scenario, const InitialStates& init,
                      Round horizon, std::uint64_t seed, bool early_stop,
                      const std::optional<ConnectivityClass>& cls, const std::string& out_dir,
                      int verbosity, std::size_t rep) {
  Execution ex;
  ex.algorithm = algo;
  ex.graph = scenario.graph;
  ex.initial_states = init;
  ex.horizon = horizon;
  ex.seed = seed;
  ex.early_stop = early_stop;
  ExecutionTrace trace = run(ex);
  RunReport r;
  r.seed = seed;
  r.verdict = detect_sync(trace);

  if (scenario.closed_form) {
    r.violations = scenario.closed_form(trace);
    r.checks_ok = r.checks_ok && r.violations.empty();
  }
  if (scenario.expect_sync)
    r.checks_ok = r.checks_ok && (*scenario.expect_sync == r.verdict.synchronized);

  if (const auto* mm = std::get_if<MinMaxTrace>(&trace)) {
    std::uint64_t h0 = 0, max_view = 0;
    for (NodeId i = 0; i < mm->node_count(); ++i) h0 = std::max(h0, mm->age[0][i]);
    for (const auto& row : mm->view_size)
      for (std::uint64_t v : row) max_view = std::max(max_view, v);
    r.measured["max_initial_age"] = h0;
    r.measured["max_view_size"] = max_view;
    if (cls && cls->diameter.is_finite()) {
      r.bound = minmax_diameter_bound(cls->diameter.value, h0);
      r.bound_kind = "2D+h0";
    } else if (cls && cls->rooted_with_delay) {
      SettleMeasurement m = measure_settling(*mm, cls->kernel, *cls->rooted_with_delay);
      r.measured["s0"] = m.s0;
      r.measured["settled"] = m.settled;
      if (m.settled) {
        r.measured["t0"] = m.t0;
        r.measured["kernel_constant"] = m.kernel_constant;
        std::uint64_t w =
            kernel_window(mm->node_count(), *cls->rooted_with_delay, mask_size(cls->kernel));
        r.bound = minmax_stabilization_bound(w, m.s0, m.t0, h0);
        r.bound_kind = "measured-t1";
      }
    }
  } else {
    const SapTrace& st = std::get<SapTrace>(trace);
    std::uint64_t max_factor = 0, max_clock = 0;
    for (const auto& row : st.states)
      for (const SapState& s : row) {
        max_factor = std::max(max_factor, s.period_factor);
        max_clock = std::max(max_clock, s.clock);
      }
    r.measured["max_factor"] = max_factor;
    r.measured["max_clock"] = max_clock;
    if (cls && cls->diameter.is_finite()) {
      if (auto b = sap_diameter_bound(cls->diameter.value, st.config)) {
        r.bound = *b;
        r.bound_kind = "(q0+2)D";
      }
    } else if (cls && cls->uniformly_rooted_with_delay && st.config.growth.inflationary() &&
               cls->radius.is_finite()) {
      CenterMetrics cm = center_metrics(st, cls->center, st.config.period);
      r.measured["center_stabilized"] = cm.stabilized;
      if (cm.stabilized) {
        r.measured["center_factor"] = cm.center_factor;
        r.measured["center_round"] = cm.stabilization_round;
        ConnectivityClass zc = classify(induce(st.graph, cls->center));
        if (zc.diameter.is_finite()) {
          SapUniformBound b = sap_uniform_bound(cls->radius.value, zc.diameter.value, st.config,
                                                cm.center_factor, max_factor);
          r.bound = sap_uniform_deadline(cm.stabilization_round, b, cls->radius.value,
                                         st.config.period);
          r.bound_kind = "measured-t2";
        }
      }
    }
  }
  if (r.bound && scenario.expect_sync.value_or(true))
    r.bound_ok = r.verdict.synchronized && r.verdict.round <= *r.bound;
  if (r.bound_ok) r.checks_ok = r.checks_ok && *r.bound_ok;

  if (!out_dir.empty()) {
    std::ofstream f(out_dir + "/trace_" + std::to_string(rep) + ".jsonl");
    f << write_trace(trace, verbosity);
  }
  return r;
}

json report_json(const RunReport& r) {
  json j;
  j["record"] = "run";
  j["seed"] = r.seed;
  j["synchronized"] = r.verdict.synchronized;
  j["sync_round"] = r.verdict.synchronized ? json(r.verdict.round) : json(nullptr);
  j["bound_kind"] = r.bound_kind;
  j["bound"] = r.bound ? json(*r.bound) : json(nullptr);
  j["bound_ok"] = r.bound_ok ? json(*r.bound_ok) : json(nullptr);
  j["checks_ok"] = r.checks_ok;
  j["measured"] = r.measured;
  if (!r.violations.empty()) j["violations"] = r.violations;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"self-stabilizing clock synchronization over dynamic graphs"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from a config file (sections per subcommand)");
  std::string save_config;
  app.add_option("--save-config", save_config, "write the effective options to a config file");

  // ---- run ----
  auto* cmd_run = app.add_subcommand("run", "execute seeded runs and report bounds");
  cmd_run->fallthrough();
  ScenarioParams run_params;
  // empty --init means: the scenario's suggested states, or the uniform
  // preset when running a bare schedule file
  std::string run_algorithm, run_scenario, run_schedule, run_init, run_out;
  Round run_horizon = 0;
  std::uint64_t run_seed = 1, run_reps = 1;
  int run_verbosity = 1;
  bool run_full = false;
  cmd_run->add_option("--algorithm", run_algorithm, "minmax|sap|sap-fixed");
  cmd_run->add_option("--scenario", run_scenario, "scenario name");
  cmd_run->add_option("--schedule", run_schedule, "schedule file");
  cmd_run->add_option("--init", run_init, "uniform|zero-age|suggested|<file>");
  cmd_run->add_option("--horizon", run_horizon, "max rounds (0 = heuristic default)");
  cmd_run->add_option("--seed", run_seed, "base seed");
  cmd_run->add_option("--reps", run_reps, "seeded repetitions");
  cmd_run->add_option("--out", run_out, "directory for trace files");
  cmd_run->add_option("--verbosity", run_verbosity, "0,1,2");
  cmd_run->add_flag("--full", run_full, "never stop early");
  add_scenario_flags(cmd_run, run_params);

  // ---- analyze ----
  auto* cmd_analyze = app.add_subcommand("analyze", "classify a schedule file");
  cmd_analyze->fallthrough();
  std::string an_schedule;
  std::uint64_t an_delta_cap = kNoDelayCap;
  cmd_analyze->add_option("--schedule", an_schedule, "schedule file")->required();
  cmd_analyze->add_option("--delta-cap", an_delta_cap, "report delays only up to this cap");

  // ---- verify ----
  auto* cmd_verify = app.add_subcommand("verify", "run a scenario against its expectations");
  cmd_verify->fallthrough();
  ScenarioParams verify_params;
  std::string verify_scenario;
  Round verify_horizon = 0;
  cmd_verify->add_option("--scenario", verify_scenario, "scenario name")->required();
  cmd_verify->add_option("--horizon", verify_horizon, "override the suggested horizon");
  cmd_verify->add_option("--seed", verify_params.seed, "seed for seeded scenarios");
  add_scenario_flags(cmd_verify, verify_params);

  // ---- scenario list/export ----
  auto* cmd_scenario = app.add_subcommand("scenario", "inspect scenario constructors");
  auto* cmd_list = cmd_scenario->add_subcommand("list", "list scenario names");
  auto* cmd_export = cmd_scenario->add_subcommand("export", "write a scenario to a file");
  ScenarioParams export_params;
  std::string export_scenario_name, export_out;
  cmd_export->add_option("--scenario", export_scenario_name, "scenario name")->required();
  cmd_export->add_option("--out", export_out, "output file (default stdout)");
  cmd_export->add_option("--seed", export_params.seed, "seed for seeded scenarios");
  add_scenario_flags(cmd_export, export_params);

  CLI11_PARSE(app, argc, argv);

  try {
    if (!save_config.empty()) {
      std::istringstream all(app.config_to_str(false, true));
      std::ofstream f(save_config);
      std::string line;
      while (std::getline(all, line))
        if (line.rfind("save-config", 0) != 0) f << line << "\n";
    }

    if (cmd_run->parsed()) {
      if (run_scenario.empty() == run_schedule.empty())
        throw std::runtime_error("pass exactly one of --scenario / --schedule");

      Scenario scenario;
      if (!run_scenario.empty()) {
        run_params.seed = run_seed;
        scenario = build_scenario(run_scenario, run_params);
      } else {
        scenario.name = run_schedule;
        scenario.summary = "schedule file";
        scenario.graph = parse_schedule(slurp(run_schedule));
        scenario.algorithm = MinMaxAlgorithm{};
        if (run_algorithm.empty())
          throw std::runtime_error("--algorithm is required with --schedule");
      }

      Algorithm algo = scenario.algorithm;
      if (!run_algorithm.empty()) {
        if (run_algorithm == "minmax")
          algo = MinMaxAlgorithm{};
        else if (run_algorithm == "sap") {
          auto g = GrowthFunction::parse(run_params.growth);
          if (!g) throw std::runtime_error("bad growth spec: " + run_params.growth);
          algo = SapAlgorithm{SapConfig{run_params.period, *g}};
        } else if (run_algorithm == "sap-fixed")
          algo = SapFixedAlgorithm{run_params.period, run_params.factor};
        else
          throw std::runtime_error("unknown algorithm: " + run_algorithm);
      }

      const std::uint32_t n = scenario.graph.node_count();
      Round horizon = run_horizon;
      if (horizon == 0) {
        std::uint64_t pm = run_params.period * std::max<std::uint64_t>(run_params.factor, 1);
        horizon = scenario.suggested_horizon ? scenario.suggested_horizon : 10 * n * pm;
      }
      bool early_stop = !run_full && scenario.expect_sync.value_or(true) && !scenario.closed_form;

      std::optional<ConnectivityClass> cls;
      if (scenario.advertised)
        cls = scenario.advertised;
      else if (scenario.graph.is_prefix_cycle())
        cls = classify(scenario.graph);

      if (!run_out.empty()) std::filesystem::create_directories(run_out);

      bool all_ok = true;
      std::string summary_lines;
      std::string init_mode = run_init;
      if (init_mode.empty()) init_mode = run_scenario.empty() ? "uniform" : "suggested";
      auto init_matches = [](const Algorithm& a, const InitialStates& s) {
        if (std::holds_alternative<MinMaxAlgorithm>(a))
          return std::holds_alternative<std::vector<MinMaxState>>(s);
        if (std::holds_alternative<SapAlgorithm>(a))
          return std::holds_alternative<std::vector<SapState>>(s);
        return std::holds_alternative<std::vector<std::uint64_t>>(s);
      };
      // overriding the algorithm invalidates the scenario's suggested states
      if (init_mode == "suggested" && !init_matches(algo, scenario.init)) init_mode = "uniform";

      for (std::size_t rep = 0; rep < run_reps; ++rep) {
        std::uint64_t seed = mix_seed(run_seed, rep);
        InitialStates init = scenario.init;
        if (init_mode == "uniform" || init_mode == "zero-age") {
          if (std::holds_alternative<MinMaxAlgorithm>(algo)) {
            MinMaxInitOptions opts;
            opts.zero_age = init_mode == "zero-age";
            init = random_minmax_states(n, seed, opts);
          } else if (std::holds_alternative<SapAlgorithm>(algo)) {
            init = random_sap_states(n, seed);
          } else {
            const auto& f = std::get<SapFixedAlgorithm>(algo);
            init = random_clocks(n, seed, f.period * f.period_factor - 1);
          }
        } else if (init_mode != "suggested") {
          init = parse_init(slurp(init_mode));
        }

        RunReport r = execute_one(algo, scenario, init, horizon, seed, early_stop, cls, run_out,
                                  run_verbosity, rep);
        all_ok = all_ok && r.checks_ok;
        json j = report_json(r);
        summary_lines += j.dump() + "\n";
        std::cout << "run seed=" << r.seed << " sync="
                  << (r.verdict.synchronized ? std::to_string(r.verdict.round) : "none")
                  << " bound=" << (r.bound ? std::to_string(*r.bound) : "-") << " ("
                  << r.bound_kind << ")"
                  << " ok=" << (r.checks_ok ? "yes" : "NO") << "\n";
      }
      std::cout << summary_lines;
      if (!run_out.empty()) {
        std::ofstream f(run_out + "/summary.jsonl");
        f << summary_lines;
      }
      return all_ok ? 0 : 1;
    }

    if (cmd_analyze->parsed()) {
      DynamicGraph dg = parse_schedule(slurp(an_schedule));
      ConnectivityClass c = classify(dg, an_delta_cap);
      print_class(c);
      std::cout << class_json(c).dump() << "\n";
      return 0;
    }

    if (cmd_verify->parsed()) {
      Scenario s = build_scenario(verify_scenario, verify_params);
      Execution ex;
      ex.algorithm = s.algorithm;
      ex.graph = s.graph;
      ex.initial_states = s.init;
      ex.horizon = verify_horizon ? verify_horizon : s.suggested_horizon;
      ExecutionTrace trace = run(ex);
      SyncVerdict v = detect_sync(trace);

      bool ok = true;
      if (s.expect_sync) {
        bool match = *s.expect_sync == v.synchronized;
        ok = ok && match;
        std::cout << "[" << (match ? "pass" : "FAIL") << "] expected "
                  << (*s.expect_sync ? "synchronization" : "no synchronization") << ", got "
                  << v.to_string() << "\n";
      }
      if (s.closed_form) {
        std::vector<std::string> bad = s.closed_form(trace);
        ok = ok && bad.empty();
        std::cout << "[" << (bad.empty() ? "pass" : "FAIL") << "] closed-form checks";
        if (!bad.empty()) std::cout << " (" << bad.size() << " violations)";
        std::cout << "\n";
        for (std::size_t k = 0; k < bad.size() && k < 5; ++k)
          std::cout << "    " << bad[k] << "\n";
      }
      json j{{"record", "verify"},
             {"scenario", s.name},
             {"synchronized", v.synchronized},
             {"pass", ok}};
      std::cout << j.dump() << "\n";
      return ok ? 0 : 1;
    }

    if (cmd_list->parsed()) {
      for (const auto& [name, what] : scenario_catalog())
        std::cout << name << "\t" << what << "\n";
      return 0;
    }

    if (cmd_export->parsed()) {
      Scenario s = build_scenario(export_scenario_name, export_params);
      if (!s.graph.is_prefix_cycle() && !s.exportable_graph)
        throw std::runtime_error("scenario '" + s.name +
                                 "' is generator-only and has no serializable form");
      const DynamicGraph& g = s.graph.is_prefix_cycle() ? s.graph : *s.exportable_graph;
      std::string text = write_schedule(g) + write_init(s.init);
      if (export_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream f(export_out);
        f << text;
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cout << json{{"record", "error"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }
  return 2;
}
