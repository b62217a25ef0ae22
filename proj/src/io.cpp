#include "dynclock/io.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dynclock {

namespace {

std::string render_round(const Digraph& g) {
  std::string out;
  for (auto [i, j] : g.edges(false)) {
    out += " (" + std::to_string(i) + "," + std::to_string(j) + ")";
  }
  return out;
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& why) {
  throw std::runtime_error("schedule parse error at line " + std::to_string(line_no) + ": " + why);
}

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::pair<NodeId, NodeId>> parse_edge_list(const std::string& body,
                                                       std::size_t line_no) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::istringstream in(body);
  std::string tok;
  while (in >> tok) {
    if (tok.size() < 5 || tok.front() != '(' || tok.back() != ')')
      parse_fail(line_no, "expected (i,j), got '" + tok + "'");
    std::size_t comma = tok.find(',');
    if (comma == std::string::npos) parse_fail(line_no, "expected (i,j), got '" + tok + "'");
    try {
      NodeId a = static_cast<NodeId>(std::stoul(tok.substr(1, comma - 1)));
      NodeId b = static_cast<NodeId>(std::stoul(tok.substr(comma + 1, tok.size() - comma - 2)));
      edges.emplace_back(a, b);
    } catch (const std::exception&) {
      parse_fail(line_no, "bad edge '" + tok + "'");
    }
  }
  return edges;
}

}  // namespace

std::string write_schedule(const DynamicGraph& dg) {
  if (!dg.is_prefix_cycle())
    throw std::invalid_argument("only prefix-cycle schedules serialize; generators do not");
  std::string out = "n=" + std::to_string(dg.node_count()) + "\n";
  Round t = 1;
  for (const Digraph& g : dg.prefix())
    out += "round " + std::to_string(t++) + ":" + render_round(g) + "\n";
  out += "cycle:\n";
  for (const Digraph& g : dg.cycle())
    out += "round " + std::to_string(t++) + ":" + render_round(g) + "\n";
  return out;
}

DynamicGraph parse_schedule(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  std::optional<std::uint32_t> n;
  std::vector<Digraph> prefix, cycle;
  bool in_cycle = false;
  Round expect_round = 1;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.rfind("init", 0) == 0) continue;  // init section, parsed separately

    if (line.rfind("n=", 0) == 0) {
      if (n) parse_fail(line_no, "duplicate n= header");
      try {
        n = static_cast<std::uint32_t>(std::stoul(line.substr(2)));
      } catch (const std::exception&) {
        parse_fail(line_no, "bad node count");
      }
      continue;
    }
    if (line == "cycle:") {
      if (in_cycle) parse_fail(line_no, "duplicate cycle: marker");
      in_cycle = true;
      continue;
    }
    if (line.rfind("round", 0) == 0) {
      if (!n) parse_fail(line_no, "round block before n= header");
      std::size_t colon = line.find(':');
      if (colon == std::string::npos) parse_fail(line_no, "round block without ':'");
      Round t = 0;
      try {
        t = std::stoull(strip(line.substr(5, colon - 5)));
      } catch (const std::exception&) {
        parse_fail(line_no, "bad round number");
      }
      if (t != expect_round)
        parse_fail(line_no, "rounds must be consecutive from 1; expected " +
                                std::to_string(expect_round));
      ++expect_round;
      Digraph g = Digraph::from_edges(*n, parse_edge_list(line.substr(colon + 1), line_no));
      (in_cycle ? cycle : prefix).push_back(std::move(g));
      continue;
    }
    parse_fail(line_no, "unrecognized line '" + line + "'");
  }
  if (!n) throw std::runtime_error("schedule parse error: missing n= header");
  if (!in_cycle) throw std::runtime_error("schedule parse error: missing cycle: marker");
  if (cycle.empty()) throw std::runtime_error("schedule parse error: empty cycle");
  return DynamicGraph::prefix_cycle(std::move(prefix), std::move(cycle));
}

std::string write_init(const InitialStates& init) {
  std::string out;
  if (const auto* mm = std::get_if<std::vector<MinMaxState>>(&init)) {
    for (std::size_t i = 0; i < mm->size(); ++i) {
      out += "init minmax " + std::to_string(i) + ": h=" + std::to_string((*mm)[i].age) +
             " C=" + std::to_string((*mm)[i].clock) + " view=";
      for (ViewEntry e : (*mm)[i].view.entries())
        out += "(" + std::to_string(e.value) + "," + std::to_string(e.depth) + ")";
      out += "\n";
    }
  } else if (const auto* sap = std::get_if<std::vector<SapState>>(&init)) {
    for (std::size_t i = 0; i < sap->size(); ++i)
      out += "init sap " + std::to_string(i) + ": C=" + std::to_string((*sap)[i].clock) +
             " M=" + std::to_string((*sap)[i].period_factor) + "\n";
  } else {
    const auto& clocks = std::get<std::vector<std::uint64_t>>(init);
    for (std::size_t i = 0; i < clocks.size(); ++i)
      out += "init sap-fixed " + std::to_string(i) + ": C=" + std::to_string(clocks[i]) + "\n";
  }
  return out;
}

namespace {

std::uint64_t field_u64(const std::string& body, const std::string& key, std::size_t line_no) {
  std::size_t pos = body.find(key + "=");
  if (pos == std::string::npos) parse_fail(line_no, "missing " + key + "=");
  std::size_t start = pos + key.size() + 1;
  std::size_t end = body.find(' ', start);
  try {
    return std::stoull(body.substr(start, end - start));
  } catch (const std::exception&) {
    parse_fail(line_no, "bad " + key + "= value");
  }
}

}  // namespace

InitialStates parse_init(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  std::string algo;
  std::vector<MinMaxState> mm;
  std::vector<SapState> sap;
  std::vector<std::uint64_t> clocks;
  std::size_t expect = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip(raw);
    if (line.empty() || line.front() == '#' || line.rfind("init", 0) != 0) continue;
    std::istringstream fields(line);
    std::string kw, kind, idx_str;
    fields >> kw >> kind >> idx_str;
    if (!idx_str.empty() && idx_str.back() == ':') idx_str.pop_back();
    std::size_t idx = 0;
    try {
      idx = std::stoul(idx_str);
    } catch (const std::exception&) {
      parse_fail(line_no, "bad node index");
    }
    if (algo.empty()) algo = kind;
    if (kind != algo) parse_fail(line_no, "mixed algorithms in one init section");
    if (idx != expect) parse_fail(line_no, "init lines must cover nodes 0,1,... in order");
    ++expect;
    std::string body = line.substr(line.find(':') + 1);
    if (kind == "minmax") {
      MinMaxState s;
      s.age = field_u64(body, "h", line_no);
      s.clock = field_u64(body, "C", line_no);
      std::size_t vp = body.find("view=");
      if (vp == std::string::npos) parse_fail(line_no, "missing view=");
      std::string vlist = strip(body.substr(vp + 5));
      std::vector<ViewEntry> entries;
      std::size_t pos = 0;
      while (pos < vlist.size()) {
        if (vlist[pos] != '(') parse_fail(line_no, "bad view list");
        std::size_t close = vlist.find(')', pos);
        std::size_t comma = vlist.find(',', pos);
        if (close == std::string::npos || comma == std::string::npos || comma > close)
          parse_fail(line_no, "bad view entry");
        try {
          entries.push_back({std::stoull(vlist.substr(pos + 1, comma - pos - 1)),
                             std::stoull(vlist.substr(comma + 1, close - comma - 1))});
        } catch (const std::exception&) {
          parse_fail(line_no, "bad view entry");
        }
        pos = close + 1;
      }
      s.view = View(std::move(entries));
      mm.push_back(std::move(s));
    } else if (kind == "sap") {
      sap.push_back({field_u64(body, "C", line_no), field_u64(body, "M", line_no)});
    } else if (kind == "sap-fixed") {
      clocks.push_back(field_u64(body, "C", line_no));
    } else {
      parse_fail(line_no, "unknown algorithm '" + kind + "'");
    }
  }
  if (algo == "minmax") return mm;
  if (algo == "sap") return sap;
  if (algo == "sap-fixed") return clocks;
  throw std::runtime_error("init parse error: no init lines found");
}

std::string write_trace(const ExecutionTrace& trace, int verbosity) {
  using json = nlohmann::ordered_json;
  std::string out;
  auto emit = [&](const json& j) { out += j.dump() + "\n"; };

  if (const auto* mm = std::get_if<MinMaxTrace>(&trace)) {
    json header{{"record", "header"},
                {"algorithm", "minmax"},
                {"n", mm->node_count()},
                {"horizon", mm->horizon},
                {"rounds", mm->rounds()},
                {"seed", mm->seed}};
    emit(header);
    for (Round t = 0; t <= mm->rounds() && verbosity >= 1; ++t) {
      json row{{"record", "round"}, {"t", t},          {"h", mm->age[t]},
               {"c", mm->min_clock[t]}, {"C", mm->clock[t]}, {"view_size", mm->view_size[t]}};
      if (verbosity >= 2 && mm->views_retained) {
        json views = json::array();
        for (const View& v : mm->views[t]) {
          json entries = json::array();
          for (ViewEntry e : v.entries()) entries.push_back({e.value, e.depth});
          views.push_back(entries);
        }
        row["views"] = views;
      }
      emit(row);
    }
    SyncVerdict v = detect_sync(*mm);
    emit(json{{"record", "summary"},
              {"synchronized", v.synchronized},
              {"round", v.synchronized ? json(v.round) : json(nullptr)},
              {"mode", "exact_incrementing"}});
  } else {
    const SapTrace& st = std::get<SapTrace>(trace);
    json header{{"record", "header"},
                {"algorithm", st.fixed_period ? "sap-fixed" : "sap"},
                {"n", st.node_count()},
                {"period", st.config.period},
                {"growth", st.config.growth.name()},
                {"horizon", st.horizon},
                {"rounds", st.rounds()},
                {"seed", st.seed}};
    emit(header);
    for (Round t = 0; t <= st.rounds() && verbosity >= 1; ++t) {
      json clocks = json::array(), factors = json::array();
      for (const SapState& s : st.states[t]) {
        clocks.push_back(s.clock);
        factors.push_back(s.period_factor);
      }
      json row{{"record", "round"}, {"t", t}, {"C", clocks}, {"M", factors}};
      if (t >= 1) {
        row["g_fired"] = st.growth_fired[t - 1];
        row["j_min"] = st.min_source[t - 1];
      }
      emit(row);
    }
    SyncVerdict v = detect_sync(st);
    emit(json{{"record", "summary"},
              {"synchronized", v.synchronized},
              {"round", v.synchronized ? json(v.round) : json(nullptr)},
              {"mode", "mod_p"},
              {"period", st.config.period}});
  }
  return out;
}

}  // namespace dynclock
