#include "fracdiff/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fracdiff/errors.hpp"
#include "fracdiff/format.hpp"

namespace fracdiff {

namespace {

const std::set<std::string> kKnownKeys = {
    "gamma", "alpha", "beta", "dt", "dx", "nx", "ny", "steps", "strategy",
    "L",     "a",     "eta",  "threshold", "snapshot_every", "init", "out_dir"};

struct Entry {
  std::string value;
  int line;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(int line, const std::string& key, const std::string& what) {
  throw ValidationError("line " + std::to_string(line) + ": key `" + key + "`: " + what);
}

double parse_real(const Entry& e, const std::string& key) {
  double v = 0.0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) fail(e.line, key, "`" + e.value + "` is not a real number");
  return v;
}

std::int64_t parse_int(const Entry& e, const std::string& key) {
  std::int64_t v = 0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) fail(e.line, key, "`" + e.value + "` is not an integer");
  return v;
}

std::vector<PointSource> parse_init(const Entry& e, const std::string& key) {
  std::vector<PointSource> out;
  std::stringstream ss(e.value);
  std::string triple;
  while (std::getline(ss, triple, ';')) {
    triple = trim(triple);
    if (triple.empty()) continue;
    std::stringstream ts(triple);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ts, part, ',')) parts.push_back(trim(part));
    if (parts.size() != 3) fail(e.line, key, "`" + triple + "` is not a j,l,value triple");
    PointSource s;
    s.j = parse_int({parts[0], e.line}, key);
    s.l = parse_int({parts[1], e.line}, key);
    s.value = parse_real({parts[2], e.line}, key);
    out.push_back(s);
  }
  return out;
}

}  // namespace

SimConfig parse_config(const std::string& text) {
  std::map<std::string, Entry> entries;
  {
    std::stringstream ss(text);
    std::string raw;
    int line = 0;
    while (std::getline(ss, raw)) {
      ++line;
      const std::string s = trim(raw);
      if (s.empty() || s[0] == '#') continue;
      const auto eq = s.find('=');
      if (eq == std::string::npos)
        throw ValidationError("line " + std::to_string(line) + ": expected key=value, got `" +
                              s + "`");
      const std::string key = trim(s.substr(0, eq));
      const std::string value = trim(s.substr(eq + 1));
      if (!kKnownKeys.count(key))
        throw ValidationError("line " + std::to_string(line) + ": unknown key `" + key + "`");
      if (entries.count(key))
        throw ValidationError("line " + std::to_string(line) + ": duplicate key `" + key + "`");
      entries.emplace(key, Entry{value, line});
    }
  }

  auto required = [&](const std::string& key) -> const Entry& {
    const auto it = entries.find(key);
    if (it == entries.end()) throw ValidationError("missing required key `" + key + "`");
    return it->second;
  };

  SimConfig cfg;
  cfg.gamma = parse_real(required("gamma"), "gamma");
  cfg.nx = parse_int(required("nx"), "nx");
  cfg.steps = parse_int(required("steps"), "steps");
  if (entries.count("alpha")) cfg.alpha = parse_real(entries.at("alpha"), "alpha");
  if (entries.count("beta")) cfg.beta = parse_real(entries.at("beta"), "beta");
  if (entries.count("dt")) cfg.dt = parse_real(entries.at("dt"), "dt");
  if (entries.count("dx")) cfg.dx = parse_real(entries.at("dx"), "dx");
  if (entries.count("ny")) cfg.ny = parse_int(entries.at("ny"), "ny");
  if (entries.count("snapshot_every"))
    cfg.snapshot_every = parse_int(entries.at("snapshot_every"), "snapshot_every");
  if (entries.count("init")) cfg.init = parse_init(entries.at("init"), "init");
  if (entries.count("out_dir")) cfg.out_dir = entries.at("out_dir").value;

  const Entry& strat = required("strategy");
  auto param = [&](const std::string& key) -> const Entry& {
    const auto it = entries.find(key);
    if (it == entries.end())
      throw ValidationError("strategy=" + strat.value + " requires key `" + key + "`");
    return it->second;
  };
  auto forbid = [&](std::initializer_list<const char*> keys) {
    for (const char* key : keys)
      if (entries.count(key))
        fail(entries.at(key).line, key, "not valid for strategy=" + strat.value);
  };
  if (strat.value == "full") {
    forbid({"L", "a", "eta", "threshold"});
    cfg.strategy = Full{};
  } else if (strat.value == "short") {
    forbid({"a", "eta", "threshold"});
    cfg.strategy = Short{parse_real(param("L"), "L")};
  } else if (strat.value == "adaptive") {
    forbid({"L", "eta", "threshold"});
    cfg.strategy = AdaptiveArithmetic{parse_int(param("a"), "a")};
  } else if (strat.value == "powerlaw") {
    forbid({"L", "a", "threshold"});
    cfg.strategy = PowerLaw{parse_int(param("eta"), "eta")};
  } else if (strat.value == "smart") {
    forbid({"L", "a", "eta"});
    cfg.strategy = Smart{parse_real(param("threshold"), "threshold")};
  } else {
    fail(strat.line, "strategy",
         "`" + strat.value + "` is not one of full, short, adaptive, powerlaw, smart");
  }

  // Domain checks with line/key diagnostics, then the cross-field contract.
  if (!(cfg.gamma > 0.0) || !(cfg.gamma <= 2.0))
    fail(entries.at("gamma").line, "gamma", "must lie in (0, 2]");
  validate(cfg);
  return cfg;
}

SimConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const SimConfig& cfg) {
  std::ostringstream os;
  os << "gamma=" << fmt_real(cfg.gamma) << '\n';
  os << "alpha=" << fmt_real(cfg.alpha) << '\n';
  os << "beta=" << fmt_real(cfg.beta) << '\n';
  os << "dt=" << fmt_real(cfg.dt) << '\n';
  os << "dx=" << fmt_real(cfg.dx) << '\n';
  os << "nx=" << cfg.nx << '\n';
  os << "ny=" << cfg.ny << '\n';
  os << "steps=" << cfg.steps << '\n';
  os << "snapshot_every=" << cfg.snapshot_every << '\n';
  os << "strategy=" << strategy_tag(cfg.strategy) << '\n';
  if (const auto* s = std::get_if<Short>(&cfg.strategy))
    os << "L=" << fmt_real(s->length) << '\n';
  else if (const auto* a = std::get_if<AdaptiveArithmetic>(&cfg.strategy))
    os << "a=" << a->base << '\n';
  else if (const auto* p = std::get_if<PowerLaw>(&cfg.strategy))
    os << "eta=" << p->reset << '\n';
  else if (const auto* m = std::get_if<Smart>(&cfg.strategy))
    os << "threshold=" << fmt_real(m->threshold) << '\n';
  if (!cfg.init.empty()) {
    os << "init=";
    for (std::size_t i = 0; i < cfg.init.size(); ++i) {
      if (i) os << ';';
      os << cfg.init[i].j << ',' << cfg.init[i].l << ',' << fmt_real(cfg.init[i].value);
    }
    os << '\n';
  }
  os << "out_dir=" << cfg.out_dir << '\n';
  return os.str();
}

}  // namespace fracdiff
