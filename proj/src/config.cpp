#include "specloc/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace specloc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct RawConfig {
  // section -> key -> value, insertion order preserved for error messages
  std::map<std::string, std::map<std::string, std::string>> entries;

  static RawConfig parse(std::istream& in) {
    RawConfig raw;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') {
          throw ConfigError("line " + std::to_string(lineno) + ": unterminated section header");
        }
        section = trim(line.substr(1, line.size() - 2));
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
      }
      if (section.empty()) {
        throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
      }
      raw.entries[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return raw;
  }
};

class Reader {
 public:
  Reader(RawConfig raw) : raw_(std::move(raw)) {}

  bool has(const std::string& section, const std::string& key) {
    auto s = raw_.entries.find(section);
    if (s == raw_.entries.end()) return false;
    return s->second.count(key) > 0;
  }

  std::string take(const std::string& section, const std::string& key) {
    consumed_[section].insert(consumed_[section].end(), key);
    return raw_.entries[section][key];
  }

  double take_double(const std::string& section, const std::string& key, double fallback) {
    if (!has(section, key)) return fallback;
    const std::string v = take(section, key);
    try {
      std::size_t used = 0;
      const double d = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return d;
    } catch (const std::exception&) {
      throw ConfigError(section + "." + key + ": not a number: '" + v + "'");
    }
  }

  int take_int(const std::string& section, const std::string& key, int fallback) {
    if (!has(section, key)) return fallback;
    const std::string v = take(section, key);
    try {
      std::size_t used = 0;
      const long d = std::stol(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return static_cast<int>(d);
    } catch (const std::exception&) {
      throw ConfigError(section + "." + key + ": not an integer: '" + v + "'");
    }
  }

  bool take_bool(const std::string& section, const std::string& key, bool fallback) {
    if (!has(section, key)) return fallback;
    const std::string v = take(section, key);
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError(section + "." + key + ": expected true/false, got '" + v + "'");
  }

  std::string take_string(const std::string& section, const std::string& key,
                          const std::string& fallback) {
    if (!has(section, key)) return fallback;
    return take(section, key);
  }

  std::vector<std::uint64_t> take_seed_list(const std::string& section, const std::string& key,
                                            std::vector<std::uint64_t> fallback) {
    if (!has(section, key)) return fallback;
    const std::string v = take(section, key);
    std::vector<std::uint64_t> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      try {
        out.push_back(std::stoull(item));
      } catch (const std::exception&) {
        throw ConfigError(section + "." + key + ": bad seed '" + item + "'");
      }
    }
    if (out.empty()) throw ConfigError(section + "." + key + ": empty seed list");
    return out;
  }

  /// Every key present in the file must have been consumed.
  void finish() const {
    for (const auto& [section, keys] : raw_.entries) {
      auto c = consumed_.find(section);
      for (const auto& [key, value] : keys) {
        if (c == consumed_.end() ||
            std::find(c->second.begin(), c->second.end(), key) == c->second.end()) {
          throw ConfigError("unknown key: " + section + "." + key);
        }
      }
    }
  }

 private:
  RawConfig raw_;
  std::map<std::string, std::vector<std::string>> consumed_;
};

}  // namespace

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return from_stream(in);
}

RunConfig RunConfig::from_stream(std::istream& in) {
  Reader reader(RawConfig::parse(in));
  RunConfig c;
  c.model_name = reader.take_string("model", "name", "");
  c.v = reader.take_double("model", "v", c.v);
  c.w = reader.take_double("model", "w", c.w);
  c.disorder = reader.take_double("model", "disorder", c.disorder);
  c.mass = reader.take_double("model", "m", c.mass);

  c.ell = reader.take_int("localizer", "ell", c.ell);
  c.outer_ell = reader.take_int("localizer", "outer_ell", c.outer_ell);
  c.probe_ell = reader.take_int("localizer", "probe_ell", c.probe_ell);
  c.kappa = reader.take_double("localizer", "kappa", c.kappa);
  c.kappa_points = reader.take_int("localizer", "kappa_points", c.kappa_points);
  c.mu = reader.take_double("localizer", "mu", c.mu);

  c.zero_tolerance = reader.take_double("inertia", "zero_tolerance", c.zero_tolerance);

  c.nk_winding = reader.take_int("invariants", "nk_winding", c.nk_winding);
  c.nk_chern = reader.take_int("invariants", "nk_chern", c.nk_chern);
  c.margin = reader.take_int("invariants", "margin", c.margin);

  c.phase_param = reader.take_string("phase", "param", c.phase_param);
  c.phase_from = reader.take_double("phase", "from", c.phase_from);
  c.phase_to = reader.take_double("phase", "to", c.phase_to);
  c.phase_points = reader.take_int("phase", "points", c.phase_points);

  c.verify_draws = reader.take_int("verify", "draws", c.verify_draws);
  c.verify_dim = reader.take_int("verify", "dim_budget", c.verify_dim);
  c.verify_seed = static_cast<std::uint64_t>(reader.take_int("verify", "seed", 1));
  c.verify_budget_c = reader.take_double("verify", "budget_c", c.verify_budget_c);

  c.seeds = reader.take_seed_list("run", "seeds", c.seeds);
  c.out_dir = reader.take_string("run", "out", c.out_dir);
  c.workers = reader.take_int("run", "workers", c.workers);
  c.trajectories = reader.take_bool("run", "trajectories", c.trajectories);

  reader.finish();
  c.validate();
  return c;
}

void RunConfig::validate() const {
  if (model_name != "ssh" && model_name != "qwz") {
    throw ConfigError("model.name: expected 'ssh' or 'qwz', got '" + model_name + "'");
  }
  if (model_name == "ssh" && disorder < 0.0) throw ConfigError("model.disorder: must be >= 0");
  if (ell < 1) throw ConfigError("localizer.ell: must be >= 1");
  if (outer_ell != 0 && outer_ell < 2 * ell) {
    throw ConfigError("localizer.outer_ell: must be 0 (auto) or >= 2 * ell");
  }
  if (kappa < 0.0 || kappa > 1.0) throw ConfigError("localizer.kappa: must lie in [0, 1]");
  if (kappa_points < 2) throw ConfigError("localizer.kappa_points: must be >= 2");
  if (mu <= 0.0) throw ConfigError("localizer.mu: must be > 0");
  if (zero_tolerance < 0.0) throw ConfigError("inertia.zero_tolerance: must be >= 0");
  if (nk_winding < 8) throw ConfigError("invariants.nk_winding: must be >= 8");
  if (nk_chern < 4) throw ConfigError("invariants.nk_chern: must be >= 4");
  if (margin < 0 || margin >= ell) throw ConfigError("invariants.margin: must lie in [0, ell)");
  if (!phase_param.empty() && phase_param != "m" && phase_param != "v" && phase_param != "w") {
    throw ConfigError("phase.param: expected 'm', 'v' or 'w'");
  }
  if (workers < 1) throw ConfigError("run.workers: must be >= 1");
}

Model RunConfig::make_model(std::uint64_t seed) const {
  if (model_name == "ssh") return make_ssh(v, w, disorder, seed);
  return make_qwz(mass);
}

int RunConfig::effective_probe_ell() const {
  if (probe_ell > 0) return probe_ell;
  return model_name == "qwz" ? 15 : std::max(2 * ell, 120);
}

}  // namespace specloc
