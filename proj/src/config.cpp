#include "pricing/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace pricing {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

/// Raw key/value lines with duplicate detection.
class KvReader {
 public:
  KvReader(std::istream& in, std::vector<std::string>& errors)
      : errors_(errors) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        errors_.push_back("line " + std::to_string(lineno) +
                          ": expected key = value, got '" + line + "'");
        continue;
      }
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty() || value.empty()) {
        errors_.push_back("line " + std::to_string(lineno) +
                          ": empty key or value");
        continue;
      }
      if (values_.count(key) != 0) {
        errors_.push_back("line " + std::to_string(lineno) +
                          ": duplicate key '" + key + "'");
        continue;
      }
      values_[key] = value;
    }
  }

  [[nodiscard]] std::optional<std::string> take(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    std::string v = it->second;
    values_.erase(it);
    return v;
  }

  double take_double(const std::string& key, double fallback) {
    auto v = take(key);
    if (!v) return fallback;
    try {
      std::size_t pos = 0;
      const double d = std::stod(*v, &pos);
      if (pos != v->size()) throw std::invalid_argument("trailing text");
      return d;
    } catch (const std::exception&) {
      errors_.push_back("key '" + key + "': expected a number, got '" + *v +
                        "'");
      return fallback;
    }
  }

  std::int64_t take_int(const std::string& key, std::int64_t fallback) {
    auto v = take(key);
    if (!v) return fallback;
    try {
      std::size_t pos = 0;
      const long long i = std::stoll(*v, &pos);
      if (pos != v->size()) throw std::invalid_argument("trailing text");
      return i;
    } catch (const std::exception&) {
      errors_.push_back("key '" + key + "': expected an integer, got '" + *v +
                        "'");
      return fallback;
    }
  }

  bool take_bool(const std::string& key, bool fallback) {
    auto v = take(key);
    if (!v) return fallback;
    if (*v == "true" || *v == "1") return true;
    if (*v == "false" || *v == "0") return false;
    errors_.push_back("key '" + key + "': expected true/false, got '" + *v +
                      "'");
    return fallback;
  }

  void finish() {
    for (const auto& [k, v] : values_) {
      errors_.push_back("unknown key '" + k + "'");
    }
  }

  [[nodiscard]] bool has(const std::string& key) const {
    return values_.count(key) != 0;
  }

 private:
  std::map<std::string, std::string> values_;
  std::vector<std::string>& errors_;
};

}  // namespace

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  const std::string t = trim(text);
  const auto dots = t.find("..");
  if (dots != std::string::npos) {
    const std::uint64_t lo = std::stoull(trim(t.substr(0, dots)));
    const std::uint64_t hi = std::stoull(trim(t.substr(dots + 2)));
    if (hi < lo) throw std::invalid_argument("seed range is reversed: " + t);
    if (hi - lo > 1000000) {
      throw std::invalid_argument("seed range too large: " + t);
    }
    std::vector<std::uint64_t> out;
    for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
    return out;
  }
  std::vector<std::uint64_t> out;
  for (const auto& part : split(t, ',')) {
    if (part.empty()) continue;
    out.push_back(std::stoull(part));
  }
  if (out.empty()) throw std::invalid_argument("no seeds in '" + text + "'");
  return out;
}

ExperimentConfig parse_config(std::istream& in,
                              std::vector<std::string>& errors) {
  KvReader kv(in, errors);
  ExperimentConfig cfg;

  // --- instance ---
  auto require = [&](const char* key) {
    if (!kv.has(key)) errors.push_back(std::string("missing key '") + key + "'");
  };
  require("instance.a");
  require("instance.b");
  require("instance.c");
  require("instance.p_max");
  require("instance.gamma_min");
  require("run.horizon");

  cfg.instance.a = kv.take_double("instance.a", 0.0);
  cfg.instance.b = kv.take_double("instance.b", 0.0);
  cfg.instance.a_max = kv.take_double("instance.a_max", cfg.instance.a);
  cfg.instance.b_min = kv.take_double("instance.b_min", cfg.instance.b);
  cfg.instance.b_max = kv.take_double("instance.b_max", cfg.instance.b);
  cfg.instance.c = kv.take_double("instance.c", 0.0);
  cfg.instance.p_max = kv.take_double("instance.p_max", 0.0);
  cfg.instance.gamma_min = kv.take_double("instance.gamma_min", 0.0);
  cfg.instance.noise_sigma = kv.take_double("instance.noise_sigma", 0.0);
  cfg.instance.lipschitz_f = kv.take_double("instance.lipschitz_f", 0.0);
  if (auto v = kv.take("instance.noise")) {
    try {
      cfg.instance.noise = noise_kind_from_string(*v);
    } catch (const std::exception& e) {
      errors.push_back(e.what());
    }
  }

  if (auto v = kv.take("instance.inventory")) {
    try {
      cfg.inventory.kind = inventory_kind_from_string(*v);
    } catch (const std::exception& e) {
      errors.push_back(e.what());
    }
  }
  cfg.inventory.band_lo = kv.take_double("instance.band_lo", 0.0);
  cfg.inventory.band_hi = kv.take_double("instance.band_hi", 0.0);
  cfg.inventory.value = kv.take_double("instance.value", 0.0);
  cfg.inventory.epoch_len = kv.take_int("instance.epoch_len", 50);
  if (auto v = kv.take("instance.cycle")) {
    for (const auto& part : split(*v, ',')) {
      if (part.empty()) continue;
      try {
        cfg.inventory.cycle.push_back(std::stod(part));
      } catch (const std::exception&) {
        errors.push_back("instance.cycle: bad number '" + part + "'");
      }
    }
  }
  if (auto v = kv.take("instance.replay_path")) {
    cfg.inventory.replay_path = *v;
  }

  // --- policy ---
  if (auto v = kv.take("policy.name")) {
    if (*v != "c20cb" && *v != "etc" && *v != "ucb" && *v != "oracle") {
      errors.push_back("policy.name must be c20cb|etc|ucb|oracle, got '" + *v +
                       "'");
    } else {
      cfg.policy.name = *v;
    }
  }
  if (kv.has("policy.eta")) {
    cfg.policy.eta = kv.take_double("policy.eta", 0.0);
  }
  cfg.policy.delta = kv.take_double("policy.delta", 0.05);
  cfg.policy.gamma0_variant = kv.take_bool("policy.gamma0_variant", false);
  if (auto v = kv.take("policy.cb_variant")) {
    if (*v == "derived") {
      cfg.policy.statement_cb = false;
    } else if (*v == "statement") {
      cfg.policy.statement_cb = true;
    } else {
      errors.push_back("policy.cb_variant must be derived|statement, got '" +
                       *v + "'");
    }
  }
  cfg.policy.etc_window =
      static_cast<int>(kv.take_int("policy.etc_window", 0));
  cfg.policy.ucb_arms = static_cast<int>(kv.take_int("policy.ucb_arms", 0));

  // --- run ---
  cfg.run.horizon = kv.take_int("run.horizon", 0);
  if (auto v = kv.take("run.seeds")) {
    try {
      cfg.run.seeds = parse_seeds(*v);
    } catch (const std::exception& e) {
      errors.push_back(std::string("run.seeds: ") + e.what());
    }
  }
  if (auto v = kv.take("run.out_dir")) cfg.run.out_dir = *v;
  cfg.run.per_round = kv.take_bool("run.per_round", false);

  kv.finish();
  return cfg;
}

ExperimentConfig load_config(const std::string& path,
                             std::vector<std::string>& errors) {
  std::ifstream in(path);
  if (!in) {
    errors.push_back("cannot open config file: " + path);
    return {};
  }
  return parse_config(in, errors);
}

ValidationReport validate_config(const ExperimentConfig& cfg) {
  ValidationReport rep;
  double lo = 0.0, hi = 0.0;
  try {
    // Seed value is irrelevant for the emittable range.
    InventoryGenerator gen(cfg.inventory, 1);
    lo = gen.lo();
    hi = gen.hi();
    if (gen.length() >= 0 && gen.length() < cfg.run.horizon) {
      rep.failures.push_back(
          {"inventory-length",
           "replay provides " + std::to_string(gen.length()) +
               " rounds, horizon needs " + std::to_string(cfg.run.horizon)});
    }
  } catch (const std::exception& e) {
    rep.failures.push_back({"inventory-spec", e.what()});
    return rep;
  }

  ValidationReport inst = validate_instance(cfg.instance, lo, hi);
  rep.passed.insert(rep.passed.end(), inst.passed.begin(), inst.passed.end());
  rep.failures.insert(rep.failures.end(), inst.failures.begin(),
                      inst.failures.end());
  rep.warnings.insert(rep.warnings.end(), inst.warnings.begin(),
                      inst.warnings.end());

  if (cfg.run.horizon < 64) {
    rep.failures.push_back(
        {"horizon", "run.horizon must be >= 64, got " +
                        std::to_string(cfg.run.horizon)});
  }
  if (cfg.run.seeds.empty()) {
    rep.failures.push_back({"seeds", "need at least one seed"});
  }
  if (!(cfg.policy.delta > 0.0) || !(cfg.policy.delta < 1.0)) {
    rep.failures.push_back({"delta", "policy.delta must lie in (0, 1)"});
  }
  if (cfg.policy.eta && !(*cfg.policy.eta > 0.0)) {
    rep.failures.push_back({"eta", "policy.eta must be positive"});
  }
  if (cfg.policy.etc_window < 0) {
    rep.failures.push_back({"etc-window", "policy.etc_window must be >= 0"});
  }
  if (cfg.policy.ucb_arms < 0) {
    rep.failures.push_back({"ucb-arms", "policy.ucb_arms must be >= 0"});
  }
  return rep;
}

std::string resolve_out_dir(const ExperimentConfig& cfg) {
  if (!cfg.run.out_dir.empty()) return cfg.run.out_dir;
  if (const char* env = std::getenv(kOutDirEnvVar);
      env != nullptr && *env != '\0') {
    return env;
  }
  return "out";
}

}  // namespace pricing
