#include "config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "cachewave/errors.hpp"

namespace cachewave::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::string_view where,
                    std::initializer_list<std::string_view> known) {
  if (!obj.is_object()) {
    throw ConfigError(fmt::format("{}: expected an object", where));
  }
  for (const auto& [key, value] : obj.items()) {
    bool found = false;
    for (std::string_view k : known) found = found || key == k;
    if (!found) {
      throw ConfigError(fmt::format("{}: unknown key \"{}\"", where, key));
    }
  }
}

double get_number(const json& obj, const char* key, double fallback,
                  std::string_view where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) {
    throw ConfigError(fmt::format("{}.{}: expected a number", where, key));
  }
  const double d = v.get<double>();
  if (!std::isfinite(d)) {
    throw ConfigError(fmt::format("{}.{}: must be finite", where, key));
  }
  return d;
}

std::uint64_t get_count(const json& obj, const char* key, std::uint64_t fallback,
                        std::string_view where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_unsigned()) {
    throw ConfigError(
        fmt::format("{}.{}: expected a non-negative integer", where, key));
  }
  return v.get<std::uint64_t>();
}

std::string get_string(const json& obj, const char* key, std::string fallback,
                       std::string_view where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) {
    throw ConfigError(fmt::format("{}.{}: expected a string", where, key));
  }
  return v.get<std::string>();
}

std::vector<double> get_grid(const json& obj, const char* key) {
  if (!obj.contains(key)) return {};
  const json& v = obj.at(key);
  if (!v.is_array() || v.empty()) {
    throw ConfigError(fmt::format("{}: expected a non-empty array", key));
  }
  std::vector<double> out;
  for (const json& x : v) {
    if (!x.is_number() || !std::isfinite(x.get<double>())) {
      throw ConfigError(fmt::format("{}: entries must be finite numbers", key));
    }
    const double d = x.get<double>();
    if (!out.empty() && !(d > out.back())) {
      throw ConfigError(fmt::format("{}: must be strictly increasing", key));
    }
    out.push_back(d);
  }
  return out;
}

void parse_point(const json& j, PointConfig& p) {
  reject_unknown(j, "point",
                 {"snr_db", "alpha", "r", "r_tilde", "r1", "r_tilde1",
                  "optimize"});
  p.snr_db = get_number(j, "snr_db", p.snr_db, "point");
  p.alpha = get_number(j, "alpha", p.alpha, "point");
  p.r = get_number(j, "r", p.r, "point");
  p.r_tilde = get_number(j, "r_tilde", p.r_tilde, "point");
  if (j.contains("r1")) p.r1 = get_number(j, "r1", 0.0, "point");
  if (j.contains("r_tilde1")) {
    p.r_tilde1 = get_number(j, "r_tilde1", 0.0, "point");
  }
  if (j.contains("optimize")) {
    if (!j.at("optimize").is_boolean()) {
      throw ConfigError("point.optimize: expected a boolean");
    }
    p.optimize_inputs = j.at("optimize").get<bool>();
  }
}

void parse_optimizer(const json& j, OptimizerConfig& o) {
  reject_unknown(j, "optimizer",
                 {"strategy", "objective", "resolution", "population",
                  "generations", "mutation_rate", "tournament_size", "blend",
                  "mutation_scale", "elites"});
  const std::string strategy = get_string(
      j, "strategy", std::string(to_string(o.strategy)), "optimizer");
  if (strategy == "grid") {
    o.strategy = Strategy::grid;
  } else if (strategy == "genetic") {
    o.strategy = Strategy::genetic;
  } else {
    throw ConfigError(fmt::format("optimizer.strategy: unknown \"{}\"", strategy));
  }
  const std::string objective = get_string(
      j, "objective", std::string(to_string(o.objective)), "optimizer");
  const auto kind = parse_objective(objective);
  if (!kind) {
    throw ConfigError(
        fmt::format("optimizer.objective: unknown \"{}\"", objective));
  }
  o.objective = *kind;
  o.resolution = get_count(j, "resolution", o.resolution, "optimizer");
  o.ga.population = get_count(j, "population", o.ga.population, "optimizer");
  o.ga.generations = get_count(j, "generations", o.ga.generations, "optimizer");
  o.ga.tournament_size =
      get_count(j, "tournament_size", o.ga.tournament_size, "optimizer");
  o.ga.elites = get_count(j, "elites", o.ga.elites, "optimizer");
  o.ga.mutation_rate =
      get_number(j, "mutation_rate", o.ga.mutation_rate, "optimizer");
  o.ga.blend = get_number(j, "blend", o.ga.blend, "optimizer");
  o.ga.mutation_scale =
      get_number(j, "mutation_scale", o.ga.mutation_scale, "optimizer");
}

void parse_mc(const json& j, McConfig& mc) {
  reject_unknown(j, "mc", {"trials", "batch_size", "threads"});
  mc.n_trials = get_count(j, "trials", mc.n_trials, "mc");
  mc.batch_size = get_count(j, "batch_size", mc.batch_size, "mc");
  mc.threads = static_cast<unsigned>(get_count(j, "threads", mc.threads, "mc"));
}

void validate(const ExperimentConfig& cfg) {
  try {
    cfg.channel(cfg.point.snr_db).validate();
    for (double s : cfg.snr_db) cfg.channel(s).validate();
    for (double r : cfg.rates) {
      if (r < 0.0) throw ConfigError("rates: must be non-negative");
    }
    if (cfg.rate < 0.0) throw ConfigError("rate: must be non-negative");
    PowerSplit{cfg.point.alpha}.validate();
    cfg.point.rates().validate();
    cfg.mc.validate();
    cfg.optimizer.ga.validate();
    if (cfg.optimizer.resolution < 2) {
      throw ConfigError("optimizer.resolution: must be at least 2");
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::eval: return "eval";
    case Command::optimize: return "optimize";
    case Command::fig3: return "fig3";
    case Command::fig4: return "fig4";
    case Command::fig5: return "fig5";
  }
  return "?";
}

std::optional<Command> parse_command(std::string_view text) noexcept {
  for (Command c : {Command::eval, Command::optimize, Command::fig3,
                    Command::fig4, Command::fig5}) {
    if (text == to_string(c)) return c;
  }
  return std::nullopt;
}

RateConfig PointConfig::rates() const {
  return RateConfig{r, r_tilde, r1.value_or(r), r_tilde1.value_or(r_tilde)};
}

ChannelParams ExperimentConfig::channel(double snr_db) const {
  return ChannelParams{lambda1, lambda2, power_from_snr_db(snr_db)};
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("invalid JSON: {}", e.what()));
  }
  reject_unknown(j, "config",
                 {"lambda1", "lambda2", "methods", "snr_db", "rates", "rate",
                  "point", "optimizer", "mc", "output", "seed"});
  ExperimentConfig cfg;
  cfg.lambda1 = get_number(j, "lambda1", cfg.lambda1, "config");
  cfg.lambda2 = get_number(j, "lambda2", cfg.lambda2, "config");
  cfg.rate = get_number(j, "rate", cfg.rate, "config");
  cfg.snr_db = get_grid(j, "snr_db");
  cfg.rates = get_grid(j, "rates");
  if (j.contains("methods")) {
    const json& m = j.at("methods");
    if (!m.is_array() || m.empty()) {
      throw ConfigError("methods: expected a non-empty array");
    }
    for (const json& name : m) {
      if (!name.is_string()) throw ConfigError("methods: expected strings");
      const auto method = parse_method(name.get<std::string>());
      if (!method) {
        throw ConfigError(fmt::format("methods: unknown method \"{}\"",
                                      name.get<std::string>()));
      }
      for (Method seen : cfg.methods) {
        if (seen == *method) throw ConfigError("methods: duplicate entry");
      }
      cfg.methods.push_back(*method);
    }
  }
  if (j.contains("point")) parse_point(j.at("point"), cfg.point);
  if (j.contains("optimizer")) parse_optimizer(j.at("optimizer"), cfg.optimizer);
  if (j.contains("mc")) parse_mc(j.at("mc"), cfg.mc);
  cfg.output = get_string(j, "output", cfg.output, "config");
  cfg.seed = get_count(j, "seed", cfg.seed, "config");
  cfg.mc.seed = cfg.seed;
  cfg.optimizer.ga.seed = cfg.seed;
  validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot read config file {}", path));
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string canonical_json(const ExperimentConfig& cfg) {
  json j;
  j["lambda1"] = cfg.lambda1;
  j["lambda2"] = cfg.lambda2;
  json methods = json::array();
  for (Method m : cfg.methods) methods.push_back(std::string(short_name(m)));
  j["methods"] = methods;
  j["snr_db"] = cfg.snr_db;
  j["rates"] = cfg.rates;
  j["rate"] = cfg.rate;
  json point;
  point["snr_db"] = cfg.point.snr_db;
  point["alpha"] = cfg.point.alpha;
  point["r"] = cfg.point.r;
  point["r_tilde"] = cfg.point.r_tilde;
  point["r1"] = cfg.point.rates().r1;
  point["r_tilde1"] = cfg.point.rates().r_tilde1;
  point["optimize"] = cfg.point.optimize_inputs;
  j["point"] = point;
  const OptimizerConfig& o = cfg.optimizer;
  j["optimizer"] = {
      {"strategy", std::string(to_string(o.strategy))},
      {"objective", std::string(to_string(o.objective))},
      {"resolution", o.resolution},
      {"population", o.ga.population},
      {"generations", o.ga.generations},
      {"mutation_rate", o.ga.mutation_rate},
      {"tournament_size", o.ga.tournament_size},
      {"blend", o.ga.blend},
      {"mutation_scale", o.ga.mutation_scale},
      {"elites", o.ga.elites},
  };
  j["mc"] = {{"trials", cfg.mc.n_trials}, {"batch_size", cfg.mc.batch_size}};
  j["seed"] = cfg.seed;
  return j.dump();
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

}  // namespace cachewave::cli
