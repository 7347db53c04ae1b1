#ifndef QDIST_CONFIG_HPP
#define QDIST_CONFIG_HPP

#include <cstdint>
#include <set>
#include <string>

#include <json.hpp>

#include "qdist/error.hpp"

namespace qdist {

inline constexpr const char* kVersion = "0.1.0";

/// Everything a CLI run depends on. `threads` and `out` affect only where and how fast the
/// result is produced, so they stay out of embedded copies.
struct RunConfig {
  std::string command;
  std::string field;  // empty: F_5, or the default grid for verify
  std::string form = "standard";
  unsigned dim = 0;  // 0: take it from the set file, else 2
  std::string set;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  unsigned threads = 1;
  std::uint64_t budget = 1'000'000'000;
  std::string r = "all";
  unsigned trials = 1;
  std::string variety;
  unsigned samples = 20;
  unsigned gcl_sets = 10;
  bool inject_sign_error = false;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;

  nlohmann::ordered_json to_json(bool include_runtime = true) const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["field"] = field;
    j["form"] = form;
    j["dim"] = dim;
    j["set"] = set;
    j["seed"] = seed;
    if (include_runtime) j["out"] = out;
    j["format"] = format;
    if (include_runtime) j["threads"] = threads;
    j["budget"] = budget;
    j["r"] = r;
    j["trials"] = trials;
    j["variety"] = variety;
    j["samples"] = samples;
    j["gcl_sets"] = gcl_sets;
    j["inject_sign_error"] = inject_sign_error;
    return j;
  }

  /// Missing keys keep their defaults; unknown keys and wrongly typed values are rejected.
  static RunConfig from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidParameter("config must be a JSON object");
    static const std::set<std::string> known = {"command", "field",  "form",    "dim",     "set",      "seed",
                                                "out",     "format", "threads", "budget",  "r",        "trials",
                                                "variety", "samples", "gcl_sets", "inject_sign_error"};
    for (const auto& [key, value] : j.items())
      if (!known.count(key)) throw InvalidParameter("unknown config key '" + key + "'");
    RunConfig c;
    auto get = [&](const char* key, auto& dst) {
      if (!j.contains(key)) return;
      try {
        j.at(key).get_to(dst);
      } catch (const nlohmann::json::exception&) {
        throw InvalidParameter(std::string("config key '") + key + "' has the wrong type");
      }
    };
    auto get_uint = [&](const char* key, auto& dst) {
      if (j.contains(key) && !j.at(key).is_number_unsigned())
        throw InvalidParameter(std::string("config key '") + key + "' must be a non-negative integer");
      get(key, dst);
    };
    get("command", c.command);
    get("field", c.field);
    get("form", c.form);
    get_uint("dim", c.dim);
    get("set", c.set);
    get_uint("seed", c.seed);
    get("out", c.out);
    get("format", c.format);
    get_uint("threads", c.threads);
    get_uint("budget", c.budget);
    get("r", c.r);
    get_uint("trials", c.trials);
    get("variety", c.variety);
    get_uint("samples", c.samples);
    get_uint("gcl_sets", c.gcl_sets);
    if (j.contains("inject_sign_error") && !j.at("inject_sign_error").is_boolean())
      throw InvalidParameter("config key 'inject_sign_error' must be a boolean");
    get("inject_sign_error", c.inject_sign_error);
    if (c.format != "json" && c.format != "csv") throw InvalidParameter("format must be json or csv");
    return c;
  }

  /// Accepts a bare config object or a report that embeds one under "config".
  static RunConfig from_text(const std::string& text) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw InvalidParameter(std::string("config is not valid JSON: ") + e.what());
    }
    if (j.is_object() && j.contains("config") && j.contains("version")) return from_json(j.at("config"));
    return from_json(j);
  }
};

}  // namespace qdist

#endif  // QDIST_CONFIG_HPP
