// Copyright 2026 The VISTA Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef VISTA_CONFIG_HPP_
#define VISTA_CONFIG_HPP_

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "vista/common.hpp"

namespace vista {

/// Flat key-value config file: one `key value...` pair per line, `#` comments.
class KvFile {
 public:
  KvFile() = default;

  static KvFile parse(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open config: " + path);
    KvFile kv;
    std::string line;
    while (std::getline(is, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      std::string key;
      if (!(ls >> key)) continue;
      std::string rest;
      std::getline(ls, rest);
      const auto pos = rest.find_first_not_of(" \t");
      kv.map_[key] = pos == std::string::npos ? "" : rest.substr(pos);
    }
    return kv;
  }

  bool has(const std::string& key) const { return map_.count(key) > 0; }

  const std::string& raw(const std::string& key) const {
    auto it = map_.find(key);
    if (it == map_.end()) throw ConfigError("missing config key: " + key);
    return it->second;
  }

  template <typename T>
  T get(const std::string& key) const {
    std::istringstream is(raw(key));
    T v;
    is >> v;
    if (!is) throw ConfigError("bad value for config key: " + key);
    return v;
  }

  template <typename T>
  T get_or(const std::string& key, T fallback) const {
    return has(key) ? get<T>(key) : fallback;
  }

  std::vector<double> get_doubles(const std::string& key) const {
    std::istringstream is(raw(key));
    std::vector<double> out;
    double v;
    while (is >> v) out.push_back(v);
    return out;
  }

  std::vector<int> get_ints(const std::string& key) const {
    std::istringstream is(raw(key));
    std::vector<int> out;
    int v;
    while (is >> v) out.push_back(v);
    return out;
  }

  void set(const std::string& key, const std::string& value) { map_[key] = value; }

  const std::map<std::string, std::string>& entries() const { return map_; }

 private:
  std::map<std::string, std::string> map_;
};

enum class ViewKind { kLfccs, kUgps };

inline const char* view_kind_name(ViewKind k) {
  return k == ViewKind::kLfccs ? "lfccs" : "ugps";
}

/// Every adaptation hyperparameter plus the design-decision knobs.
struct VistaConfig {
  // Intervention generator.
  double lowfreq_ratio = 0.10;       // r
  double entropy_quantile = 0.95;    // q
  int dilation_side = 5;             // cubic structuring element side (15 at full scale)
  bool shared_pair = false;          // reuse one sequence pair for both swaps
  ViewKind view1_kind = ViewKind::kLfccs;
  ViewKind view2_kind = ViewKind::kUgps;

  // Gated self-training.
  double tau_var = 0.05;
  double tau_plus = 0.95;
  double tau_minus = 0.05;
  double lambda_cons = 1.0;
  bool pl_enabled = true;
  bool variance_gate_enabled = true;
  bool pl_exact_sum = false;  // Eq-style sum instead of mean over gated entries

  // Online update loop.
  int steps_per_case = 10;  // K
  double lr = 1e-4;
  double ema_alpha = 0.99;
  int k_views = 3;
  bool freeze_bn_stats = true;
  bool ema_per_step = true;
  bool reset_optimizer_per_case = false;

  std::uint64_t seed = 0;

  void validate() const {
    if (!(lowfreq_ratio >= 0.0 && lowfreq_ratio <= 1.0))
      throw ConfigError("VistaConfig: lowfreq_ratio must be in [0,1]");
    if (!(entropy_quantile > 0.0 && entropy_quantile < 1.0))
      throw ConfigError("VistaConfig: entropy_quantile must be in (0,1)");
    if (dilation_side < 1 || dilation_side % 2 == 0)
      throw ConfigError("VistaConfig: dilation_side must be odd and >= 1");
    if (!(tau_var > 0.0)) throw ConfigError("VistaConfig: tau_var must be positive");
    if (!(0.0 < tau_minus && tau_minus < tau_plus && tau_plus < 1.0))
      throw ConfigError("VistaConfig: need 0 < tau_minus < tau_plus < 1");
    if (!(lambda_cons >= 0.0)) throw ConfigError("VistaConfig: lambda_cons must be >= 0");
    if (steps_per_case < 1) throw ConfigError("VistaConfig: steps_per_case must be >= 1");
    if (!(lr > 0.0)) throw ConfigError("VistaConfig: lr must be positive");
    if (!(ema_alpha > 0.0 && ema_alpha < 1.0))
      throw ConfigError("VistaConfig: ema_alpha must be in (0,1)");
    if (k_views != 3) throw ConfigError("VistaConfig: k_views is fixed at 3");
  }

  static VistaConfig from_kv(const KvFile& kv) {
    VistaConfig c;
    c.lowfreq_ratio = kv.get_or("lowfreq_ratio", c.lowfreq_ratio);
    c.entropy_quantile = kv.get_or("entropy_quantile", c.entropy_quantile);
    c.dilation_side = kv.get_or("dilation_side", c.dilation_side);
    c.shared_pair = kv.get_or("shared_pair", 0) != 0;
    c.tau_var = kv.get_or("tau_var", c.tau_var);
    c.tau_plus = kv.get_or("tau_plus", c.tau_plus);
    c.tau_minus = kv.get_or("tau_minus", c.tau_minus);
    c.lambda_cons = kv.get_or("lambda_cons", c.lambda_cons);
    c.pl_exact_sum = kv.get_or("pl_exact_sum", 0) != 0;
    c.steps_per_case = kv.get_or("steps_per_case", c.steps_per_case);
    c.lr = kv.get_or("lr", c.lr);
    c.ema_alpha = kv.get_or("ema_alpha", c.ema_alpha);
    c.freeze_bn_stats = kv.get_or("freeze_bn_stats", 1) != 0;
    c.ema_per_step = kv.get_or("ema_per_step", 1) != 0;
    c.reset_optimizer_per_case = kv.get_or("reset_optimizer_per_case", 0) != 0;
    c.seed = kv.get_or<std::uint64_t>("seed", c.seed);
    c.validate();
    return c;
  }

  std::map<std::string, std::string> to_kv() const {
    auto str = [](auto v) {
      std::ostringstream os;
      os.precision(17);
      os << v;
      return os.str();
    };
    return {
        {"lowfreq_ratio", str(lowfreq_ratio)},
        {"entropy_quantile", str(entropy_quantile)},
        {"dilation_side", str(dilation_side)},
        {"shared_pair", shared_pair ? "1" : "0"},
        {"view1_kind", view_kind_name(view1_kind)},
        {"view2_kind", view_kind_name(view2_kind)},
        {"tau_var", str(tau_var)},
        {"tau_plus", str(tau_plus)},
        {"tau_minus", str(tau_minus)},
        {"lambda_cons", str(lambda_cons)},
        {"pl_enabled", pl_enabled ? "1" : "0"},
        {"variance_gate_enabled", variance_gate_enabled ? "1" : "0"},
        {"pl_exact_sum", pl_exact_sum ? "1" : "0"},
        {"steps_per_case", str(steps_per_case)},
        {"lr", str(lr)},
        {"ema_alpha", str(ema_alpha)},
        {"k_views", str(k_views)},
        {"freeze_bn_stats", freeze_bn_stats ? "1" : "0"},
        {"ema_per_step", ema_per_step ? "1" : "0"},
        {"reset_optimizer_per_case", reset_optimizer_per_case ? "1" : "0"},
        {"seed", str(seed)},
    };
  }
};

}  // namespace vista

#endif  // VISTA_CONFIG_HPP_
