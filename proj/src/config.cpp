#include "zenoqed/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace zenoqed {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last) {
    throw ConfigError("config: key '" + key + "' has malformed number '" + value + "'");
  }
  return out;
}

int parse_int(const std::string& key, const std::string& value) {
  int out = 0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last) {
    throw ConfigError("config: key '" + key + "' has malformed integer '" + value + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("config: key '" + key + "' expects true/false");
}

AxisSpec parse_axis(const std::string& name, const std::string& value) {
  std::istringstream in(value);
  std::string min_s, max_s, count_s, scale = "linear";
  if (!(in >> min_s >> max_s >> count_s)) {
    throw ConfigError("config: axis '" + name + "' needs 'min max count [linear|log]'");
  }
  in >> scale;
  std::string rest;
  if (in >> rest) {
    throw ConfigError("config: axis '" + name + "' has trailing tokens");
  }
  AxisSpec axis;
  axis.name = name;
  axis.min = parse_double(name, min_s);
  axis.max = parse_double(name, max_s);
  axis.count = parse_int(name, count_s);
  if (scale == "log") {
    axis.log_scale = true;
  } else if (scale != "linear") {
    throw ConfigError("config: axis '" + name + "' scale must be linear or log");
  }
  return axis;
}

bool is_rate_axis(const std::string& name) {
  return name == "g" || name == "g1" || name == "g2" || name == "omega" ||
         name == "omega1" || name == "omega2" || name == "delta" || name == "kappa" ||
         name == "gamma" || name == "lambda";
}

}  // namespace

double RunConfig::time_to_ns() const {
  if (!g_ghz) throw ConfigError("time_to_ns: no g_GHz reference configured");
  // t is in units of 1/g with g angular; g_ang = 2*pi*g_GHz 1/ns.
  return 1.0 / (2.0 * std::numbers::pi * *g_ghz);
}

RunConfig default_config() {
  RunConfig cfg;
  cfg.params.g1 = cfg.params.g2 = 1.0;
  cfg.params.omega1 = cfg.params.omega2 = 0.05;
  cfg.params.delta = 0.5;
  return cfg;
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg = default_config();
  bool in_axes = false;
  std::optional<double> alpha_re, alpha_im, beta_re, beta_im, r;

  std::istringstream lines(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(lines, raw)) {
    ++lineno;
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line == "[axes]") {
        in_axes = true;
        continue;
      }
      throw ConfigError("config line " + std::to_string(lineno) + ": unknown section " + line);
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
    }

    if (in_axes) {
      cfg.axes.push_back(parse_axis(key, value));
      continue;
    }

    SystemParams& p = cfg.params;
    if (key == "g") {
      p.g1 = p.g2 = parse_double(key, value);
    } else if (key == "g1") {
      p.g1 = parse_double(key, value);
    } else if (key == "g2") {
      p.g2 = parse_double(key, value);
    } else if (key == "omega") {
      p.omega1 = p.omega2 = parse_double(key, value);
    } else if (key == "omega1") {
      p.omega1 = parse_double(key, value);
    } else if (key == "omega2") {
      p.omega2 = parse_double(key, value);
    } else if (key == "phi1") {
      p.phi1 = parse_double(key, value);
    } else if (key == "phi2") {
      p.phi2 = parse_double(key, value);
    } else if (key == "delta") {
      p.delta = parse_double(key, value);
    } else if (key == "kappa") {
      p.kappa = parse_double(key, value);
    } else if (key == "gamma") {
      p.gamma = parse_double(key, value);
    } else if (key == "n_max") {
      p.n_max = parse_int(key, value);
    } else if (key == "g_GHz") {
      cfg.g_ghz = parse_double(key, value);
      if (*cfg.g_ghz <= 0.0) throw ConfigError("config: g_GHz must be positive");
    } else if (key == "protocol") {
      if (value != "qst" && value != "cpg" && value != "concurrence" && value != "compare") {
        throw ConfigError("config: unknown protocol '" + value + "'");
      }
      cfg.protocol.name = value;
    } else if (key == "model") {
      try {
        cfg.protocol.model = parse_model(value);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
      }
    } else if (key == "alpha_re") {
      alpha_re = parse_double(key, value);
    } else if (key == "alpha_im") {
      alpha_im = parse_double(key, value);
    } else if (key == "beta_re") {
      beta_re = parse_double(key, value);
    } else if (key == "beta_im") {
      beta_im = parse_double(key, value);
    } else if (key == "r") {
      r = parse_double(key, value);
    } else if (key == "t") {
      cfg.protocol.t = parse_double(key, value);
    } else if (key == "delta_t_frac") {
      cfg.protocol.delta_t_frac = parse_double(key, value);
    } else if (key == "compensate") {
      cfg.protocol.compensate = parse_bool(key, value);
    } else if (key == "window_lo") {
      cfg.protocol.window_lo = parse_double(key, value);
    } else if (key == "window_hi") {
      cfg.protocol.window_hi = parse_double(key, value);
    } else if (key == "t_end") {
      cfg.protocol.t_end = parse_double(key, value);
    } else if (key == "t_max") {
      cfg.t_max = parse_double(key, value);
    } else if (key == "t_count") {
      cfg.t_count = parse_int(key, value);
      if (cfg.t_count < 2) throw ConfigError("config: t_count must be >= 2");
    } else if (key == "metrics") {
      std::istringstream in(value);
      std::string m;
      cfg.metrics.clear();
      while (in >> m) cfg.metrics.push_back(m);
    } else if (key == "format") {
      if (value != "csv" && value != "json") {
        throw ConfigError("config: format must be csv or json");
      }
      cfg.output.format = value;
    } else if (key == "out") {
      cfg.output.destination = value;
    } else if (key == "precision") {
      cfg.output.precision = parse_int(key, value);
      if (cfg.output.precision < 6 || cfg.output.precision > 17) {
        throw ConfigError("config: precision must be in [6, 17]");
      }
    } else if (key == "run_id") {
      cfg.output.run_id = value;
    } else if (key == "workers") {
      cfg.workers = parse_int(key, value);
      if (cfg.workers < 0) throw ConfigError("config: workers must be >= 0");
    } else {
      throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key +
                        "'");
    }
  }

  // weights
  if (r && (alpha_re || alpha_im || beta_re || beta_im)) {
    throw ConfigError("config: give either r or alpha/beta components, not both");
  }
  if (r) {
    cfg.protocol.r = *r;
    const EntanglementParams ep = EntanglementParams::from_ratio(*r, 1.0);
    cfg.protocol.alpha = ep.alpha;
    cfg.protocol.beta = ep.beta;
  } else if (alpha_re || alpha_im || beta_re || beta_im) {
    const Complex alpha(alpha_re.value_or(0.0), alpha_im.value_or(0.0));
    const Complex beta(beta_re.value_or(0.0), beta_im.value_or(0.0));
    const double nrm = std::sqrt(std::norm(alpha) + std::norm(beta));
    if (nrm == 0.0) throw ConfigError("config: alpha and beta are both zero");
    cfg.protocol.alpha = alpha / nrm;
    cfg.protocol.beta = beta / nrm;
    if (std::abs(beta) > 0.0 && std::abs(alpha.imag()) < 1e-15 &&
        std::abs(beta.imag()) < 1e-15) {
      cfg.protocol.r = (alpha / beta).real();
    }
  }

  // physical-units normalization
  if (cfg.g_ghz) {
    const double g = *cfg.g_ghz;
    SystemParams& p = cfg.params;
    p.g1 /= g;
    p.g2 /= g;
    p.omega1 /= g;
    p.omega2 /= g;
    p.delta /= g;
    p.kappa /= g;
    p.gamma /= g;
    for (AxisSpec& axis : cfg.axes) {
      if (is_rate_axis(axis.name)) {
        axis.min /= g;
        axis.max /= g;
      }
    }
  }

  try {
    cfg.params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

}  // namespace zenoqed
