#include "vessel1d/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace vessel1d {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

/// Strips one level of double quotes; quoted values keep inner whitespace.
std::string unquote(std::string_view s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    return std::string(s.substr(1, s.size() - 2));
  }
  return std::string(s);
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string_view sv = trim(text);
  double value = 0.0;
  const char* begin = sv.data();
  const char* end = sv.data() + sv.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || sv.empty()) {
    throw ConfigError(key + ": expected a number, got '" + text + "'");
  }
  return value;
}

int parse_int(const std::string& key, const std::string& text) {
  const std::string_view sv = trim(text);
  int value = 0;
  auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), value);
  if (ec != std::errc{} || ptr != sv.data() + sv.size() || sv.empty()) {
    throw ConfigError(key + ": expected an integer, got '" + text + "'");
  }
  return value;
}

Expr parse_expression(const std::string& key, const std::string& text) {
  try {
    return parse_expr(text);
  } catch (const ParseError& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

const std::string* find(const std::map<std::string, std::string>& section,
                        const std::string& key) {
  auto it = section.find(key);
  return it == section.end() ? nullptr : &it->second;
}

}  // namespace

ConfigData ConfigData::parse_text(std::string_view text, std::string_view origin) {
  ConfigData data;
  std::map<std::string, std::string>* section = nullptr;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    // Comments start with '#' outside quotes.
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line = line.substr(0, i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) +
                          ": malformed section header");
      }
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (name == "scenario") {
        section = &data.scenario;
      } else if (name == "numerics") {
        section = &data.numerics;
      } else if (name == "output") {
        section = &data.output;
      } else {
        throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) +
                          ": unknown section [" + name + "]");
      }
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    if (!section) {
      throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) +
                        ": key outside of any section");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value = unquote(trim(line.substr(eq + 1)));
    if (key.empty()) {
      throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) + ": empty key");
    }
    (*section)[key] = value;
  }
  return data;
}

ConfigData ConfigData::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str(), path.string());
}

std::vector<double> default_output_times(double t_end, double dt) {
  std::vector<double> times;
  const auto total = static_cast<std::int64_t>(std::llround(t_end / dt));
  for (int i = 1; i <= 10; ++i) {
    const auto k = static_cast<std::int64_t>(std::llround(t_end * i / 10.0 / dt));
    if (k < 1 || k > total) continue;
    const double t = static_cast<double>(k) * dt;
    if (times.empty() || times.back() < t) times.push_back(t);
  }
  return times;
}

RunConfig resolve_config(const ConfigData& data) {
  RunConfig config;

  const std::string* catalog_name = find(data.scenario, "catalog");
  const bool has_inline = find(data.scenario, "f") != nullptr;
  if (!catalog_name && !has_inline) {
    throw ConfigError("scenario: give either 'catalog = NAME' or an inline 'f = ...'");
  }

  if (catalog_name) {
    try {
      config.scenario = catalog_get(*catalog_name);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("scenario.catalog: ") + e.what());
    }
  } else {
    config.scenario.name = "custom";
    config.scenario.g = parse_expr("0");
    config.scenario.beta = parse_expr("1");
    config.scenario.t_end = 0.0;  // must be provided below
  }

  for (const auto& [key, value] : data.scenario) {
    if (key == "catalog") continue;
    if (key == "name") {
      config.scenario.name = value;
    } else if (key == "f") {
      config.scenario.f = parse_expression("scenario.f", value);
    } else if (key == "g") {
      config.scenario.g = parse_expression("scenario.g", value);
    } else if (key == "beta") {
      config.scenario.beta = parse_expression("scenario.beta", value);
    } else if (key == "mu") {
      config.scenario.mu = parse_double("scenario.mu", value);
    } else if (key == "t_end") {
      config.scenario.t_end = parse_double("scenario.t_end", value);
    } else if (key == "notes") {
      config.scenario.notes = value;
    } else {
      throw ConfigError("scenario." + key + ": unknown key");
    }
  }
  if (!(config.scenario.t_end > 0)) {
    throw ConfigError("scenario.t_end: required and must be > 0");
  }
  try {
    config.scenario.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }

  for (const auto& [key, value] : data.numerics) {
    if (key == "n") {
      config.n = parse_int("numerics.n", value);
    } else if (key == "dt") {
      config.dt = parse_double("numerics.dt", value);
    } else if (key == "grad_tolerance") {
      config.controls.grad_tolerance = parse_double("numerics.grad_tolerance", value);
    } else if (key == "steady_tolerance") {
      config.controls.steady_tolerance = parse_double("numerics.steady_tolerance", value);
    } else if (key == "blowup_threshold") {
      config.controls.blowup_threshold = parse_double("numerics.blowup_threshold", value);
    } else {
      throw ConfigError("numerics." + key + ": unknown key");
    }
  }
  if (config.n < 2) throw ConfigError("numerics.n: need at least 2 subintervals");
  if (!(config.dt > 0)) throw ConfigError("numerics.dt: must be > 0");

  for (const auto& [key, value] : data.output) {
    if (key == "dir") {
      config.out_dir = value;
    } else if (key == "times") {
      config.output_times.clear();
      std::string_view rest = value;
      while (!rest.empty()) {
        const std::size_t comma = rest.find(',');
        const std::string item(trim(rest.substr(0, comma)));
        if (!item.empty()) {
          config.output_times.push_back(parse_double("output.times", item));
        }
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
      }
    } else {
      throw ConfigError("output." + key + ": unknown key");
    }
  }

  if (config.output_times.empty()) {
    config.output_times = default_output_times(config.scenario.t_end, config.dt);
  }

  // Validate output times against the dt grid here so config errors surface
  // before any stepping happens.
  const auto total = static_cast<std::int64_t>(std::llround(config.scenario.t_end / config.dt));
  for (double t : config.output_times) {
    const double ratio = t / config.dt;
    const auto k = static_cast<std::int64_t>(std::llround(ratio));
    if (std::fabs(static_cast<double>(k) - ratio) > 1e-9 * std::max(1.0, std::fabs(ratio)) ||
        k < 0 || k > total) {
      std::ostringstream os;
      os << "output.times: " << t << " is not a multiple of dt inside [0, t_end]";
      throw ConfigError(os.str());
    }
  }
  std::sort(config.output_times.begin(), config.output_times.end());
  config.output_times.erase(
      std::unique(config.output_times.begin(), config.output_times.end()),
      config.output_times.end());

  return config;
}

void substitute_parameter(ConfigData& data, const std::string& name, double value) {
  if (name == "mu" || name == "t_end") {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    data.scenario[name] = std::string(buf, ptr);
    return;
  }
  if (name == "n" || name == "dt") {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    data.numerics[name] = std::string(buf, ptr);
    return;
  }

  const std::string placeholder = "{" + name + "}";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  const std::string replacement(buf, ptr);

  bool found = false;
  for (const char* key : {"f", "g", "beta"}) {
    auto it = data.scenario.find(key);
    if (it == data.scenario.end()) continue;
    std::string& text = it->second;
    std::size_t pos = 0;
    while ((pos = text.find(placeholder, pos)) != std::string::npos) {
      text.replace(pos, placeholder.size(), replacement);
      pos += replacement.size();
      found = true;
    }
  }
  if (!found) {
    throw ConfigError("sweep parameter '" + name +
                      "' matches no placeholder and no scalar field (mu, t_end, n, dt)");
  }
}

}  // namespace vessel1d
