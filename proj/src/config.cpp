#include "pvfilter/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "pvfilter/errors.hpp"

namespace pvfilter {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string quoted(std::string_view key, std::string_view value) {
  return std::string(key) + " = '" + std::string(value) + "'";
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("not a number: " + quoted(key, text));
  }
  return v;
}

long long parse_int(std::string_view key, std::string_view text) {
  text = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("not an integer: " + quoted(key, text));
  }
  return v;
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text.size() >= 2 && text.front() == '[' && text.back() == ']') {
    text = text.substr(1, text.size() - 2);
  }
  if (trim(text).empty()) return {};
  std::vector<double> out;
  for (std::string_view item : split(text, ',')) out.push_back(parse_double(key, item));
  return out;
}

}  // namespace

std::vector<double> RunConfig::tau_grid() const {
  std::vector<double> taus;
  if (tau_steps <= 0) return taus;
  if (tau_steps == 1) return {tau_min};
  taus.reserve(static_cast<std::size_t>(tau_steps));
  const double h = (tau_max - tau_min) / static_cast<double>(tau_steps - 1);
  for (long long i = 0; i < tau_steps; ++i) taus.push_back(tau_min + h * static_cast<double>(i));
  taus.back() = tau_max;
  return taus;
}

std::vector<DiagramSpec> parse_diagrams(std::string_view text) {
  std::vector<DiagramSpec> out;
  for (std::string_view entry : split(text, ';')) {
    if (entry.empty()) continue;
    const auto colon = entry.find(':');
    if (colon == std::string_view::npos) {
      throw ConfigError("diagram needs name:L,F,B, got '" + std::string(entry) + "'");
    }
    const std::string_view name = trim(entry.substr(0, colon));
    const auto counts = split(entry.substr(colon + 1), ',');
    if (name.empty() || counts.size() != 3) {
      throw ConfigError("diagram needs name:L,F,B, got '" + std::string(entry) + "'");
    }
    DiagramSpec d;
    d.name = std::string(name);
    d.loops = static_cast<int>(parse_int("diagrams", counts[0]));
    d.fermion_internal = static_cast<int>(parse_int("diagrams", counts[1]));
    d.photon_internal = static_cast<int>(parse_int("diagrams", counts[2]));
    out.push_back(d);
  }
  if (out.empty()) throw ConfigError("empty diagram list");
  return out;
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  try {
    if (key == "masses") {
      c.masses = parse_list(key, value);
    } else if (key == "contour") {
      c.contour = parse_contour(value);
    } else if (key == "tau_min") {
      c.tau_min = parse_double(key, value);
    } else if (key == "tau_max") {
      c.tau_max = parse_double(key, value);
    } else if (key == "tau_steps") {
      c.tau_steps = parse_int(key, value);
    } else if (key == "omega0") {
      c.omega0 = parse_double(key, value);
    } else if (key == "omega1") {
      c.omega1 = parse_double(key, value);
    } else if (key == "v0") {
      c.v0 = parse_double(key, value);
    } else if (key == "pulse_T") {
      c.pulse_T = parse_double(key, value);
    } else if (key == "n_max") {
      c.n_max = parse_int(key, value);
    } else if (key == "ode_step") {
      c.ode_step = parse_double(key, value);
    } else if (key == "diagrams") {
      c.diagrams = parse_diagrams(value);
    } else if (key == "tol") {
      c.tol = parse_double(key, value);
    } else {
      throw ConfigError("unknown key '" + std::string(key) + "'");
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

RunConfig parse_config(std::string_view text, RunConfig base) {
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = trim(line.substr(0, hash));
    }
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key(trim(line.substr(0, eq)));
    if (!seen.insert(key).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    apply_setting(base, key, line.substr(eq + 1));
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(base));
}

}  // namespace pvfilter
