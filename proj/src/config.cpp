#include "lambdadyn/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "lambdadyn/errors.hpp"

namespace lambdadyn {

namespace {

const std::vector<std::string> kParamKeys = {"e1",      "e2",      "e3",       "omega_p",
                                             "omega_c", "rabi_p",  "rabi_c",   "gamma_12",
                                             "gamma_23", "nbar_12", "nbar_23"};

const std::vector<std::string> kRequiredExplicit = {"e1", "e2", "e3", "rabi_p", "rabi_c"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string where(const std::string& key, std::size_t line) {
  if (line == 0) return "'" + key + "' (command line)";
  return "'" + key + "' (line " + std::to_string(line) + ")";
}

[[noreturn]] void fail(const std::string& key, std::size_t line, const std::string& msg) {
  throw ParseError(where(key, line) + ": " + msg, key, line);
}

double to_double(const std::string& key, const ConfigEntry& e) {
  double v = 0.0;
  const char* begin = e.value.data();
  const char* end = begin + e.value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    fail(key, e.line, "expected a number, got \"" + e.value + "\"");
  }
  return v;
}

std::uint64_t to_count(const std::string& key, const ConfigEntry& e) {
  std::uint64_t v = 0;
  const char* begin = e.value.data();
  const char* end = begin + e.value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) {
    fail(key, e.line, "expected a non-negative integer, got \"" + e.value + "\"");
  }
  return v;
}

}  // namespace

double RunConfig::resolved_horizon(double period) const {
  if (horizon) return *horizon;
  return periods.value_or(1.0) * period;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k = {"case",  "delta_omega_p", "delta_omega_c", "order",
                                  "steps_per_period", "periods", "horizon", "drive",
                                  "frame", "out", "observables", "eps_ss", "workers",
                                  "omega_p_range", "omega_c_range", "timestamp"};
    k.insert(k.end(), kParamKeys.begin(), kParamKeys.end());
    return k;
  }();
  return keys;
}

ConfigEntries parse_config_text(std::string_view text) {
  ConfigEntries out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    // strip comments outside quotes
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

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected `key = value`",
                       std::string(line), line_no);
    }
    const std::string key(trim(line.substr(0, eq)));
    std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ParseError("line " + std::to_string(line_no) + ": missing key", "", line_no);
    }
    const auto& keys = config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      fail(key, line_no, "unknown key");
    }
    if (!value.empty() && value.front() == '"') {
      if (value.size() < 2 || value.back() != '"') fail(key, line_no, "unterminated string");
      value = value.substr(1, value.size() - 2);
    }
    if (out.contains(key)) {
      fail(key, line_no, "duplicate key (first set on line " +
                             std::to_string(out.find(key)->second.line) + ")");
    }
    out.emplace(key, ConfigEntry{std::string(value), line_no});
  }
  return out;
}

Axis parse_range(std::string_view parameter, std::string_view text) {
  std::vector<double> parts;
  std::size_t pos = 0;
  while (true) {
    const auto colon = text.find(':', pos);
    const std::string_view piece =
        trim(text.substr(pos, colon == std::string_view::npos ? text.npos : colon - pos));
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (piece.empty() || ec != std::errc() || ptr != piece.data() + piece.size()) {
      throw ArgumentError("range for " + std::string(parameter) + " must be a:b:step, got \"" +
                          std::string(text) + "\"");
    }
    parts.push_back(v);
    if (colon == std::string_view::npos) break;
    pos = colon + 1;
  }
  if (parts.size() != 3) {
    throw ArgumentError("range for " + std::string(parameter) + " must be a:b:step, got \"" +
                        std::string(text) + "\"");
  }
  Axis axis{std::string(parameter), parts[0], parts[1], parts[2]};
  axis.validate();
  return axis;
}

RunConfig resolve_config(const ConfigEntries& entries) {
  RunConfig cfg;
  auto get = [&](const std::string& key) -> const ConfigEntry* {
    const auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };

  if (entries.empty()) {
    throw ParseError(
        "empty configuration: set `case` (A-I, A-II, B-I, B-II, C-I, C-II) or all of "
        "e1, e2, e3, rabi_p, rabi_c",
        "", 0);
  }

  for (const char* k : {"delta_omega_p", "delta_omega_c"}) {
    if (const auto* e = get(k)) {
      (std::string_view(k) == "delta_omega_p" ? cfg.delta_omega_p : cfg.delta_omega_c) =
          to_double(k, *e);
    }
  }

  if (const auto* e = get("case")) {
    for (const auto& k : kParamKeys) {
      if (const auto* c = get(k)) {
        fail(k, c->line,
             "conflicts with preset case \"" + e->value + "\" (line " + std::to_string(e->line) +
                 "); use either a preset or explicit parameters");
      }
    }
    try {
      cfg.params = table_case(e->value);
    } catch (const ArgumentError& ex) {
      fail("case", e->line, ex.what());
    }
    cfg.case_name = e->value;
    cfg.params.omega_p += cfg.delta_omega_p;
    cfg.params.omega_c += cfg.delta_omega_c;
  } else {
    std::string missing;
    for (const auto& k : kRequiredExplicit) {
      if (!get(k)) missing += (missing.empty() ? "" : ", ") + k;
    }
    if (!missing.empty()) {
      throw ParseError("missing required keys: " + missing + " (or set `case`)", missing, 0);
    }
    LambdaParams& p = cfg.params;
    double* fields[] = {&p.e1,       &p.e2,       &p.e3,       &p.omega_p,
                        &p.omega_c,  &p.rabi_p,   &p.rabi_c,   &p.gamma_12,
                        &p.gamma_23, &p.nbar_12,  &p.nbar_23};
    for (std::size_t i = 0; i < kParamKeys.size(); ++i) {
      if (const auto* c = get(kParamKeys[i])) *fields[i] = to_double(kParamKeys[i], *c);
    }
    const auto* wp = get("omega_p");
    const auto* wc = get("omega_c");
    if (wp && cfg.delta_omega_p != 0.0) {
      fail("delta_omega_p", get("delta_omega_p")->line, "cannot be combined with omega_p");
    }
    if (wc && cfg.delta_omega_c != 0.0) {
      fail("delta_omega_c", get("delta_omega_c")->line, "cannot be combined with omega_c");
    }
    if (!wp) p.omega_p = p.e2 - p.e1 + cfg.delta_omega_p;
    if (!wc) p.omega_c = p.e2 - p.e3 + cfg.delta_omega_c;
  }
  try {
    cfg.params.validate();
  } catch (const ArgumentError& ex) {
    const auto* c = get("case");
    fail(c ? "case" : "parameters", c ? c->line : 0, ex.what());
  }

  if (const auto* e = get("order")) {
    const auto v = to_count("order", *e);
    if (v != 4 && v != 6) fail("order", e->line, "must be 4 or 6");
    cfg.order = v == 4 ? MagnusOrder::Order4 : MagnusOrder::Order6;
  }
  if (const auto* e = get("steps_per_period")) {
    const auto v = to_count("steps_per_period", *e);
    if (v == 0 || v > kMaxStepsPerPeriod) {
      fail("steps_per_period", e->line,
           "must be between 1 and " + std::to_string(kMaxStepsPerPeriod));
    }
    cfg.steps_per_period = static_cast<std::size_t>(v);
  }
  const auto* horizon = get("horizon");
  const auto* periods = get("periods");
  if (horizon && periods) {
    fail("horizon", horizon->line, "cannot be combined with periods");
  }
  if (horizon) {
    cfg.horizon = to_double("horizon", *horizon);
    if (*cfg.horizon < 0.0) fail("horizon", horizon->line, "must be non-negative");
  }
  if (periods) {
    cfg.periods = to_double("periods", *periods);
    if (*cfg.periods < 0.0) fail("periods", periods->line, "must be non-negative");
  }
  if (const auto* e = get("drive")) {
    if (e->value == "full") {
      cfg.drive = DriveSelection::Full;
    } else if (e->value == "rwa") {
      cfg.drive = DriveSelection::Rwa;
    } else if (e->value == "both") {
      cfg.drive = DriveSelection::Both;
    } else {
      fail("drive", e->line, "must be full, rwa or both");
    }
  }
  if (const auto* e = get("frame")) {
    if (e->value == "lab") {
      cfg.frame = Frame::Lab;
    } else if (e->value == "rwf" || e->value == "rotating") {
      cfg.frame = Frame::Rotating;
    } else {
      fail("frame", e->line, "must be lab or rwf");
    }
  }
  if (const auto* e = get("out")) cfg.out = e->value;
  if (const auto* e = get("observables")) {
    cfg.observables.clear();
    std::stringstream ss(e->value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::string name(trim(item));
      if (name.empty()) continue;
      try {
        cfg.observables.push_back(observable_from_string(name));
      } catch (const ArgumentError& ex) {
        fail("observables", e->line, ex.what());
      }
    }
    if (cfg.observables.empty()) fail("observables", e->line, "list is empty");
  }
  if (const auto* e = get("eps_ss")) {
    cfg.eps_ss = to_double("eps_ss", *e);
    if (!(cfg.eps_ss > 0.0)) fail("eps_ss", e->line, "must be positive");
  }
  if (const auto* e = get("workers")) {
    const auto v = to_count("workers", *e);
    if (v == 0 || v > 1024) fail("workers", e->line, "must be between 1 and 1024");
    cfg.workers = static_cast<unsigned>(v);
  }
  for (const char* k : {"omega_p_range", "omega_c_range"}) {
    if (const auto* e = get(k)) {
      const std::string parameter = std::string(k) == "omega_p_range" ? "omega_p" : "omega_c";
      try {
        (parameter == "omega_p" ? cfg.omega_p_range : cfg.omega_c_range) =
            parse_range(parameter, e->value);
      } catch (const ArgumentError& ex) {
        fail(k, e->line, ex.what());
      }
    }
  }
  if (const auto* e = get("timestamp")) {
    if (e->value == "true" || e->value == "1") {
      cfg.timestamp = true;
    } else if (e->value == "false" || e->value == "0") {
      cfg.timestamp = false;
    } else {
      fail("timestamp", e->line, "must be true or false");
    }
  }
  return cfg;
}

RunConfig parse_config(std::string_view text, const ConfigEntries& overrides) {
  ConfigEntries entries = parse_config_text(text);
  const auto& keys = config_keys();
  for (const auto& [key, entry] : overrides) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) fail(key, entry.line, "unknown key");
    entries[key] = entry;
  }
  return resolve_config(entries);
}

}  // namespace lambdadyn
