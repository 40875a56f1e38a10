#include "fanno/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fanno/error.hpp"
#include "fanno/numfmt.hpp"

namespace fanno {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void parse_error(std::string_view field, int line, const std::string& reason) {
  std::ostringstream msg;
  if (line > 0) msg << "line " << line << ": ";
  msg << "field '" << field << "': " << reason;
  throw Error(ErrorKind::ParseError, msg.str());
}

[[noreturn]] void invalid(const std::string& reason) {
  throw Error(ErrorKind::ValidationError, reason);
}

int parse_int(std::string_view text, std::string_view field, int line) {
  int v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    parse_error(field, line, "expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

std::set<std::string> parse_outputs(std::string_view text, int line) {
  static const std::set<std::string> known{"profile", "snapshots", "periodicity", "norms"};
  std::set<std::string> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string item(trim(text.substr(0, comma)));
    if (!item.empty()) {
      if (known.count(item) == 0) parse_error("outputs.which", line, "unknown output '" + item + "'");
      out.insert(item);
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

double parse_number(std::string_view text, std::string_view field, int line) {
  double v = 0.0;
  const char* begin = text.data();
  if (!text.empty() && text.front() == '+') ++begin;
  const auto res = std::from_chars(begin, text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
    parse_error(field, line, "expected a finite number, got '" + std::string(text) + "'");
  }
  return v;
}

void assign_config_key(ScenarioConfig& cfg, std::string_view key, std::string_view value,
                       int line) {
  auto num = [&] { return parse_number(value, key, line); };
  if (key == "gas.gamma") cfg.gamma = num();
  else if (key == "gas.alpha") cfg.alpha = num();
  else if (key == "gas.beta") cfg.beta = num();
  else if (key == "upstream.c_minus") cfg.c_minus = num();
  else if (key == "upstream.rho_minus") cfg.rho_minus = num();
  else if (key == "upstream.u_minus") cfg.u_minus = num();
  else if (key == "duct.length") cfg.length = num();
  else if (key == "grid.nx") cfg.nx = parse_int(value, key, line);
  else if (key == "grid.cfl") cfg.cfl = num();
  else if (key == "boundary.period") cfg.period = num();
  else if (key == "boundary.epsilon") cfg.epsilon = num();
  else if (key == "boundary.shape") {
    const auto s = parse_shape(value);
    if (!s) parse_error(key, line, "shape must be bump or sine-ramp");
    cfg.shape = *s;
  } else if (key == "sim.t_end") {
    if (value == "auto") cfg.t_end.reset();
    else cfg.t_end = num();
  } else if (key == "sim.snapshot_every") cfg.snapshot_every = num();
  else if (key == "sim.t_check") {
    if (value == "auto") cfg.t_check.reset();
    else cfg.t_check = num();
  } else if (key == "outputs.directory") {
    if (value.empty()) parse_error(key, line, "directory must not be empty");
    cfg.out_dir = std::string(value);
  } else if (key == "outputs.which") cfg.outputs = parse_outputs(value, line);
  else parse_error(key, line, "unknown key");
}

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig cfg;
  static const char* required[] = {"gas.gamma",       "gas.alpha",        "gas.beta",
                                   "upstream.u_minus", "duct.length",     "boundary.period",
                                   "boundary.epsilon", "sim.t_end"};
  std::set<std::string> seen;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      parse_error(line, line_no, "expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.insert(std::string(key)).second) parse_error(key, line_no, "duplicate key");
    if (value.empty()) parse_error(key, line_no, "missing value");
    assign_config_key(cfg, key, value, line_no);
  }
  for (const char* key : required) {
    if (seen.count(key) == 0) parse_error(key, 0, "required key is missing");
  }
  if (seen.count("upstream.c_minus") + seen.count("upstream.rho_minus") == 0) {
    parse_error("upstream.c_minus", 0, "one of upstream.c_minus or upstream.rho_minus is required");
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::ParseError, "cannot read config file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

GasParams ScenarioConfig::gas() const { return GasParams::make(gamma, alpha, beta); }

UpstreamState ScenarioConfig::upstream() const {
  const GasParams g = gas();
  if (c_minus) return UpstreamState::make(*c_minus, u_minus);
  return UpstreamState::from_density(g, rho_minus.value_or(0.0), u_minus);
}

Grid1D ScenarioConfig::grid() const { return Grid1D::make(length, nx, cfl); }

void ScenarioConfig::validate() const {
  if (!(gamma > 1.0)) invalid("gamma must exceed 1");
  if (c_minus && rho_minus) invalid("give exactly one of upstream.c_minus and upstream.rho_minus");
  if (!c_minus && !rho_minus) invalid("one of upstream.c_minus or upstream.rho_minus is required");
  if (c_minus && !(*c_minus > 0.0)) invalid("c_minus must be positive");
  if (rho_minus && !(*rho_minus > 0.0)) invalid("rho_minus must be positive");
  if (!(u_minus > 0.0)) invalid("u_minus must be positive");
  if (!(length > 0.0)) invalid("length must be positive");
  if (nx < Grid1D::kMinPoints) invalid("nx must be at least 8");
  if (!(cfl > 0.0 && cfl <= 1.0)) invalid("cfl must lie in (0, 1]");
  if (!(period > 0.0)) invalid("period must be positive");
  if (!(epsilon >= 0.0)) invalid("epsilon must be non-negative");
  if (t_end && !(*t_end >= 0.0)) invalid("t_end must be non-negative");
  if (snapshot_every && !(*snapshot_every > 0.0)) invalid("snapshot_every must be positive");
  if (t_check && !(*t_check >= 0.0)) invalid("t_check must be non-negative");
  try {
    (void)upstream();
  } catch (const Error& e) {
    invalid(e.what());
  }
}

std::string render_config(const ScenarioConfig& cfg) {
  std::ostringstream out;
  out << "gas.gamma=" << format_double(cfg.gamma) << '\n'
      << "gas.alpha=" << format_double(cfg.alpha) << '\n'
      << "gas.beta=" << format_double(cfg.beta) << '\n';
  if (cfg.c_minus) out << "upstream.c_minus=" << format_double(*cfg.c_minus) << '\n';
  if (cfg.rho_minus) out << "upstream.rho_minus=" << format_double(*cfg.rho_minus) << '\n';
  out << "upstream.u_minus=" << format_double(cfg.u_minus) << '\n'
      << "duct.length=" << format_double(cfg.length) << '\n'
      << "grid.nx=" << cfg.nx << '\n'
      << "grid.cfl=" << format_double(cfg.cfl) << '\n'
      << "boundary.period=" << format_double(cfg.period) << '\n'
      << "boundary.epsilon=" << format_double(cfg.epsilon) << '\n'
      << "boundary.shape=" << to_string(cfg.shape) << '\n'
      << "sim.t_end=" << (cfg.t_end ? format_double(*cfg.t_end) : std::string("auto")) << '\n'
      << "sim.snapshot_every=" << format_double(cfg.snapshot_cadence()) << '\n'
      << "sim.t_check=" << (cfg.t_check ? format_double(*cfg.t_check) : std::string("auto"))
      << '\n'
      << "outputs.directory=" << cfg.out_dir << '\n'
      << "outputs.which=";
  bool first = true;
  for (const auto& o : cfg.outputs) {
    out << (first ? "" : ",") << o;
    first = false;
  }
  out << '\n';
  return out.str();
}

}  // namespace fanno
