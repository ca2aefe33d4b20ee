#include "d2d/config.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace d2d {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, int line, const std::string& text) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ConfigError(key, line, "cannot parse value '" + text + "' for key '" + key + "'" +
                                     (line > 0 ? " at line " + std::to_string(line) : ""));
  return out;
}

std::int64_t parse_int(const std::string& key, int line, const std::string& text) {
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ConfigError(key, line, "cannot parse value '" + text + "' for key '" + key + "'" +
                                     (line > 0 ? " at line " + std::to_string(line) : ""));
  return out;
}

std::uint64_t parse_u64(const std::string& key, int line, const std::string& text) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ConfigError(key, line, "cannot parse value '" + text + "' for key '" + key + "'" +
                                     (line > 0 ? " at line " + std::to_string(line) : ""));
  return out;
}

void set_field(SimConfig& cfg, const std::string& key, const std::string& value, int line) {
  if (key == "K")
    cfg.K = static_cast<int>(parse_int(key, line, value));
  else if (key == "cell_side")
    cfg.cell_side = parse_double(key, line, value);
  else if (key == "r")
    cfg.r = parse_double(key, line, value);
  else if (key == "N_files")
    cfg.N_files = static_cast<int>(parse_int(key, line, value));
  else if (key == "gamma_r")
    cfg.gamma_r = parse_double(key, line, value);
  else if (key == "gamma_c")
    cfg.gamma_c = parse_double(key, line, value);
  else if (key == "v_check_db")
    cfg.v_check_db = parse_double(key, line, value);
  else if (key == "c_s_db")
    cfg.c_s_db = parse_double(key, line, value);
  else if (key == "p_max_dbm")
    cfg.p_max_dbm = parse_double(key, line, value);
  else if (key == "bandwidth_hz")
    cfg.bandwidth_hz = parse_double(key, line, value);
  else if (key == "noise_psd_dbm_hz")
    cfg.noise_psd_dbm_hz = parse_double(key, line, value);
  else if (key == "carrier_hz")
    cfg.carrier_hz = parse_double(key, line, value);
  else if (key == "rng_seed")
    cfg.rng_seed = parse_u64(key, line, value);
  else
    throw ConfigError(key, line, "unknown config key '" + key + "'" +
                                     (line > 0 ? " at line " + std::to_string(line) : ""));
}

void check_range(const SimConfig& cfg, int line) {
  auto fail = [&](const std::string& key, const std::string& why) {
    throw ConfigError(key, line, "out-of-range value for '" + key + "': " + why);
  };
  if (cfg.K < 1) fail("K", "must be >= 1");
  if (!(cfg.cell_side > 0)) fail("cell_side", "must be > 0");
  if (!(cfg.r >= 0)) fail("r", "must be >= 0");
  if (cfg.N_files < 1) fail("N_files", "must be >= 1");
  if (!(cfg.gamma_r >= 0)) fail("gamma_r", "must be >= 0");
  if (!(cfg.gamma_c >= 0)) fail("gamma_c", "must be >= 0");
  if (!(cfg.bandwidth_hz > 0)) fail("bandwidth_hz", "must be > 0");
  if (!(cfg.carrier_hz > 0)) fail("carrier_hz", "must be > 0");
}

std::string fmt_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

void validate(const SimConfig& cfg) {
  try {
    check_range(cfg, 0);
  } catch (const ConfigError& e) {
    throw std::invalid_argument(e.what());
  }
}

SimConfig parse_config_text(const std::string& text) {
  SimConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("", lineno, "expected 'key = value' at line " + std::to_string(lineno));
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    set_field(cfg, key, value, lineno);
  }
  check_range(cfg, 0);
  return cfg;
}

SimConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", 0, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void apply_override(SimConfig& cfg, const std::string& assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError(assignment, 0, "override '" + assignment + "' is not of the form key=value");
  std::string key = trim(assignment.substr(0, eq));
  std::string value = trim(assignment.substr(eq + 1));
  set_field(cfg, key, value, 0);
  check_range(cfg, 0);
}

std::string serialize_config(const SimConfig& cfg) {
  std::ostringstream out;
  out << "K = " << cfg.K << "\n";
  out << "cell_side = " << fmt_double(cfg.cell_side) << "\n";
  out << "r = " << fmt_double(cfg.r) << "\n";
  out << "N_files = " << cfg.N_files << "\n";
  out << "gamma_r = " << fmt_double(cfg.gamma_r) << "\n";
  out << "gamma_c = " << fmt_double(cfg.gamma_c) << "\n";
  out << "v_check_db = " << fmt_double(cfg.v_check_db) << "\n";
  out << "c_s_db = " << fmt_double(cfg.c_s_db) << "\n";
  out << "p_max_dbm = " << fmt_double(cfg.p_max_dbm) << "\n";
  out << "bandwidth_hz = " << fmt_double(cfg.bandwidth_hz) << "\n";
  out << "noise_psd_dbm_hz = " << fmt_double(cfg.noise_psd_dbm_hz) << "\n";
  out << "carrier_hz = " << fmt_double(cfg.carrier_hz) << "\n";
  out << "rng_seed = " << cfg.rng_seed << "\n";
  return out.str();
}

}  // namespace d2d
