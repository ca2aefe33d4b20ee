#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "d2d/sim_config.hpp"

namespace d2d {

// Raised on unknown keys, unparsable values and out-of-range values.
// `key` names the field, `line` is 1-based (0 when not from a file).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, int line, const std::string& what)
      : std::runtime_error(what), key_(std::move(key)), line_(line) {}
  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  std::string key_;
  int line_;
};

// Config files are plain `key = value` lines with `#` comments; every key
// is a SimConfig field name. Missing keys keep their defaults.
SimConfig parse_config_text(const std::string& text);
SimConfig parse_config_file(const std::string& path);

// Overrides are `key=value` strings applied on top of `cfg`.
void apply_override(SimConfig& cfg, const std::string& assignment);

// Canonical `key = value` serialization; doubles use the shortest exact
// representation so parse(serialize(cfg)) == cfg bit-for-bit.
std::string serialize_config(const SimConfig& cfg);

}  // namespace d2d
