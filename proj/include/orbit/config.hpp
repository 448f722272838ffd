// config.hpp
//
// Flat key-value config files (`key = value`, `#` comments) used for
// parameter sets and scenarios, plus loaders for the domain types.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbit/core.hpp"

namespace orbit {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class KeyValueConfig {
  public:
    KeyValueConfig() = default;

    static KeyValueConfig load(const std::string& path);
    static KeyValueConfig parse(const std::string& text);
    void save(const std::string& path, const std::string& header_comment = "") const;
    std::string serialize(const std::string& header_comment = "") const;

    bool has(const std::string& key) const;
    double get_number(const std::string& key) const;
    double get_number_or(const std::string& key, double fallback) const;
    std::string get_string(const std::string& key) const;
    std::string get_string_or(const std::string& key, const std::string& fallback) const;

    void set_number(const std::string& key, double value);
    void set_string(const std::string& key, const std::string& value);

    // insertion order preserved for reproducible output
    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  private:
    std::vector<std::pair<std::string, std::string>> entries_;
    std::map<std::string, std::size_t> index_;
};

// Field names match the config keys one to one.
PhysicalParams physical_params_from_config(const KeyValueConfig& cfg);
EconParams econ_params_from_config(const KeyValueConfig& cfg);
void physical_params_to_config(const PhysicalParams& p, KeyValueConfig& cfg);
void econ_params_to_config(const EconParams& e, KeyValueConfig& cfg);

// Full double precision, round-trip safe.
std::string format_number(double v);

}  // namespace orbit
