// manifest.hpp
//
// Per-run provenance: subcommand, scenario hash, overrides, seed, version,
// wall-clock duration. Identical manifests imply byte-identical CSV bodies.

#pragma once

#include <string>
#include <vector>

namespace orbit {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunManifest {
    std::string subcommand;
    std::string scenario_hash;  // FNV-1a of the resolved scenario config text
    std::vector<std::pair<std::string, std::string>> overrides;
    unsigned long long seed = 0;
    int jobs = 1;
    double duration_seconds = 0.0;
    std::vector<std::pair<std::string, std::string>> extra;  // rule params, grid spec, ...

    std::string to_json() const;
    void write(const std::string& path) const;
};

std::string text_hash(const std::string& text);

}  // namespace orbit
