#include "orbit/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace orbit {

std::string text_hash(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["tool_version"] = kToolVersion;
    j["subcommand"] = subcommand;
    j["scenario_hash"] = scenario_hash;
    j["seed"] = seed;
    j["jobs"] = jobs;
    j["duration_seconds"] = duration_seconds;
    nlohmann::ordered_json ov = nlohmann::ordered_json::object();
    for (const auto& [k, v] : overrides) ov[k] = v;
    j["overrides"] = ov;
    nlohmann::ordered_json ex = nlohmann::ordered_json::object();
    for (const auto& [k, v] : extra) ex[k] = v;
    j["parameters"] = ex;
    return j.dump(2);
}

void RunManifest::write(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write manifest: " + path);
    out << to_json() << "\n";
}

}  // namespace orbit
