#include "orbit/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace orbit {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

KeyValueConfig KeyValueConfig::parse(const std::string& text) {
    KeyValueConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected `key = value`");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        }
        cfg.set_string(key, value);
    }
    return cfg;
}

std::string KeyValueConfig::serialize(const std::string& header_comment) const {
    std::ostringstream out;
    if (!header_comment.empty()) {
        std::istringstream hc(header_comment);
        std::string line;
        while (std::getline(hc, line)) out << "# " << line << "\n";
    }
    for (const auto& [k, v] : entries_) out << k << " = " << v << "\n";
    return out.str();
}

void KeyValueConfig::save(const std::string& path, const std::string& header_comment) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write config file: " + path);
    out << serialize(header_comment);
}

bool KeyValueConfig::has(const std::string& key) const { return index_.count(key) != 0; }

std::string KeyValueConfig::get_string(const std::string& key) const {
    const auto it = index_.find(key);
    if (it == index_.end()) throw ConfigError("missing config key: " + key);
    return entries_[it->second].second;
}

std::string KeyValueConfig::get_string_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
}

double KeyValueConfig::get_number(const std::string& key) const {
    const std::string raw = get_string(key);
    char* end = nullptr;
    const double v = std::strtod(raw.c_str(), &end);
    if (end == raw.c_str() || *end != '\0') {
        throw ConfigError("config key `" + key + "` is not a number: " + raw);
    }
    return v;
}

double KeyValueConfig::get_number_or(const std::string& key, double fallback) const {
    return has(key) ? get_number(key) : fallback;
}

void KeyValueConfig::set_string(const std::string& key, const std::string& value) {
    const auto it = index_.find(key);
    if (it != index_.end()) {
        entries_[it->second].second = value;
    } else {
        index_[key] = entries_.size();
        entries_.emplace_back(key, value);
    }
}

void KeyValueConfig::set_number(const std::string& key, double value) {
    set_string(key, format_number(value));
}

PhysicalParams physical_params_from_config(const KeyValueConfig& cfg) {
    PhysicalParams p;
    p.alpha_ss = cfg.get_number("alpha_ss");
    p.alpha_sd = cfg.get_number("alpha_sd");
    p.alpha_dd = cfg.get_number("alpha_dd");
    p.beta_ss = cfg.get_number("beta_ss");
    p.beta_sd = cfg.get_number("beta_sd");
    p.beta_dd = cfg.get_number("beta_dd");
    p.delta = cfg.get_number("delta");
    p.m = cfg.get_number("m");
    p.mu = cfg.get_number_or("mu", 0.0);
    p.kappa_ss = cfg.get_number_or("kappa_ss", 0.0);
    p.kappa_sd = cfg.get_number_or("kappa_sd", 0.0);
    p.validate();
    return p;
}

EconParams econ_params_from_config(const KeyValueConfig& cfg) {
    EconParams e;
    e.pi = cfg.get_number("pi");
    e.F = cfg.get_number("F");
    e.r = cfg.get_number("r");
    e.a = cfg.get_number_or("a", 0.0);
    e.b = cfg.get_number_or("b", 0.0);
    e.eta = cfg.get_number_or("eta", 0.0);
    e.gamma0 = cfg.get_number_or("gamma0", 0.0);
    e.gamma1 = cfg.get_number_or("gamma1", 0.0);
    e.gamma2 = cfg.get_number_or("gamma2", 0.0);
    if (cfg.has("x_upper")) e.x_upper = cfg.get_number("x_upper");
    e.validate();
    return e;
}

void physical_params_to_config(const PhysicalParams& p, KeyValueConfig& cfg) {
    cfg.set_number("alpha_ss", p.alpha_ss);
    cfg.set_number("alpha_sd", p.alpha_sd);
    cfg.set_number("alpha_dd", p.alpha_dd);
    cfg.set_number("beta_ss", p.beta_ss);
    cfg.set_number("beta_sd", p.beta_sd);
    cfg.set_number("beta_dd", p.beta_dd);
    cfg.set_number("delta", p.delta);
    cfg.set_number("m", p.m);
    cfg.set_number("mu", p.mu);
    cfg.set_number("kappa_ss", p.kappa_ss);
    cfg.set_number("kappa_sd", p.kappa_sd);
}

void econ_params_to_config(const EconParams& e, KeyValueConfig& cfg) {
    cfg.set_number("pi", e.pi);
    cfg.set_number("F", e.F);
    cfg.set_number("r", e.r);
    cfg.set_number("a", e.a);
    cfg.set_number("b", e.b);
    cfg.set_number("eta", e.eta);
    cfg.set_number("gamma0", e.gamma0);
    cfg.set_number("gamma1", e.gamma1);
    cfg.set_number("gamma2", e.gamma2);
    if (e.capped()) cfg.set_number("x_upper", e.x_upper);
}

}  // namespace orbit
