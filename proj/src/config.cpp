#include "sunitgap/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "sunitgap/errors.hpp"

namespace sunitgap::config {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string join_u64(const std::vector<std::uint64_t>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

std::string join_u32(const std::vector<std::uint32_t>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

bool parse_bool(const std::string& v, std::size_t line) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw parse_error("config: expected boolean, got '" + v + "'", line);
}

template <typename T>
T parse_uint(const std::string& v, std::size_t line) {
    try {
        std::size_t pos = 0;
        unsigned long long x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return static_cast<T>(x);
    } catch (const std::exception&) {
        throw parse_error("config: expected unsigned integer, got '" + v + "'", line);
    }
}

} // namespace

std::vector<std::uint64_t> parse_prime_list(const std::string& csv) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(parse_uint<std::uint64_t>(item, 0));
    }
    return out;
}

std::vector<std::uint32_t> parse_exp_list(const std::string& csv) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(parse_uint<std::uint32_t>(item, 0));
    }
    return out;
}

RunConfig parse_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw domain_error("config: cannot open " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw parse_error("config: missing '='", lineno);
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        try {
            if (key == "s_primes")
                base.s_primes = parse_prime_list(val);
            else if (key == "t_primes")
                base.t_primes = parse_prime_list(val);
            else if (key == "x_max")
                base.x_max = Int(val);
            else if (key == "exp_max")
                base.exp_max = parse_exp_list(val);
            else if (key == "require_coprime")
                base.require_coprime = parse_bool(val, lineno);
            else if (key == "workers")
                base.workers = parse_uint<unsigned>(val, lineno);
            else if (key == "factor_budget")
                base.factor_budget = parse_uint<std::uint64_t>(val, lineno);
            else if (key == "window_budget")
                base.window_budget = Int(val);
            else if (key == "out")
                base.out = val;
            else
                throw parse_error("config: unknown key '" + key + "'", lineno);
        } catch (const parse_error&) {
            throw;
        } catch (const std::exception&) {
            throw parse_error("config: bad value for '" + key + "'", lineno);
        }
    }
    return base;
}

void apply_env(RunConfig& cfg) {
    if (const char* w = std::getenv("SUNITGAP_WORKERS")) {
        std::string s = trim(w);
        if (!s.empty()) cfg.workers = parse_uint<unsigned>(s, 0);
    }
}

unsigned RunConfig::effective_workers() const {
    if (workers > 0) return workers;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
    std::vector<std::pair<std::string, std::string>> e;
    e.emplace_back("s_primes", join_u64(s_primes));
    e.emplace_back("t_primes", join_u64(t_primes));
    e.emplace_back("x_max", x_max.get_str());
    e.emplace_back("exp_max", join_u32(exp_max));
    e.emplace_back("require_coprime", require_coprime ? "true" : "false");
    e.emplace_back("workers", std::to_string(effective_workers()));
    e.emplace_back("factor_budget", std::to_string(factor_budget));
    e.emplace_back("window_budget", window_budget.get_str());
    e.emplace_back("out", out);
    return e;
}

} // namespace sunitgap::config
