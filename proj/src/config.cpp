#include "posreal/config.hpp"

#include <cstdlib>
#include <fstream>

#include "posreal/error.hpp"

namespace posreal {

namespace {

std::string strip(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used == v.size()) return d;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::InvalidArgument, "config value for " + key + " is not a number: " + v);
}

long long to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const long long i = std::stoll(v, &used);
        if (used == v.size()) return i;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::InvalidArgument, "config value for " + key + " is not an integer: " + v);
}

}  // namespace

void Config::set(const std::string& raw_key, const std::string& raw_value) {
    const std::string key = strip(raw_key);
    const std::string v = strip(raw_value);
    if (key == "conj_tol") conj_tol = to_double(key, v);
    else if (key == "rem_tol") rem_tol = to_double(key, v);
    else if (key == "feas_tol") feas_tol = to_double(key, v);
    else if (key == "pivot_tol") pivot_tol = to_double(key, v);
    else if (key == "axis_tol") axis_tol = to_double(key, v);
    else if (key == "coprime_tol") coprime_tol = to_double(key, v);
    else if (key == "pos_tol") pos_tol = to_double(key, v);
    else if (key == "angle_tol") angle_tol = to_double(key, v);
    else if (key == "max_denominator") max_denominator = to_int(key, v);
    else if (key == "n_max") n_max = static_cast<int>(to_int(key, v));
    else if (key == "horizon") horizon = static_cast<int>(to_int(key, v));
    else if (key == "threads") threads = static_cast<unsigned>(to_int(key, v));
    else throw Error(ErrorCode::InvalidArgument, "unknown config key: " + key);
}

Config load_config_file(const std::string& path, Config base) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::Io, "cannot open config file " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (strip(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::InvalidArgument, path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        base.set(line.substr(0, eq), line.substr(eq + 1));
    }
    return base;
}

Config load_default_config() {
    if (const char* path = std::getenv("POSREAL_CONFIG"); path && *path) return load_config_file(path);
    return {};
}

}  // namespace posreal
