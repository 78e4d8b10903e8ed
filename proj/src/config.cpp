#include "plap/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "plap/errors.hpp"

namespace plap {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& msg) { fail(ErrKind::config_error, msg); }

} // namespace

bool Config::has(const std::string& key) const { return values.count(key) != 0; }

std::string Config::get_string(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) bad(source + ": missing key '" + key + "'");
    return it->second;
}

double Config::get_real(const std::string& key) const {
    const std::string raw = get_string(key);
    const char* begin = raw.c_str();
    char* end = nullptr;
    double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        bad(source + ": key '" + key + "' expects a real value, got '" + raw + "'");
    return value;
}

long Config::get_int(const std::string& key) const {
    const std::string raw = get_string(key);
    const char* begin = raw.c_str();
    char* end = nullptr;
    long value = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0')
        bad(source + ": key '" + key + "' expects an integer, got '" + raw + "'");
    return value;
}

void Config::set(const std::string& key, const std::string& value) {
    values[key] = value;
    lines[key] = 0;
}

Config parse_config_text(const std::string& text, const std::string& source_name) {
    Config c;
    c.source = source_name;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const size_t eq = body.find('=');
        if (eq == std::string::npos)
            bad(source_name + ": line " + std::to_string(lineno) + " is not 'key = value'");
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (key.empty())
            bad(source_name + ": line " + std::to_string(lineno) + " has an empty key");
        if (c.values.count(key))
            bad(source_name + ": duplicate key '" + key + "' at line " + std::to_string(lineno) +
                " (first set at line " + std::to_string(c.lines[key]) + ")");
        c.values[key] = value;
        c.lines[key] = lineno;
    }
    return c;
}

Config parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

void require_keys(const Config& c, const std::vector<std::string>& required) {
    std::string missing;
    for (const auto& key : required) {
        if (!c.has(key)) missing += missing.empty() ? key : ", " + key;
    }
    if (!missing.empty()) bad(c.source + ": missing required keys: " + missing);
}

void restrict_keys(const Config& c, const std::vector<std::string>& known) {
    for (const auto& [key, value] : c.values) {
        (void)value;
        if (std::find(known.begin(), known.end(), key) == known.end())
            bad(c.source + ": unknown key '" + key + "' (line " +
                std::to_string(c.lines.at(key)) + ")");
    }
}

} // namespace plap
