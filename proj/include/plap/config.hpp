#pragma once

#include <map>
#include <string>
#include <vector>

namespace plap {

// Flat key = value store read from a config file. Values stay raw strings
// until a typed getter converts them; conversion failures name the key and
// the expected type.
struct Config {
    std::map<std::string, std::string> values;
    std::map<std::string, int> lines; // 0 for programmatic overrides
    std::string source;

    bool has(const std::string& key) const;
    double get_real(const std::string& key) const;
    long get_int(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    // flag override: replaces any file value
    void set(const std::string& key, const std::string& value);
};

// Accepts `key = value` lines, blank lines and `#` comments. Rejects
// duplicate keys and malformed lines, naming the line number.
Config parse_config(const std::string& path);
Config parse_config_text(const std::string& text, const std::string& source_name);

// Errors listing every missing key at once.
void require_keys(const Config& c, const std::vector<std::string>& required);
// Rejects keys outside the known set, naming the first offender and its line.
void restrict_keys(const Config& c, const std::vector<std::string>& known);

} // namespace plap
