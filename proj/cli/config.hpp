#pragma once

#include <map>
#include <string>
#include <vector>

#include "unicrit/map.hpp"
#include "unicrit/preimage.hpp"

namespace unicrit::cli {

// Flat key = value configuration: optional file, then command-line overrides.
// Keys are dotted lowercase strings; values parse on demand.
class Config {
public:
    Config() = default;

    static Config from_file(const std::string& path);

    void set(const std::string& key, const std::string& value);
    // "key=value" as passed to --set
    void apply_override(const std::string& assignment);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_double_list(const std::string& key) const;

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

UnicriticalMap resolve_map(const Config& config);
TreeOptions resolve_tree_options(const Config& config);

// t.values (comma list) or t.min / t.max / t.count; must be strictly
// increasing and non-empty.
std::vector<double> resolve_t_grid(const Config& config);

// delta.max / delta.count / delta.ratio geometric grid.
std::vector<double> resolve_delta_grid(const Config& config);

// Reference text for --help and the bundled configs/reference.conf.
std::string config_key_reference();

}  // namespace unicrit::cli
