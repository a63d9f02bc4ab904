#include "config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "unicrit/presets.hpp"
#include "unicrit/pullback.hpp"

namespace unicrit::cli {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double x = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return x;
    } catch (const std::exception&) {
        throw UsageError("config key '" + key + "' expects a number, got '" +
                         value + "'");
    }
}

}  // namespace

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file '" + path + "'");
    Config config;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string text = trim(line);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw UsageError(path + ":" + std::to_string(line_no) +
                             ": expected 'key = value'");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty())
            throw UsageError(path + ":" + std::to_string(line_no) +
                             ": empty key");
        config.set(key, value);
    }
    return config;
}

void Config::set(const std::string& key, const std::string& value) {
    values_[key] = value;
}

void Config::apply_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw UsageError("override '" + assignment + "' must be key=value");
    const std::string key = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));
    if (key.empty()) throw UsageError("override has an empty key");
    set(key, value);
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    return parse_double(key, it->second);
}

int Config::get_int(const std::string& key, int fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    int out = 0;
    const char* begin = it->second.data();
    const char* end = begin + it->second.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end)
        throw UsageError("config key '" + key + "' expects an integer, got '" +
                         it->second + "'");
    return out;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string& v = it->second;
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw UsageError("config key '" + key + "' expects a boolean, got '" + v + "'");
}

std::vector<double> Config::get_double_list(const std::string& key) const {
    std::vector<double> out;
    const auto it = values_.find(key);
    if (it == values_.end()) return out;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string text = trim(item);
        if (text.empty()) continue;
        out.push_back(parse_double(key, text));
    }
    return out;
}

UnicriticalMap resolve_map(const Config& config) {
    const std::string preset = config.get_string("map.preset", "chebyshev");
    if (preset == "custom") {
        const int degree = config.get_int("map.degree", 2);
        const double re = config.get_double("map.c_re", 0.0);
        const double im = config.get_double("map.c_im", 0.0);
        return UnicriticalMap(degree, Complex{re, im});
    }
    return preset_map(preset);
}

TreeOptions resolve_tree_options(const Config& config) {
    TreeOptions opts;
    const int budget = config.get_int("tree.budget", 1 << 22);
    if (budget < 1) throw UsageError("tree.budget must be positive");
    opts.node_budget = static_cast<std::uint64_t>(budget);
    const int threads = config.get_int("threads", 1);
    if (threads < 1) throw UsageError("threads must be positive");
    opts.threads = static_cast<unsigned>(threads);
    return opts;
}

std::vector<double> resolve_t_grid(const Config& config) {
    std::vector<double> grid = config.get_double_list("t.values");
    if (grid.empty()) {
        const double lo = config.get_double("t.min", 0.5);
        const double hi = config.get_double("t.max", 2.0);
        const int count = config.get_int("t.count", 7);
        if (count < 1) throw UsageError("t.count must be >= 1");
        if (count == 1) {
            grid.push_back(lo);
        } else {
            for (int i = 0; i < count; ++i)
                grid.push_back(lo + (hi - lo) * i / (count - 1));
        }
    }
    if (grid.empty()) throw UsageError("t grid is empty");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            throw UsageError("t grid must be strictly increasing");
    for (double t : grid)
        if (!(t > 0.0)) throw UsageError("t grid values must be positive");
    return grid;
}

std::vector<double> resolve_delta_grid(const Config& config) {
    const double delta0 = config.get_double("delta.max", 1.0);
    const int count = config.get_int("delta.count", 40);
    const double ratio = config.get_double("delta.ratio", 2.0);
    return geometric_grid(delta0, count, ratio);
}

std::string config_key_reference() {
    return R"(configuration keys (key = value per line, # starts a comment):
  map.preset        chebyshev | basilica | feigenbaum | custom   [chebyshev]
  map.degree        integer d >= 2 (custom preset only)          [2]
  map.c_re          real part of c (custom preset only)          [0]
  map.c_im          imaginary part of c (custom preset only)     [0]
  depth.series      truncation depth for poincare/forward        [12]
  depth.orbit       orbit scan depth                             [512]
  tree.budget       preimage-tree node budget                    [4194304]
  tree.prune        true for pruned Poincare mode                [false]
  tree.prune_floor  term floor in pruned mode                    [1e-18]
  threads           worker threads                               [1]
  seed              seed for sampled diagnostics                 [12345]
  t.values          comma list of exponents (overrides t.min..)
  t.min t.max t.count   uniform t grid                           [0.5 2.0 7]
  delta.max         largest delta of the geometric grid          [1.0]
  delta.count       grid size                                    [40]
  delta.ratio       grid ratio                                   [2.0]
  delta.min         smallest delta for the returns scan          [1e-6]
  orbit.start_re orbit.start_im orbit.n                          [0 0 32]
  preimages.w_re preimages.w_im preimages.depth                  [0 0 6]
  poincare.t poincare.w_re poincare.w_im                         [1.0 0 0]
  forward.t                                                      [1.0]
  exponent.w_re exponent.w_im exponent.depth                     [0 0 12]
  exponent.t_lo exponent.t_hi exponent.tol                       [0.5 2.0 1e-3]
  children.delta children.t                                      [0.05 1.0]
  returns.t                                                      [1.0]
  mminus.depth      preimage depth for the m_minus scan          [12]
  lb2bc.n_max       largest level in the derivative table        [8]
  decay.delta_ref decay.m_max                                    [0.01 10]
  feigenbaum.max_k feigenbaum.tol                                [12 1e-12]
  output.dir        output directory                             [out]
  output.basename   file stem (defaults to the subcommand)
  output.formats    comma list: csv,json,svg-plot,ascii-plot     [csv,json]
)";
}

}  // namespace unicrit::cli
