// -*- c-basic-offset: 4; indent-tabs-mode: nil -*-
#include "pcoflow/run_config.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pcoflow {

namespace {

const std::set<std::string> kKnownKeys = {
    "scheduler",    "ordering",      "lb",           "topology",      "load",
    "seed",         "trace",         "coflows",      "hosts",         "hosts_per_tor",
    "max_flow_bytes", "host_rate_bps", "fabric_rate_bps", "bands",    "band_capacity",
    "ecn_threshold", "red_min_th",   "red_max_th",   "red_max_prob",  "red_capacity",
};

// Keys allowed to hold comma lists; listed in expansion (nesting) order.
const std::vector<std::string> kMatrixKeys = {"scheduler", "ordering", "lb",
                                              "topology",  "load",     "seed"};

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(trim(item));
    return out;
}

long long parse_int(const std::string& key, const std::string& v) {
    try {
        size_t used = 0;
        long long x = std::stoll(v, &used);
        if (used != v.size())
            throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' needs an integer, got '" + v + "'");
    }
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        size_t used = 0;
        double x = std::stod(v, &used);
        if (used != v.size())
            throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' needs a number, got '" + v + "'");
    }
}

void assign(RunConfig& c, const std::string& key, const std::string& v) {
    if (key == "scheduler")
        c.scheduler = v;
    else if (key == "ordering")
        c.ordering = v;
    else if (key == "lb")
        c.lb = v;
    else if (key == "topology")
        c.topology = v;
    else if (key == "load")
        c.load = parse_double(key, v);
    else if (key == "seed")
        c.seed = static_cast<std::uint64_t>(parse_int(key, v));
    else if (key == "trace")
        c.trace = v;
    else if (key == "coflows")
        c.coflows = static_cast<int>(parse_int(key, v));
    else if (key == "hosts")
        c.hosts = static_cast<int>(parse_int(key, v));
    else if (key == "hosts_per_tor")
        c.hosts_per_tor = static_cast<int>(parse_int(key, v));
    else if (key == "max_flow_bytes")
        c.max_flow_bytes = parse_int(key, v);
    else if (key == "host_rate_bps")
        c.host_rate_bps = parse_int(key, v);
    else if (key == "fabric_rate_bps")
        c.fabric_rate_bps = parse_int(key, v);
    else if (key == "bands")
        c.bands = static_cast<int>(parse_int(key, v));
    else if (key == "band_capacity")
        c.band_capacity = static_cast<int>(parse_int(key, v));
    else if (key == "ecn_threshold")
        c.ecn_threshold = static_cast<int>(parse_int(key, v));
    else if (key == "red_min_th")
        c.red_min_th = static_cast<int>(parse_int(key, v));
    else if (key == "red_max_th")
        c.red_max_th = static_cast<int>(parse_int(key, v));
    else if (key == "red_max_prob")
        c.red_max_prob = parse_double(key, v);
    else if (key == "red_capacity")
        c.red_capacity = static_cast<int>(parse_int(key, v));
}

} // namespace

int RunConfig::host_count() const {
    if (topology == "bigswitch")
        return hosts > 0 ? hosts : 64;
    return hosts_per_tor * 8;
}

void RunConfig::validate() const {
    auto one_of = [](const std::string& key, const std::string& v,
                     std::initializer_list<const char*> allowed) {
        for (const char* a : allowed)
            if (v == a)
                return;
        throw std::invalid_argument("config: key '" + key + "' has invalid value '" + v + "'");
    };
    one_of("scheduler", scheduler, {"pcoflow-ecn", "pcoflow-drop", "dsred"});
    one_of("ordering", ordering, {"sincronia", "none"});
    one_of("lb", lb, {"ecmp", "hula"});
    one_of("topology", topology, {"fattree", "bigswitch"});
    if (!(load > 0.0 && load <= 1.0))
        throw std::invalid_argument("config: load must be in (0,1]");
    if (coflows < 1)
        throw std::invalid_argument("config: coflows must be >= 1");
    if (hosts < 0 || (topology == "bigswitch" && hosts == 1))
        throw std::invalid_argument("config: hosts must be >= 2");
    if (hosts_per_tor < 1)
        throw std::invalid_argument("config: hosts_per_tor must be >= 1");
    if (host_rate_bps <= 0 || fabric_rate_bps <= 0)
        throw std::invalid_argument("config: link rates must be positive");
    if (max_flow_bytes < 0)
        throw std::invalid_argument("config: max_flow_bytes must be >= 0");
    if (bands < 1 || band_capacity < 1 || ecn_threshold < 0)
        throw std::invalid_argument("config: bad band parameters");
    if (red_min_th < 0 || red_max_th <= red_min_th || red_capacity < 1 ||
        red_max_prob < 0.0 || red_max_prob > 1.0)
        throw std::invalid_argument("config: bad red parameters");
}

std::vector<RunConfig> parse_run_configs(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#')
            continue;
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (!kKnownKeys.count(key))
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": unknown key '" + key + "'");
        if (kv.count(key))
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": duplicate key '" + key + "'");
        kv[key] = value;
    }

    // Scalars first, then the cartesian expansion of the list-valued keys.
    RunConfig base;
    for (const auto& [key, value] : kv) {
        if (std::find(kMatrixKeys.begin(), kMatrixKeys.end(), key) != kMatrixKeys.end())
            continue;
        if (value.find(',') != std::string::npos)
            throw std::invalid_argument("config: key '" + key + "' does not accept a list");
        assign(base, key, value);
    }

    std::vector<RunConfig> out{base};
    for (const std::string& key : kMatrixKeys) {
        auto it = kv.find(key);
        if (it == kv.end())
            continue;
        std::vector<std::string> values = split_list(it->second);
        if (values.empty())
            throw std::invalid_argument("config: key '" + key + "' has an empty list");
        std::vector<RunConfig> next;
        for (const RunConfig& c : out) {
            for (const std::string& v : values) {
                RunConfig expanded = c;
                assign(expanded, key, v);
                next.push_back(expanded);
            }
        }
        out = std::move(next);
    }
    for (const RunConfig& c : out)
        c.validate();
    return out;
}

std::vector<RunConfig> parse_run_configs_text(const std::string& text) {
    std::istringstream in(text);
    return parse_run_configs(in);
}

std::vector<RunConfig> load_run_configs(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);
    return parse_run_configs(in);
}

} // namespace pcoflow
