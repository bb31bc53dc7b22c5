#include "setcx/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>

#include "setcx/errors.hpp"

namespace setcx {
namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    T out{};
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError("invalid value '" + value + "' for " + key);
    }
    return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, const std::string&)>;

template <typename T, typename Field>
Setter number(Field field) {
    return [field](ExperimentConfig& c, const std::string& k, const std::string& v) {
        c.*field = parse_number<T>(k, v);
    };
}

const std::vector<std::pair<std::string, Setter>>& setters() {
    static const std::vector<std::pair<std::string, Setter>> table = {
        {"experiment", [](auto& c, auto&, auto& v) { c.id = parse_experiment(v); }},
        {"N", number<std::size_t>(&ExperimentConfig::set_size)},
        {"L", number<std::size_t>(&ExperimentConfig::length)},
        {"noise_stride", number<std::size_t>(&ExperimentConfig::noise_stride)},
        {"max_flips", number<std::size_t>(&ExperimentConfig::max_flips)},
        {"replicates", number<std::size_t>(&ExperimentConfig::replicates)},
        {"seed", number<std::uint64_t>(&ExperimentConfig::seed)},
        {"algorithm", [](auto& c, auto&, auto& v) { c.spec.algorithm = parse_algorithm(v); }},
        {"level", [](auto& c, auto& k, auto& v) { c.spec.level = parse_number<int>(k, v); }},
        {"norm", [](auto& c, auto&, auto& v) { c.norm = parse_norm(v); }},
        {"kernel", [](auto& c, auto&, auto& v) {
             (void)Kernel::parse(v);
             c.kernel = v;
         }},
        {"threads", number<unsigned>(&ExperimentConfig::threads)},
        {"n", number<std::size_t>(&ExperimentConfig::rbn_n)},
        {"k", number<std::size_t>(&ExperimentConfig::rbn_k)},
        {"p_min", number<double>(&ExperimentConfig::p_min)},
        {"p_max", number<double>(&ExperimentConfig::p_max)},
        {"p_step", number<double>(&ExperimentConfig::p_step)},
        {"networks", number<std::size_t>(&ExperimentConfig::networks)},
        {"traj_len", number<std::size_t>(&ExperimentConfig::traj_len)},
        {"burn_in", number<std::size_t>(&ExperimentConfig::burn_in)},
        {"graph_n", number<std::size_t>(&ExperimentConfig::graph_n)},
        {"iterations", number<std::size_t>(&ExperimentConfig::iterations)},
        {"restarts", number<std::size_t>(&ExperimentConfig::restarts)},
    };
    return table;
}

std::string key_list() {
    std::string s;
    for (const auto& k : config_keys()) s += (s.empty() ? "" : ", ") + k;
    return s;
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [name, _] : setters()) k.push_back(name);
        return k;
    }();
    return keys;
}

void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    for (const auto& [name, setter] : setters()) {
        if (name == key) {
            setter(cfg, key, value);
            return;
        }
    }
    throw ConfigError("unknown key '" + key + "'; valid keys: " + key_list());
}

ExperimentConfig parse_config(std::istream& in, ExperimentConfig base) {
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(number, "expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) throw ParseError(number, "expected 'key = value'");
        try {
            set_config_value(base, key, value);
        } catch (const ConfigError& e) {
            throw ParseError(number, e.what());
        } catch (const DomainError& e) {
            throw ParseError(number, e.what());
        }
    }
    return base;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    return parse_config(in, std::move(base));
}

}  // namespace setcx
