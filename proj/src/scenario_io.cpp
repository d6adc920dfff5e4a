#include "blowup/scenario_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "blowup/errors.hpp"

namespace blowup {
namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_real(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(value, &used);
    } catch (const std::logic_error&) {
        used = 0;
    }
    if (used == 0 || used != value.size()) throw InvalidInput("config key '" + key + "': not a number: " + value);
    return x;
}

int to_int(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    int x = 0;
    try {
        x = std::stoi(value, &used);
    } catch (const std::logic_error&) {
        used = 0;
    }
    if (used == 0 || used != value.size()) throw InvalidInput("config key '" + key + "': not an integer: " + value);
    return x;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidInput("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw InvalidInput("config line " + std::to_string(lineno) + ": empty key or value");
        if (!kv.emplace(key, value).second) throw InvalidInput("config key repeated: " + key);
    }

    auto take = [&](const std::string& key) {
        const auto it = kv.find(key);
        if (it == kv.end()) throw InvalidInput("config key missing: " + key);
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    auto take_optional = [&](const std::string& key, double fallback) {
        const auto it = kv.find(key);
        if (it == kv.end()) return fallback;
        const double v = to_real(key, it->second);
        kv.erase(it);
        return v;
    };

    Scenario s;
    s.eos.K = to_real("eos.K", take("eos.K"));
    s.eos.gamma = to_real("eos.gamma", take("eos.gamma"));
    s.eos.rho_bar = to_real("eos.rho_bar", take("eos.rho_bar"));
    s.geometry = Geometry::parse(take("geometry"));
    s.R = to_real("R", take("R"));
    s.amp_rho = to_real("amp_rho", take("amp_rho"));
    s.amp_v = to_real("amp_v", take("amp_v"));
    s.grid.extent = to_real("grid.extent", take("grid.extent"));
    s.grid.cells = to_int("grid.cells", take("grid.cells"));
    const DetectorParams defaults;
    s.detector.slope_factor = take_optional("detector.slope_factor", defaults.slope_factor);
    s.detector.dt_floor = take_optional("detector.dt_floor", defaults.dt_floor);
    s.detector.sample_interval = take_optional("detector.sample_interval", defaults.sample_interval);
    if (!kv.empty()) throw InvalidInput("unknown config key: " + kv.begin()->first);

    validate(s);
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open scenario file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string format_scenario(const Scenario& s) {
    std::ostringstream out;
    out.precision(17);
    out << "eos.K = " << s.eos.K << "\n"
        << "eos.gamma = " << s.eos.gamma << "\n"
        << "eos.rho_bar = " << s.eos.rho_bar << "\n"
        << "geometry = " << s.geometry.to_string() << "\n"
        << "R = " << s.R << "\n"
        << "amp_rho = " << s.amp_rho << "\n"
        << "amp_v = " << s.amp_v << "\n"
        << "grid.extent = " << s.grid.extent << "\n"
        << "grid.cells = " << s.grid.cells << "\n"
        << "detector.slope_factor = " << s.detector.slope_factor << "\n"
        << "detector.dt_floor = " << s.detector.dt_floor << "\n"
        << "detector.sample_interval = " << s.detector.sample_interval << "\n";
    return out.str();
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write scenario file: " + path.string());
    out << format_scenario(scenario);
}

}  // namespace blowup
