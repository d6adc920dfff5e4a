#include "blowup/report_io.hpp"

#include <cmath>
#include <fstream>

#include "blowup/errors.hpp"

namespace blowup {

namespace {

// JSON has no infinities; they are written as strings.
nlohmann::json number(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

nlohmann::json number_map(const std::map<std::string, double>& m) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [k, v] : m) out[k] = number(v);
    return out;
}

}  // namespace

nlohmann::json to_json(const CriterionReport& report) {
    nlohmann::json j;
    j["theorem"] = to_string(report.theorem);
    j["inputs"] = number_map(report.inputs);
    j["conditions"] = nlohmann::json::array();
    for (const auto& c : report.conditions) {
        j["conditions"].push_back({{"name", c.name},
                                   {"lhs", number(c.lhs)},
                                   {"rhs", number(c.rhs)},
                                   {"comparison", to_string(c.comparison)},
                                   {"satisfied", c.satisfied}});
    }
    j["verdict"] = to_string(report.verdict);
    j["tau"] = report.tau ? nlohmann::json(*report.tau) : nlohmann::json(nullptr);
    j["threshold"] = number(report.threshold);
    j["margins"] = number_map(report.margins);
    j["notes"] = report.notes;
    return j;
}

nlohmann::json to_json(const VerificationReport& report) {
    nlohmann::json j;
    j["check_name"] = report.check_name;
    j["scenario_id"] = report.scenario_id;
    j["status"] = to_string(report.status);
    j["reason"] = report.reason;
    j["metrics"] = number_map(report.metrics);
    return j;
}

nlohmann::json to_json(const Scenario& s) {
    return {{"eos", {{"K", s.eos.K}, {"gamma", s.eos.gamma}, {"rho_bar", s.eos.rho_bar}}},
            {"geometry", s.geometry.to_string()},
            {"R", s.R},
            {"amp_rho", s.amp_rho},
            {"amp_v", s.amp_v},
            {"grid", {{"extent", s.grid.extent}, {"cells", s.grid.cells}}},
            {"detector",
             {{"slope_factor", s.detector.slope_factor},
              {"dt_floor", s.detector.dt_floor},
              {"sample_interval", s.detector.sample_interval}}}};
}

nlohmann::json trace_summary(const SolutionTrace& trace) {
    nlohmann::json j;
    j["snapshots"] = trace.snapshots.size();
    j["steps"] = trace.steps;
    j["t_final"] = trace.t_final;
    double min_rho = INFINITY;
    for (const auto& s : trace.snapshots) min_rho = std::min(min_rho, s.min_density());
    j["min_density"] = number(min_rho);
    if (trace.blowup) {
        j["blowup"] = {{"t_detect", trace.blowup->t_detect},
                       {"cause", to_string(trace.blowup->cause)},
                       {"location", trace.blowup->location}};
    } else {
        j["blowup"] = nullptr;
    }
    return j;
}

void write_json(const nlohmann::json& doc, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write " + path.string());
    out << doc.dump(2) << '\n';
}

nlohmann::json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot read " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(path.string() + ": " + e.what());
    }
}

}  // namespace blowup
