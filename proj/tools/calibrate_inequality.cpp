// Estimates the constant in eps_num = C * (dt_sample + dx) * scale from the
// change in dH/dt - RHS between a run and its 2x refinement (grid and samples).
#include <cmath>
#include <cstdio>

#include "blowup/functionals.hpp"
#include "blowup/reference_scenarios.hpp"
#include "blowup/verify.hpp"

using namespace blowup;

namespace {

struct Series {
    std::vector<double> t, gap;
    double scale = 0.0;
};

Series gaps(const reference::CertifiedCase& c, double interval) {
    SolverConfig config;
    config.t_end = c.tau;
    config.snapshot_interval = interval;
    const SolutionTrace trace = run(c.scenario, config);
    const double sigma = sound_speed(c.scenario.eos);
    const SupportCone cone{c.scenario.R, sigma};
    const TestingFunction f = family_weight(c.scenario, c.family);
    std::vector<double> t, H;
    for (const auto& s : trace.snapshots) {
        t.push_back(s.t);
        H.push_back(momentum_functional(s, f, c.scenario.geometry, cone));
    }
    const auto dH = time_derivative(t, H);
    const double m0 = mass_functional(trace.snapshots.front(), c.scenario.eos.rho_bar, c.scenario.geometry, cone);
    Series out;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (trace.blowup && t[k] >= trace.blowup->t_detect) break;
        const RiccatiTerms r = riccati_terms(c.scenario, c.family, c.tau, t[k], H[k], m0);
        const double rhs = r.coefficient * H[k] * H[k] + r.G;
        out.t.push_back(t[k]);
        out.gap.push_back(dH[k] - rhs);
        out.scale = std::max({out.scale, std::abs(dH[k]), std::abs(rhs)});
    }
    return out;
}

}  // namespace

int main() {
    const double interval = 0.002;
    for (const auto& coarse_case : reference::certified_suite(4096)) {
        reference::CertifiedCase fine_case = coarse_case;
        fine_case.scenario.grid.cells *= 2;
        const Series coarse = gaps(coarse_case, interval);
        const Series fine = gaps(fine_case, 0.5 * interval);
        double worst = 0.0;
        for (std::size_t k = 0; k < coarse.t.size(); ++k)
            for (std::size_t j = 0; j < fine.t.size(); ++j)
                if (std::abs(fine.t[j] - coarse.t[k]) < 1e-12) worst = std::max(worst, std::abs(fine.gap[j] - coarse.gap[k]));
        const double dx = coarse_case.scenario.cell_width();
        std::printf("%-28s samples %3zu  max |change| %.4g  C estimate %.4g\n", coarse_case.id.c_str(), coarse.t.size(),
                    worst, worst / ((interval + dx) * coarse.scale));
    }
}
