#include "blowup/solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "blowup/errors.hpp"

namespace blowup {

using kernels::kGhosts;
using kernels::PaddedState;

void validate(const SolverConfig& config) {
    if (!(config.cfl > 0.0 && config.cfl <= 1.0)) throw InvalidInput("cfl must lie in (0, 1]");
    if (!(config.t_end > 0.0)) throw InvalidInput("t_end must be positive");
    if (!(config.snapshot_interval > 0.0)) throw InvalidInput("snapshot_interval must be positive");
}

std::string to_string(BlowupEvent::Cause cause) {
    return cause == BlowupEvent::Cause::SlopeThreshold ? "SlopeThreshold" : "DtFloor";
}

namespace {

PaddedState to_padded(const FieldSnapshot& snap) {
    PaddedState s(static_cast<int>(snap.size()));
    for (std::size_t i = 0; i < snap.size(); ++i) {
        s.rho[i + kGhosts] = snap.rho[i];
        s.mom[i + kGhosts] = snap.rho[i] * snap.V[i];
    }
    return s;
}

void to_snapshot(const PaddedState& s, FieldSnapshot& snap) {
    for (std::size_t i = 0; i < snap.size(); ++i) {
        snap.rho[i] = s.rho[i + kGhosts];
        snap.V[i] = s.mom[i + kGhosts] / s.rho[i + kGhosts];
    }
}

void require_positive(const PaddedState& s, const std::vector<double>& centers) {
    for (int i = 0; i < s.interior(); ++i) {
        if (!(s.rho[i + kGhosts] > 0.0)) {
            std::ostringstream msg;
            msg << "density " << s.rho[i + kGhosts] << " at x = " << centers[i] << " after update";
            throw NumericalError(msg.str());
        }
    }
}

// Owns the working arrays for repeated steps on one grid.
class Stepper {
public:
    Stepper(const FieldSnapshot& snap, const EosParams& eos, Geometry geometry, Reconstruction recon, Backend backend)
        : eos_(eos),
          geometry_(geometry),
          recon_(recon),
          backend_(backend),
          centers_(snap.centers),
          u_(to_padded(snap)),
          stage_(u_.interior()),
          krho_(snap.size()),
          kmom_(snap.size()) {
        kernels::fill_ghosts(u_, geometry_, eos_.rho_bar);
    }

    double dx() const { return centers_[1] - centers_[0]; }

    double max_speed() const { return kernels::max_signal_speed(u_, eos_, backend_); }

    void advance(double dt) {
        const kernels::GridInfo grid{dx(), centers_, geometry_};
        kernels::residual(u_, grid, eos_, recon_, krho_, kmom_, backend_);
        kernels::combine(u_, u_, krho_, kmom_, 0.0, 1.0, dt, stage_, backend_);
        require_positive(stage_, centers_);
        kernels::fill_ghosts(stage_, geometry_, eos_.rho_bar);
        if (recon_ == Reconstruction::FirstOrder) {
            std::swap(u_, stage_);
            return;
        }
        kernels::residual(stage_, grid, eos_, recon_, krho_, kmom_, backend_);
        kernels::combine(u_, stage_, krho_, kmom_, 0.5, 0.5, dt, u_, backend_);
        require_positive(u_, centers_);
        kernels::fill_ghosts(u_, geometry_, eos_.rho_bar);
    }

    void store(FieldSnapshot& snap) const { to_snapshot(u_, snap); }

private:
    EosParams eos_;
    Geometry geometry_;
    Reconstruction recon_;
    Backend backend_;
    std::vector<double> centers_;
    PaddedState u_;
    PaddedState stage_;
    std::vector<double> krho_;
    std::vector<double> kmom_;
};

}  // namespace

double cfl_dt(const FieldSnapshot& snap, const EosParams& eos, double cfl) {
    validate(snap);
    double speed = 0.0;
    for (std::size_t i = 0; i < snap.size(); ++i) {
        if (!(snap.rho[i] > 0.0)) throw NumericalError("cfl_dt: non-positive density");
        speed = std::max(speed, std::abs(snap.V[i]) + local_sound_speed(eos, snap.rho[i]));
    }
    return cfl * snap.spacing() / speed;
}

FieldSnapshot step(const FieldSnapshot& snap, const EosParams& eos, Geometry geometry, double dt,
                   Reconstruction recon, Backend backend) {
    validate(snap);
    if (!(dt > 0.0)) throw InvalidInput("step needs dt > 0");
    Stepper stepper(snap, eos, geometry, recon, backend);
    stepper.advance(dt);
    FieldSnapshot out = snap;
    out.t = snap.t + dt;
    stepper.store(out);
    return out;
}

std::optional<BlowupEvent> detect_blowup(const FieldSnapshot& snap, const EosParams& eos,
                                         const DetectorParams& detector, double cfl) {
    const double threshold = detector.slope_factor * sound_speed(eos);
    double worst = -1.0;
    std::size_t at = 0;
    for (std::size_t i = 0; i + 1 < snap.size(); ++i) {
        const double jump = std::abs(snap.V[i + 1] - snap.V[i]);
        if (jump > worst) {
            worst = jump;
            at = i;
        }
    }
    if (worst >= threshold)
        return BlowupEvent{snap.t, BlowupEvent::Cause::SlopeThreshold, 0.5 * (snap.centers[at] + snap.centers[at + 1])};
    if (cfl_dt(snap, eos, cfl) < detector.dt_floor) return BlowupEvent{snap.t, BlowupEvent::Cause::DtFloor, 0.0};
    return std::nullopt;
}

SolutionTrace run(const Scenario& scenario, const SolverConfig& config, const FunctionalCallback& callback) {
    validate(scenario);
    validate(config);
    const double horizon = scenario.containment_horizon();
    if (!(config.t_end < horizon)) {
        std::ostringstream msg;
        msg << "t_end = " << config.t_end << " lets the perturbation cone reach the grid edge (horizon " << horizon
            << ")";
        throw InvalidInput(msg.str());
    }

    SolutionTrace trace;
    FieldSnapshot current = initial_snapshot(scenario);
    auto record = [&](const FieldSnapshot& snap) {
        trace.snapshots.push_back(snap);
        if (callback) trace.series.push(snap.t, callback(snap));
    };
    record(current);
    if (auto event = detect_blowup(current, scenario.eos, scenario.detector, config.cfl)) {
        trace.blowup = event;
        return trace;
    }

    Stepper stepper(current, scenario.eos, scenario.geometry, config.reconstruction, config.backend);
    const double dx = stepper.dx();
    long sample_index = 1;
    double t = 0.0;
    while (t < config.t_end) {
        const double next_sample = std::min(config.t_end, static_cast<double>(sample_index) * config.snapshot_interval);
        const double dt_cfl = config.cfl * dx / stepper.max_speed();
        if (dt_cfl < scenario.detector.dt_floor) {
            stepper.store(current);
            current.t = t;
            trace.blowup = BlowupEvent{t, BlowupEvent::Cause::DtFloor, 0.0};
            if (trace.snapshots.back().t < t) record(current);
            break;
        }
        double dt = dt_cfl;
        bool lands_on_sample = false;
        if (t + dt >= next_sample) {
            dt = next_sample - t;
            lands_on_sample = true;
        }
        try {
            stepper.advance(dt);
        } catch (const NumericalError& e) {
            std::ostringstream msg;
            msg << "step failed at t = " << t << ": " << e.what();
            throw NumericalError(msg.str());
        }
        t = lands_on_sample ? next_sample : t + dt;
        ++trace.steps;
        stepper.store(current);
        current.t = t;
        if (lands_on_sample) ++sample_index;

        if (auto event = detect_blowup(current, scenario.eos, scenario.detector, config.cfl)) {
            trace.blowup = event;
            record(current);
            break;
        }
        if (lands_on_sample) record(current);
    }
    trace.t_final = t;
    return trace;
}

void write_snapshot_csv(const FieldSnapshot& snap, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write " + path.string());
    out.precision(17);
    out << "r_or_x,rho,V\n";
    for (std::size_t i = 0; i < snap.size(); ++i) out << snap.centers[i] << ',' << snap.rho[i] << ',' << snap.V[i] << '\n';
}

}  // namespace blowup
