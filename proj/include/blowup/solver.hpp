#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "blowup/functionals.hpp"
#include "blowup/kernels.hpp"
#include "blowup/model.hpp"
#include "blowup/snapshot.hpp"

namespace blowup {

using kernels::Backend;
using kernels::Reconstruction;

struct SolverConfig {
    double cfl = 0.45;
    Reconstruction reconstruction = Reconstruction::MusclMinmod;
    double t_end = 1.0;
    double snapshot_interval = 0.01;
    Backend backend = Backend::OpenMP;
};

void validate(const SolverConfig& config);

struct BlowupEvent {
    enum class Cause { SlopeThreshold, DtFloor };
    double t_detect = 0.0;
    Cause cause = Cause::SlopeThreshold;
    double location = 0.0;
};

std::string to_string(BlowupEvent::Cause cause);

struct SolutionTrace {
    std::vector<FieldSnapshot> snapshots;
    FunctionalSeries series;
    std::optional<BlowupEvent> blowup;
    double t_final = 0.0;
    long steps = 0;

    // Time up to which the C^1 theory applies: t_detect if present, else t_final.
    double smooth_horizon() const { return blowup ? blowup->t_detect : t_final; }
};

// Computes the functional sample recorded with each snapshot.
using FunctionalCallback = std::function<FunctionalSample(const FieldSnapshot&)>;

// cfl * dx / max_i(|V_i| + c_i). Throws NumericalError on non-positive density.
double cfl_dt(const FieldSnapshot& snap, const EosParams& eos, double cfl);

// One time step of size dt: forward Euler for first order, two-stage SSP
// Runge-Kutta with MUSCL. Throws NumericalError if a density becomes non-positive.
FieldSnapshot step(const FieldSnapshot& snap, const EosParams& eos, Geometry geometry, double dt,
                   Reconstruction recon = Reconstruction::MusclMinmod, Backend backend = Backend::Serial);

// SlopeThreshold when max |V_{i+1} - V_i| >= slope_factor * sigma; DtFloor when
// the CFL step drops below dt_floor.
std::optional<BlowupEvent> detect_blowup(const FieldSnapshot& snap, const EosParams& eos,
                                         const DetectorParams& detector, double cfl = 0.45);

// Advances the scenario to config.t_end or the first blowup event. Snapshots
// are recorded every snapshot_interval (step sizes are trimmed to land on the
// sample times) and at the detection time. Deterministic for fixed inputs.
SolutionTrace run(const Scenario& scenario, const SolverConfig& config, const FunctionalCallback& callback = {});

// Columns: r_or_x,rho,V
void write_snapshot_csv(const FieldSnapshot& snap, const std::filesystem::path& path);

}  // namespace blowup
