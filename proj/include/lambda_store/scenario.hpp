#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lambda_store/diagnostics.hpp"
#include "lambda_store/field.hpp"
#include "lambda_store/model.hpp"
#include "lambda_store/pulses.hpp"

namespace lambda_store {

enum class ScenarioKind {
    single_lambda,        ///< store on control 2, release on control 2
    convert,              ///< store on control 2, release on control 4
    dual_release_4_first, ///< control 4 back on before control 2
    dual_release_2_first, ///< control 2 back on before control 4
    custom,               ///< CW control 2, no switching
};

std::string_view to_string(ScenarioKind kind);
std::optional<ScenarioKind> parse_scenario_kind(std::string_view name);
inline constexpr ScenarioKind all_scenario_kinds[] = {
    ScenarioKind::single_lambda, ScenarioKind::convert, ScenarioKind::dual_release_4_first,
    ScenarioKind::dual_release_2_first, ScenarioKind::custom};

struct ScenarioConfig
{
    ScenarioKind kind = ScenarioKind::custom;
    MediumSpec medium;
    Grid grid;
    PulseSchedule schedule;
    double t_start = 0.0;
    std::size_t record_every = 100;
    /// Peak detection threshold as a fraction of the probe amplitude.
    double peak_fraction = 0.01;

    double t_end() const { return t_start + static_cast<double>(grid.nt) * grid.dt; }

    bool operator==(const ScenarioConfig&) const = default;
};

/* Preset defaults, all a.u. */
namespace defaults {
inline constexpr double probe_eps10 = 1e-10;
inline constexpr double probe_t1 = 0.0;
inline constexpr double probe_t2 = 1e11;
inline constexpr double control_level = 1.2e-9;
inline constexpr double ramp_tau = 5e8;
inline constexpr double store_off = 1.1e11;
inline constexpr double release_on = 2.5e11;
inline constexpr double second_release_on = 2.8e11;
inline constexpr std::size_t nz = 201;
inline constexpr double dt = 2e7;
/// Tail simulated after the last scheduled time, in probe lengths.
inline constexpr double tail_pulse_lengths = 2.0;
} // namespace defaults

ScenarioConfig preset(ScenarioKind kind);

/// Steps needed to cover the schedule plus the default tail.
std::size_t default_step_count(const PulseSchedule& schedule, double t_start, double dt);

/// Validates every component plus the horizon, which must cover every
/// scheduled event and one probe length beyond it.
void validate(const ScenarioConfig& config);

struct ExitSample
{
    double t = 0.0;
    double eps1 = 0.0;
    double eps3 = 0.0;
    double eps2 = 0.0;
    double eps4 = 0.0;
};

struct CoherencePoint
{
    double t = 0.0;
    double z = 0.0;
    complex sigma_bc;
};

struct PopulationSample
{
    double t = 0.0;
    double trace = 0.0;
    double min_eigenvalue = 0.0;
};

struct DiagnosticSample
{
    double t = 0.0;
    CoherenceSample point;
    PolaritonSample polariton;
};

/// Worst values of the runtime invariants over every grid point and step
/// (eigenvalues: every step at mid-sample, every record stride elsewhere).
struct RunMonitors
{
    double max_trace_error = 0.0;
    double max_hermiticity_residual = 0.0;
    double min_eigenvalue = 1.0;
    /// max of |Re sigma_ab|, |Re sigma_db|, |Im sigma_bc|, |Im sigma_ad|
    /// relative to max |sigma| at the same point.
    double max_phase_residual = 0.0;
};

namespace monitor_limits {
inline constexpr double trace = 1e-9;
inline constexpr double hermiticity = 1e-12;
inline constexpr double min_eigenvalue = -1e-7;
inline constexpr double phase = 1e-10;
} // namespace monitor_limits

/// Name of the first monitor outside its limit, if any.
std::optional<std::string> first_violated_monitor(const RunMonitors& monitors);

struct SimulationRecord
{
    ScenarioConfig config;
    std::size_t mid_index = 0;
    std::vector<ExitSample> exit_series;
    std::vector<CoherencePoint> coherence_map;
    std::vector<PopulationSample> population_trace;
    std::vector<Peak> peaks_eps1;
    std::vector<Peak> peaks_eps3;
    std::vector<DiagnosticSample> diagnostics_series;
    RunMonitors monitors;
};

/// Grid index used as the canonical diagnostic point, z = L/2 (rounded
/// down for even nz).
std::size_t mid_sample_index(const Grid& grid);

/// Runs the configured scenario from sigma = |b><b| everywhere. Exit
/// samples are taken after every step at t' = t_start + (n + 1) dt.
SimulationRecord run_scenario(const ScenarioConfig& config);

/// Time separating storage from release: midpoint between the first on-switch
/// and the last off-switch preceding it. Empty if nothing is switched on.
std::optional<double> release_boundary(const PulseSchedule& schedule);

/// Peaks of one channel (1 or 3) centered after the release boundary.
std::vector<Peak> released_peaks(const SimulationRecord& record, int channel);

/// Photon-number weight c eps0 / (2 hbar omega) of a field envelope.
double photon_flux_weight(double omega);

struct QuantaSplit
{
    double frac_eps1 = 0.0;
    double frac_eps3 = 0.0;
};

/// Fractions of released photon number carried by each channel. Throws
/// NothingReleased when neither channel has a released peak.
QuantaSplit released_energy_split(const SimulationRecord& record);

/// Photon-number bookkeeping of a run (per unit area).
struct QuantaBudget
{
    double input = 0.0;
    double untrapped = 0.0;
    double released1 = 0.0;
    double released3 = 0.0;

    double deficit() const { return input - untrapped - released1 - released3; }
};

QuantaBudget quanta_budget(const SimulationRecord& record);

} // namespace lambda_store
