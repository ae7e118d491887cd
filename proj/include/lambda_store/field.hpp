#pragma once

#include <cstddef>
#include <vector>

#include "lambda_store/bloch.hpp"
#include "lambda_store/model.hpp"
#include "lambda_store/pulses.hpp"

namespace lambda_store {

/// How the atomic step and the signal propagation are coupled in time.
enum class Coupling {
    /// Classical RK4 over the whole grid; the signals are re-propagated from
    /// the stage states at every RK4 stage (fourth order).
    stage_rk4,
    /// Per-point RK4 with frozen signals, re-propagation, then one corrector
    /// pass with signals linear in time (second order).
    predictor_corrector,
};

/// Discretization in the moving window frame z' = z, t' = t - z/c.
struct Grid
{
    std::size_t nz = 0;
    double dz = 0.0;
    double dt = 0.0;
    std::size_t nt = 0;
    bool window = true;
    Coupling coupling = Coupling::stage_rk4;

    /// nz points spanning [0, length].
    static Grid make(double length, std::size_t nz, double dt, std::size_t nt);

    double z(std::size_t k) const { return static_cast<double>(k) * dz; }

    bool operator==(const Grid&) const = default;
};

void validate(const Grid& grid, double length);

/// Signal envelopes over z plus the spatially uniform controls.
struct FieldState
{
    std::vector<double> eps1;
    std::vector<double> eps3;
    double eps2 = 0.0;
    double eps4 = 0.0;
};

struct MediumState
{
    std::vector<DensityMatrix> states;

    static MediumState ground(std::size_t nz)
    {
        return MediumState{std::vector<DensityMatrix>(nz, DensityMatrix::ground())};
    }
};

struct SignalProfiles
{
    std::vector<double> eps1;
    std::vector<double> eps3;
};

/// Coupling constants N d_j omega_j / (eps0 c) of the two signal channels.
double signal_coupling1(const MediumSpec& medium);
double signal_coupling3(const MediumSpec& medium);

/// Residual imaginary part of a propagated envelope tolerated relative to
/// its peak magnitude.
inline constexpr double phase_residual_tolerance = 1e-10;

/// Integrates d eps1/dz' = i k1 sigma_ab and d eps3/dz' = i k3 sigma_db from
/// the given boundary values at z = 0 with the trapezoidal rule.
SignalProfiles propagate_signals(const MediumState& medium_state,
                                 double boundary_eps1, double boundary_eps3,
                                 const Grid& grid, const MediumSpec& medium);

struct WindowState
{
    FieldState fields;
    MediumState medium;
};

/// Fields consistent with `medium_state` at window time t: controls from
/// the schedule, signals propagated from the probe boundary value.
FieldState fields_at(const MediumState& medium_state, const PulseSchedule& schedule,
                     double t, const Grid& grid, const MediumSpec& medium);

/// One coupled step t -> t + dt with the scheme selected by grid.coupling.
/// Controls are sampled analytically at every stage time. Throws
/// NumericalError naming the z-index and time on a non-finite state.
WindowState advance_window_step(const FieldState& fields,
                                const MediumState& medium_state,
                                const PulseSchedule& schedule, double t,
                                const Grid& grid, const MediumSpec& medium);

} // namespace lambda_store
