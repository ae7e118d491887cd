#include "lambda_store/field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lambda_store/error.hpp"

namespace lambda_store {

Grid Grid::make(double length, std::size_t nz, double dt, std::size_t nt)
{
    if (nz < 2) {
        throw InvalidInput("grid needs at least two z points");
    }
    Grid g;
    g.nz = nz;
    g.dz = length / static_cast<double>(nz - 1);
    g.dt = dt;
    g.nt = nt;
    validate(g, length);
    return g;
}

void validate(const Grid& grid, double length)
{
    if (grid.nz < 2) {
        throw InvalidInput("grid.nz must be >= 2");
    }
    const double span = grid.dz * static_cast<double>(grid.nz - 1);
    if (!(std::abs(span - length) <= 1e-12 * length)) {
        throw InvalidInput("grid.dz * (nz - 1) must equal the sample length");
    }
    if (!(grid.dt > 0.0) || !std::isfinite(grid.dt)) {
        throw InvalidInput("grid.dt must be positive");
    }
    if (grid.nt < 1) {
        throw InvalidInput("grid.nt must be >= 1");
    }
}

double signal_coupling1(const MediumSpec& m)
{
    return m.density * m.d1 * m.omega1 / (au::eps0 * au::c);
}

double signal_coupling3(const MediumSpec& m)
{
    return m.density * m.d3 * m.omega3 / (au::eps0 * au::c);
}

namespace {

void check_phase(const std::vector<complex>& e, const char* name)
{
    double re_max = 0.0;
    double im_max = 0.0;
    for (const auto& v : e) {
        re_max = std::max(re_max, std::abs(v));
        im_max = std::max(im_max, std::abs(v.imag()));
    }
    if (im_max > phase_residual_tolerance * re_max) {
        std::ostringstream msg;
        msg << "propagate_signals: " << name << " acquired an imaginary part "
            << im_max << " against peak " << re_max;
        throw NumericalError("phase", msg.str());
    }
}

} // namespace

SignalProfiles propagate_signals(const MediumState& medium_state,
                                 double boundary_eps1, double boundary_eps3,
                                 const Grid& grid, const MediumSpec& medium)
{
    const auto& st = medium_state.states;
    if (st.size() != grid.nz) {
        throw InvalidInput("propagate_signals: medium state size differs from grid.nz");
    }
    if (!std::isfinite(boundary_eps1) || !std::isfinite(boundary_eps3)) {
        throw InvalidInput("propagate_signals: boundary values must be finite");
    }

    const complex I(0.0, 1.0);
    const complex k1 = I * signal_coupling1(medium);
    const complex k3 = I * signal_coupling3(medium);
    const double half_dz = 0.5 * grid.dz;

    std::vector<complex> e1(grid.nz), e3(grid.nz);
    e1[0] = boundary_eps1;
    e3[0] = boundary_eps3;
    complex s1_prev = k1 * st[0](A, B);
    complex s3_prev = k3 * st[0](D, B);
    for (std::size_t k = 1; k < grid.nz; ++k) {
        const complex s1 = k1 * st[k](A, B);
        const complex s3 = k3 * st[k](D, B);
        e1[k] = e1[k - 1] + half_dz * (s1_prev + s1);
        e3[k] = e3[k - 1] + half_dz * (s3_prev + s3);
        s1_prev = s1;
        s3_prev = s3;
    }

    check_phase(e1, "eps1");
    check_phase(e3, "eps3");

    SignalProfiles out;
    out.eps1.resize(grid.nz);
    out.eps3.resize(grid.nz);
    for (std::size_t k = 0; k < grid.nz; ++k) {
        out.eps1[k] = e1[k].real();
        out.eps3[k] = e3[k].real();
    }
    return out;
}

FieldState fields_at(const MediumState& medium_state, const PulseSchedule& schedule,
                     double t, const Grid& grid, const MediumSpec& medium)
{
    auto prof = propagate_signals(medium_state, probe_envelope(schedule.probe, t),
                                  0.0, grid, medium);
    FieldState f;
    f.eps1 = std::move(prof.eps1);
    f.eps3 = std::move(prof.eps3);
    f.eps2 = control_value(schedule.control2, t);
    f.eps4 = control_value(schedule.control4, t);
    return f;
}

namespace {

void check_finite(const MediumState& ms, const SignalProfiles& p, double t)
{
    for (std::size_t k = 0; k < ms.states.size(); ++k) {
        if (!ms.states[k].all_finite() || !std::isfinite(p.eps1[k]) ||
            !std::isfinite(p.eps3[k])) {
            std::ostringstream msg;
            msg << "non-finite value at z-index " << k << ", t' = " << t;
            throw NumericalError("finite", msg.str());
        }
    }
}

WindowState step_predictor_corrector(const FieldState& fields,
                                     const MediumState& medium_state,
                                     const PulseSchedule& schedule, double t,
                                     const Grid& grid, const MediumSpec& medium)
{
    const std::size_t nz = grid.nz;
    const double dt = grid.dt;
    const auto& c2 = schedule.control2;
    const auto& c4 = schedule.control4;

    /* predictor: signals frozen at t */
    MediumState predicted;
    predicted.states.resize(nz);
    for (std::size_t k = 0; k < nz; ++k) {
        const double e1 = fields.eps1[k];
        const double e3 = fields.eps3[k];
        auto sampler = [&](double tau) {
            return LocalFields{e1, control_value(c2, tau), e3, control_value(c4, tau)};
        };
        predicted.states[k] = step_atoms(medium_state.states[k], sampler, t, dt, medium);
    }

    const double boundary = probe_envelope(schedule.probe, t + dt);
    const auto guess = propagate_signals(predicted, boundary, 0.0, grid, medium);

    /* corrector: signals linear in time between old and predicted profiles */
    WindowState out;
    out.medium.states.resize(nz);
    for (std::size_t k = 0; k < nz; ++k) {
        const double e1a = fields.eps1[k], e1b = guess.eps1[k];
        const double e3a = fields.eps3[k], e3b = guess.eps3[k];
        auto sampler = [&](double tau) {
            const double w = (tau - t) / dt;
            return LocalFields{e1a + w * (e1b - e1a), control_value(c2, tau),
                               e3a + w * (e3b - e3a), control_value(c4, tau)};
        };
        out.medium.states[k] = step_atoms(medium_state.states[k], sampler, t, dt, medium);
    }
    return out;
}

/// d(sigma)/dt over the grid with the signals propagated from `st` itself.
void coupled_rhs(const MediumState& st, const PulseSchedule& schedule, double tau,
                 const Grid& grid, const MediumSpec& medium, std::vector<Matrix4c>& out)
{
    const auto prof = propagate_signals(st, probe_envelope(schedule.probe, tau), 0.0,
                                        grid, medium);
    const double e2 = control_value(schedule.control2, tau);
    const double e4 = control_value(schedule.control4, tau);
    for (std::size_t k = 0; k < grid.nz; ++k) {
        out[k] = liouville_rhs(st.states[k], LocalFields{prof.eps1[k], e2, prof.eps3[k], e4},
                               medium);
    }
}

WindowState step_stage_rk4(const MediumState& medium_state,
                           const PulseSchedule& schedule, double t,
                           const Grid& grid, const MediumSpec& medium)
{
    const std::size_t nz = grid.nz;
    const double dt = grid.dt;
    const auto& s0 = medium_state.states;

    std::vector<Matrix4c> k1(nz), k2(nz), k3(nz), k4(nz);
    MediumState tmp = medium_state;

    coupled_rhs(medium_state, schedule, t, grid, medium, k1);
    for (std::size_t k = 0; k < nz; ++k) {
        tmp.states[k].sigma = s0[k].sigma + (0.5 * dt) * k1[k];
    }
    coupled_rhs(tmp, schedule, t + 0.5 * dt, grid, medium, k2);
    for (std::size_t k = 0; k < nz; ++k) {
        tmp.states[k].sigma = s0[k].sigma + (0.5 * dt) * k2[k];
    }
    coupled_rhs(tmp, schedule, t + 0.5 * dt, grid, medium, k3);
    for (std::size_t k = 0; k < nz; ++k) {
        tmp.states[k].sigma = s0[k].sigma + dt * k3[k];
    }
    coupled_rhs(tmp, schedule, t + dt, grid, medium, k4);

    WindowState out;
    out.medium.states.resize(nz);
    for (std::size_t k = 0; k < nz; ++k) {
        auto& next = out.medium.states[k];
        next.sigma = s0[k].sigma + (dt / 6.0) * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
        next.hermitize();
        if (std::abs(next.trace() - s0[k].trace()) > step_trace_tolerance) {
            std::ostringstream msg;
            msg << "trace drift exceeds 1e-6 in one step at z-index " << k
                << ", t' = " << t << "; reduce dt";
            throw NumericalError("trace", msg.str());
        }
    }
    return out;
}

} // namespace

WindowState advance_window_step(const FieldState& fields,
                                const MediumState& medium_state,
                                const PulseSchedule& schedule, double t,
                                const Grid& grid, const MediumSpec& medium)
{
    const std::size_t nz = grid.nz;
    if (medium_state.states.size() != nz || fields.eps1.size() != nz ||
        fields.eps3.size() != nz) {
        throw InvalidInput("advance_window_step: state sizes differ from grid.nz");
    }
    if (!(grid.dt > 0.0)) {
        throw InvalidInput("advance_window_step: dt must be positive");
    }
    const double t_next = t + grid.dt;

    WindowState out = grid.coupling == Coupling::predictor_corrector
                          ? step_predictor_corrector(fields, medium_state, schedule, t,
                                                     grid, medium)
                          : step_stage_rk4(medium_state, schedule, t, grid, medium);

    for (std::size_t k = 0; k < nz; ++k) {
        if (!out.medium.states[k].all_finite()) {
            std::ostringstream msg;
            msg << "non-finite density matrix at z-index " << k << ", t' = " << t_next;
            throw NumericalError("finite", msg.str());
        }
    }

    auto prof = propagate_signals(out.medium, probe_envelope(schedule.probe, t_next), 0.0,
                                  grid, medium);
    check_finite(out.medium, prof, t_next);

    out.fields.eps1 = std::move(prof.eps1);
    out.fields.eps3 = std::move(prof.eps3);
    out.fields.eps2 = control_value(schedule.control2, t_next);
    out.fields.eps4 = control_value(schedule.control4, t_next);
    return out;
}

} // namespace lambda_store
