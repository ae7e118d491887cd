#include "lambda_store/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lambda_store/error.hpp"

namespace lambda_store {

std::string_view to_string(ScenarioKind kind)
{
    switch (kind) {
    case ScenarioKind::single_lambda: return "single_lambda";
    case ScenarioKind::convert: return "convert";
    case ScenarioKind::dual_release_4_first: return "dual_release_4_first";
    case ScenarioKind::dual_release_2_first: return "dual_release_2_first";
    case ScenarioKind::custom: return "custom";
    }
    return "custom";
}

std::optional<ScenarioKind> parse_scenario_kind(std::string_view name)
{
    for (auto kind : all_scenario_kinds) {
        if (to_string(kind) == name) {
            return kind;
        }
    }
    return std::nullopt;
}

namespace {

SwitchEvent on_at(double t) { return {t, SwitchDirection::on, defaults::ramp_tau}; }
SwitchEvent off_at(double t) { return {t, SwitchDirection::off, defaults::ramp_tau}; }

} // namespace

std::size_t default_step_count(const PulseSchedule& schedule, double t_start, double dt)
{
    const double end = last_scheduled_time(schedule) +
                       defaults::tail_pulse_lengths * schedule.probe.length();
    return static_cast<std::size_t>(std::ceil((end - t_start) / dt));
}

ScenarioConfig preset(ScenarioKind kind)
{
    ScenarioConfig cfg;
    cfg.kind = kind;
    cfg.medium = paper_medium();

    auto& s = cfg.schedule;
    s.probe = {defaults::probe_eps10, defaults::probe_t1, defaults::probe_t2};
    s.control2.level = defaults::control_level;
    s.control4.level = defaults::control_level;

    switch (kind) {
    case ScenarioKind::single_lambda:
        s.control2.events = {off_at(defaults::store_off), on_at(defaults::release_on)};
        s.control4.level = 0.0;
        break;
    case ScenarioKind::convert:
        s.control2.events = {off_at(defaults::store_off)};
        s.control4.events = {on_at(defaults::release_on)};
        break;
    case ScenarioKind::dual_release_4_first:
        s.control2.events = {off_at(defaults::store_off), on_at(defaults::second_release_on)};
        s.control4.events = {on_at(defaults::release_on)};
        break;
    case ScenarioKind::dual_release_2_first:
        s.control2.events = {off_at(defaults::store_off), on_at(defaults::release_on)};
        s.control4.events = {on_at(defaults::second_release_on)};
        break;
    case ScenarioKind::custom:
        s.control4.level = 0.0;
        break;
    }

    const std::size_t nt = default_step_count(s, cfg.t_start, defaults::dt);
    cfg.grid = Grid::make(cfg.medium.length, defaults::nz, defaults::dt, nt);
    return cfg;
}

void validate(const ScenarioConfig& cfg)
{
    validate(cfg.medium);
    validate(cfg.grid, cfg.medium.length);
    validate(cfg.schedule);
    if (cfg.record_every < 1) {
        throw InvalidInput("run.record_every must be >= 1");
    }
    if (!(cfg.peak_fraction > 0.0 && cfg.peak_fraction < 1.0)) {
        throw InvalidInput("run.peak_fraction must lie in (0, 1)");
    }
    const double needed = last_scheduled_time(cfg.schedule) + cfg.schedule.probe.length();
    if (cfg.t_end() < needed) {
        std::ostringstream msg;
        msg << "horizon ends at t' = " << cfg.t_end()
            << " but must reach the last scheduled time plus one probe length (" << needed
            << "); raise grid.nt";
        throw InvalidInput(msg.str());
    }
}

std::optional<std::string> first_violated_monitor(const RunMonitors& m)
{
    if (!(m.max_trace_error < monitor_limits::trace)) {
        return "trace";
    }
    if (!(m.max_hermiticity_residual < monitor_limits::hermiticity)) {
        return "hermiticity";
    }
    if (!(m.min_eigenvalue >= monitor_limits::min_eigenvalue)) {
        return "positivity";
    }
    if (!(m.max_phase_residual < monitor_limits::phase)) {
        return "phase";
    }
    return std::nullopt;
}

std::size_t mid_sample_index(const Grid& grid)
{
    return (grid.nz - 1) / 2;
}

namespace {

double phase_residual(const DensityMatrix& s)
{
    const double scale = s.max_abs();
    if (scale == 0.0) {
        return 0.0;
    }
    const double r = std::max({std::abs(s(A, B).real()), std::abs(s(D, B).real()),
                               std::abs(s(B, C).imag()), std::abs(s(A, D).imag())});
    return r / scale;
}

void update_monitors(RunMonitors& mon, const MediumState& ms, bool eigen_all)
{
    for (const auto& s : ms.states) {
        mon.max_trace_error = std::max(mon.max_trace_error, std::abs(s.trace() - 1.0));
        mon.max_hermiticity_residual =
            std::max(mon.max_hermiticity_residual, s.hermiticity_residual());
        mon.max_phase_residual = std::max(mon.max_phase_residual, phase_residual(s));
        if (eigen_all) {
            mon.min_eigenvalue = std::min(mon.min_eigenvalue, s.min_eigenvalue());
        }
    }
}

} // namespace

SimulationRecord run_scenario(const ScenarioConfig& config)
{
    validate(config);

    const auto& grid = config.grid;
    const auto& medium = config.medium;
    const auto& schedule = config.schedule;

    SimulationRecord rec;
    rec.config = config;
    rec.mid_index = mid_sample_index(grid);
    rec.exit_series.reserve(grid.nt);
    rec.population_trace.reserve(grid.nt);

    MediumState ms = MediumState::ground(grid.nz);
    FieldState fields = fields_at(ms, schedule, config.t_start, grid, medium);

    for (std::size_t n = 0; n < grid.nt; ++n) {
        const double t = config.t_start + static_cast<double>(n) * grid.dt;
        auto next = advance_window_step(fields, ms, schedule, t, grid, medium);
        fields = std::move(next.fields);
        ms = std::move(next.medium);

        const double t_next = config.t_start + static_cast<double>(n + 1) * grid.dt;
        rec.exit_series.push_back(
            {t_next, fields.eps1.back(), fields.eps3.back(), fields.eps2, fields.eps4});

        const bool strided = (n + 1) % config.record_every == 0;
        update_monitors(rec.monitors, ms, strided);

        const auto& mid = ms.states[rec.mid_index];
        const double mid_eig = mid.min_eigenvalue();
        rec.monitors.min_eigenvalue = std::min(rec.monitors.min_eigenvalue, mid_eig);
        rec.population_trace.push_back({t_next, mid.trace(), mid_eig});

        if (strided) {
            for (std::size_t k = 0; k < grid.nz; ++k) {
                rec.coherence_map.push_back({t_next, grid.z(k), ms.states[k](B, C)});
            }
            DiagnosticSample d;
            d.t = t_next;
            d.point.fields = LocalFields{fields.eps1[rec.mid_index], fields.eps2,
                                        fields.eps3[rec.mid_index], fields.eps4};
            d.point.sigma_bc = mid(B, C).real();
            d.polariton = polariton_sample(d.point, medium);
            rec.diagnostics_series.push_back(d);
        }
    }

    std::vector<double> ts, e1, e3;
    ts.reserve(rec.exit_series.size());
    for (const auto& s : rec.exit_series) {
        ts.push_back(s.t);
        e1.push_back(s.eps1);
        e3.push_back(s.eps3);
    }
    const double min_height = config.peak_fraction * schedule.probe.eps10;
    rec.peaks_eps1 = detect_peaks(ts, e1, min_height);
    rec.peaks_eps3 = detect_peaks(ts, e3, min_height);
    return rec;
}

std::optional<double> release_boundary(const PulseSchedule& schedule)
{
    std::optional<double> first_on;
    double tau_on = 0.0;
    for (const auto* ch : {&schedule.control2, &schedule.control4}) {
        for (const auto& ev : ch->events) {
            if (ev.direction == SwitchDirection::on &&
                (!first_on || ev.t_switch < *first_on)) {
                first_on = ev.t_switch;
                tau_on = ev.ramp_tau;
            }
        }
    }
    if (!first_on) {
        return std::nullopt;
    }
    std::optional<double> last_off;
    for (const auto* ch : {&schedule.control2, &schedule.control4}) {
        for (const auto& ev : ch->events) {
            if (ev.direction == SwitchDirection::off && ev.t_switch < *first_on &&
                (!last_off || ev.t_switch > *last_off)) {
                last_off = ev.t_switch;
            }
        }
    }
    if (last_off) {
        return 0.5 * (*last_off + *first_on);
    }
    return *first_on - 5.0 * tau_on;
}

std::vector<Peak> released_peaks(const SimulationRecord& record, int channel)
{
    const auto boundary = release_boundary(record.config.schedule);
    if (!boundary) {
        return {};
    }
    const auto& peaks = channel == 3 ? record.peaks_eps3 : record.peaks_eps1;
    std::vector<Peak> out;
    for (const auto& p : peaks) {
        if (p.t_center > *boundary) {
            out.push_back(p);
        }
    }
    return out;
}

double photon_flux_weight(double omega)
{
    return au::c * au::eps0 / (2.0 * au::hbar * omega);
}

namespace {

/// Trapezoidal integral of eps^2 over exit samples with t in [a, b].
double integrate_squared(const std::vector<ExitSample>& series, int channel, double a,
                         double b)
{
    double sum = 0.0;
    for (std::size_t i = 1; i < series.size(); ++i) {
        const auto& p = series[i - 1];
        const auto& q = series[i];
        if (p.t < a || q.t > b) {
            continue;
        }
        const double yp = channel == 3 ? p.eps3 : p.eps1;
        const double yq = channel == 3 ? q.eps3 : q.eps1;
        sum += 0.5 * (q.t - p.t) * (yp * yp + yq * yq);
    }
    return sum;
}

/// Photon number in the windows of the released peaks of one channel. The
/// windows tile [boundary, end], split at the minimum between neighbours.
double released_quanta(const SimulationRecord& rec, int channel, double boundary)
{
    const auto peaks = released_peaks(rec, channel);
    if (peaks.empty()) {
        return 0.0;
    }
    const auto& series = rec.exit_series;
    const double omega = channel == 3 ? rec.config.medium.omega3 : rec.config.medium.omega1;

    std::vector<double> edges{boundary};
    for (std::size_t i = 1; i < peaks.size(); ++i) {
        double t_min = peaks[i - 1].t_center;
        double y_min = std::numeric_limits<double>::infinity();
        for (const auto& s : series) {
            if (s.t > peaks[i - 1].t_center && s.t < peaks[i].t_center) {
                const double y = channel == 3 ? s.eps3 : s.eps1;
                if (y < y_min) {
                    y_min = y;
                    t_min = s.t;
                }
            }
        }
        edges.push_back(t_min);
    }
    edges.push_back(series.back().t);

    double q = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        q += integrate_squared(series, channel, edges[i], edges[i + 1]);
    }
    return q * photon_flux_weight(omega);
}

} // namespace

QuantaSplit released_energy_split(const SimulationRecord& record)
{
    const auto boundary = release_boundary(record.config.schedule);
    if (!boundary ||
        (released_peaks(record, 1).empty() && released_peaks(record, 3).empty())) {
        throw NothingReleased("nothing released: no peak after the release boundary");
    }
    const double q1 = released_quanta(record, 1, *boundary);
    const double q3 = released_quanta(record, 3, *boundary);
    const double total = q1 + q3;
    if (!(total > 0.0)) {
        throw NothingReleased("nothing released: released photon number is zero");
    }
    return {q1 / total, q3 / total};
}

QuantaBudget quanta_budget(const SimulationRecord& record)
{
    const auto& cfg = record.config;
    const auto& probe = cfg.schedule.probe;
    const auto& series = record.exit_series;
    const double w1 = photon_flux_weight(cfg.medium.omega1);
    const double w3 = photon_flux_weight(cfg.medium.omega3);

    QuantaBudget b;
    /* integral of sin^4 over one period is 3/8 of its length */
    b.input = w1 * probe.eps10 * probe.eps10 * 0.375 * probe.length();
    if (series.empty()) {
        return b;
    }

    const double start = cfg.t_start;
    const double end = series.back().t;
    const auto boundary = release_boundary(cfg.schedule);
    const double split = boundary ? *boundary : end;

    b.untrapped = w1 * integrate_squared(series, 1, start, split) +
                  w3 * integrate_squared(series, 3, start, split);
    if (boundary) {
        b.released1 = w1 * integrate_squared(series, 1, split, end);
        b.released3 = w3 * integrate_squared(series, 3, split, end);
    }
    return b;
}

} // namespace lambda_store
