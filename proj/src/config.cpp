#include "lambda_store/config.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>

#include "lambda_store/error.hpp"

namespace lambda_store {

namespace {

const std::vector<std::string> keys = {
    "run.scenario",     "run.t_start",      "run.record_every", "run.peak_fraction",
    "medium.e_a",       "medium.e_b",       "medium.e_c",       "medium.e_d",
    "medium.gamma_ab",  "medium.gamma_ac",  "medium.gamma_db",  "medium.gamma_dc",
    "medium.density",   "medium.length",    "medium.d1",        "medium.d2",
    "medium.d3",        "medium.d4",        "grid.nz",          "grid.dt",
    "grid.nt",          "grid.coupling",    "probe.eps10",      "probe.t1",
    "probe.t2",         "control2.level",   "control2.ramp_tau", "control2.events",
    "control4.level",   "control4.ramp_tau", "control4.events",
};

bool known_key(const std::string& key)
{
    for (const auto& k : keys) {
        if (k == key) {
            return true;
        }
    }
    return false;
}

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string format_double(double x)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

[[noreturn]] void range_error(const std::string& key, const std::string& value,
                              const std::string& range)
{
    throw ConfigError(key, key + " = " + value + " is out of range: valid range is " + range);
}

double to_double(const std::string& key, const std::string& value)
{
    std::string_view v = value;
    if (!v.empty() && v.front() == '+') {
        v.remove_prefix(1);
    }
    double x = 0.0;
    auto res = std::from_chars(v.data(), v.data() + v.size(), x);
    if (v.empty() || res.ec != std::errc() || res.ptr != v.data() + v.size()) {
        throw ConfigError(key, key + ": cannot parse '" + value + "' as a number");
    }
    if (!std::isfinite(x)) {
        range_error(key, value, "finite numbers");
    }
    return x;
}

std::size_t to_count(const std::string& key, const std::string& value)
{
    std::size_t n = 0;
    auto res = std::from_chars(value.data(), value.data() + value.size(), n);
    if (value.empty() || res.ec != std::errc() || res.ptr != value.data() + value.size()) {
        throw ConfigError(key, key + ": cannot parse '" + value + "' as a non-negative integer");
    }
    return n;
}

double positive(const std::string& key, const std::string& value)
{
    const double x = to_double(key, value);
    if (!(x > 0.0)) {
        range_error(key, value, "(0, inf)");
    }
    return x;
}

double non_negative(const std::string& key, const std::string& value)
{
    const double x = to_double(key, value);
    if (!(x >= 0.0)) {
        range_error(key, value, "[0, inf)");
    }
    return x;
}

struct ParsedEvent
{
    double t = 0.0;
    SwitchDirection direction = SwitchDirection::on;
    std::optional<double> tau;
};

/// `none` or a comma separated list of `on@t` / `off@t`, each optionally
/// followed by `:tau`.
std::vector<ParsedEvent> parse_events(const std::string& key, const std::string& value)
{
    std::vector<ParsedEvent> out;
    if (value == "none") {
        return out;
    }
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string tok(trim(item));
        const auto at = tok.find('@');
        if (at == std::string::npos) {
            throw ConfigError(key, key + ": expected on@t or off@t, got '" + tok + "'");
        }
        ParsedEvent ev;
        const auto dir = tok.substr(0, at);
        if (dir == "on") {
            ev.direction = SwitchDirection::on;
        } else if (dir == "off") {
            ev.direction = SwitchDirection::off;
        } else {
            throw ConfigError(key, key + ": unknown switch direction '" + dir + "'");
        }
        auto rest = tok.substr(at + 1);
        const auto colon = rest.find(':');
        if (colon != std::string::npos) {
            const auto tau = rest.substr(colon + 1);
            ev.tau = positive(key, tau);
            rest = rest.substr(0, colon);
        }
        ev.t = to_double(key, rest);
        out.push_back(ev);
    }
    if (out.empty()) {
        throw ConfigError(key, key + ": empty event list (use 'none')");
    }
    return out;
}

std::string emit_events(const ControlChannel& ch, double tau)
{
    if (ch.events.empty()) {
        return "none";
    }
    std::string out;
    for (const auto& ev : ch.events) {
        if (!out.empty()) {
            out += ", ";
        }
        out += ev.direction == SwitchDirection::on ? "on@" : "off@";
        out += format_double(ev.t_switch);
        if (ev.ramp_tau != tau) {
            out += ":" + format_double(ev.ramp_tau);
        }
    }
    return out;
}

std::string_view coupling_name(Coupling c)
{
    return c == Coupling::predictor_corrector ? "predictor_corrector" : "stage_rk4";
}

struct ChannelKeys
{
    std::optional<double> level;
    std::optional<double> tau;
    std::optional<std::vector<ParsedEvent>> events;
};

void apply_channel(ControlChannel& ch, const ChannelKeys& k)
{
    if (k.level) {
        ch.level = *k.level;
    }
    if (k.events) {
        ch.events.clear();
        for (const auto& ev : *k.events) {
            ch.events.push_back({ev.t, ev.direction, ev.tau.value_or(k.tau.value_or(
                                                         defaults::ramp_tau))});
        }
    } else if (k.tau) {
        for (auto& ev : ch.events) {
            ev.ramp_tau = *k.tau;
        }
    }
}

double ramp_tau_of(const ControlChannel& ch)
{
    return ch.events.empty() ? defaults::ramp_tau : ch.events.front().ramp_tau;
}

} // namespace

const std::vector<std::string>& config_keys()
{
    return keys;
}

std::pair<std::string, std::string> parse_override(std::string_view item)
{
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError(std::string(item), "override '" + std::string(item) +
                                                 "' must have the form section.key=value");
    }
    std::string key(trim(item.substr(0, eq)));
    std::string value(trim(item.substr(eq + 1)));
    if (!known_key(key)) {
        throw ConfigError(key, "unknown key '" + key + "'");
    }
    return {key, value};
}

ScenarioConfig parse_config(std::string_view text, ScenarioKind fallback,
                            const Overrides& overrides)
{
    std::map<std::string, std::string> values;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos
                                                                  : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            const std::string bad(line);
            throw ConfigError(bad, "line " + std::to_string(line_no) +
                                       ": expected 'section.key = value', got '" + bad + "'");
        }
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (!known_key(key)) {
            throw ConfigError(key, "unknown key '" + key + "' on line " +
                                       std::to_string(line_no));
        }
        if (values.count(key)) {
            throw ConfigError(key, "duplicate key '" + key + "' on line " +
                                       std::to_string(line_no));
        }
        values[key] = value;
    }
    for (const auto& [key, value] : overrides) {
        if (!known_key(key)) {
            throw ConfigError(key, "unknown key '" + key + "'");
        }
        values[key] = value;
    }

    ScenarioKind kind = fallback;
    if (auto it = values.find("run.scenario"); it != values.end()) {
        const auto parsed = parse_scenario_kind(it->second);
        if (!parsed) {
            throw ConfigError(it->first, "run.scenario: unknown scenario '" + it->second +
                                             "'");
        }
        kind = *parsed;
    }

    ScenarioConfig cfg = preset(kind);
    auto& m = cfg.medium;
    auto& s = cfg.schedule;
    std::optional<double> dipoles[4];
    bool nt_auto = true;
    std::optional<std::size_t> nt;
    ChannelKeys ch2, ch4;

    for (const auto& [key, v] : values) {
        if (key == "run.scenario") {
            continue;
        } else if (key == "run.t_start") {
            cfg.t_start = to_double(key, v);
        } else if (key == "run.record_every") {
            cfg.record_every = to_count(key, v);
            if (cfg.record_every < 1) {
                range_error(key, v, "[1, inf)");
            }
        } else if (key == "run.peak_fraction") {
            cfg.peak_fraction = to_double(key, v);
            if (!(cfg.peak_fraction > 0.0 && cfg.peak_fraction < 1.0)) {
                range_error(key, v, "(0, 1)");
            }
        } else if (key == "medium.e_a") {
            m.levels.e_a = to_double(key, v);
        } else if (key == "medium.e_b") {
            m.levels.e_b = to_double(key, v);
        } else if (key == "medium.e_c") {
            m.levels.e_c = to_double(key, v);
        } else if (key == "medium.e_d") {
            m.levels.e_d = to_double(key, v);
        } else if (key == "medium.gamma_ab") {
            m.decays.gamma_ab = non_negative(key, v);
        } else if (key == "medium.gamma_ac") {
            m.decays.gamma_ac = non_negative(key, v);
        } else if (key == "medium.gamma_db") {
            m.decays.gamma_db = non_negative(key, v);
        } else if (key == "medium.gamma_dc") {
            m.decays.gamma_dc = non_negative(key, v);
        } else if (key == "medium.density") {
            m.density = positive(key, v);
        } else if (key == "medium.length") {
            m.length = positive(key, v);
        } else if (key.starts_with("medium.d")) {
            const int j = key.back() - '1';
            if (v != "auto") {
                dipoles[j] = positive(key, v);
            }
        } else if (key == "grid.nz") {
            cfg.grid.nz = to_count(key, v);
            if (cfg.grid.nz < 2) {
                range_error(key, v, "[2, inf)");
            }
        } else if (key == "grid.dt") {
            cfg.grid.dt = positive(key, v);
        } else if (key == "grid.nt") {
            if (v != "auto") {
                nt = to_count(key, v);
                nt_auto = false;
                if (*nt < 1) {
                    range_error(key, v, "[1, inf) or auto");
                }
            }
        } else if (key == "grid.coupling") {
            if (v == "stage_rk4") {
                cfg.grid.coupling = Coupling::stage_rk4;
            } else if (v == "predictor_corrector") {
                cfg.grid.coupling = Coupling::predictor_corrector;
            } else {
                range_error(key, v, "{stage_rk4, predictor_corrector}");
            }
        } else if (key == "probe.eps10") {
            s.probe.eps10 = non_negative(key, v);
        } else if (key == "probe.t1") {
            s.probe.t1 = to_double(key, v);
        } else if (key == "probe.t2") {
            s.probe.t2 = to_double(key, v);
        } else {
            auto& ch = key.starts_with("control2.") ? ch2 : ch4;
            const auto field = key.substr(key.find('.') + 1);
            if (field == "level") {
                ch.level = non_negative(key, v);
            } else if (field == "ramp_tau") {
                ch.tau = positive(key, v);
            } else {
                ch.events = parse_events(key, v);
            }
        }
    }

    const auto& lv = m.levels;
    if (!(lv.e_b < lv.e_c)) {
        range_error("medium.e_c", format_double(lv.e_c), "(medium.e_b, medium.e_a)");
    }
    if (!(lv.e_c < lv.e_a)) {
        range_error("medium.e_a", format_double(lv.e_a), "(medium.e_c, medium.e_d)");
    }
    if (!(lv.e_a < lv.e_d)) {
        range_error("medium.e_d", format_double(lv.e_d), "(medium.e_a, inf)");
    }
    const auto f = derive_frequencies(lv);
    m.omega1 = f.omega1;
    m.omega2 = f.omega2;
    m.omega3 = f.omega3;
    m.omega4 = f.omega4;

    const double gammas[4] = {m.decays.gamma_ab, m.decays.gamma_ac, m.decays.gamma_db,
                              m.decays.gamma_dc};
    const double omegas[4] = {m.omega1, m.omega2, m.omega3, m.omega4};
    double* ds[4] = {&m.d1, &m.d2, &m.d3, &m.d4};
    for (int j = 0; j < 4; ++j) {
        if (dipoles[j]) {
            *ds[j] = *dipoles[j];
        } else if (gammas[j] > 0.0) {
            *ds[j] = derive_dipole(gammas[j], omegas[j]);
        } else {
            const std::string key = "medium.d" + std::to_string(j + 1);
            throw ConfigError(key, key + " = auto needs a positive decay rate on the transition;"
                                         " give the dipole explicitly");
        }
    }

    if (!(s.probe.t2 > s.probe.t1)) {
        range_error("probe.t2", format_double(s.probe.t2),
                    "(probe.t1 = " + format_double(s.probe.t1) + ", inf)");
    }
    apply_channel(s.control2, ch2);
    apply_channel(s.control4, ch4);
    for (const auto* name : {"control2", "control4"}) {
        const auto& ch = std::string(name) == "control2" ? s.control2 : s.control4;
        try {
            validate(ch, name);
        } catch (const InvalidInput& e) {
            throw ConfigError(std::string(name) + ".events", e.what());
        }
    }

    cfg.grid.dz = m.length / static_cast<double>(cfg.grid.nz - 1);
    cfg.grid.nt = nt_auto ? default_step_count(s, cfg.t_start, cfg.grid.dt) : *nt;

    const double needed = last_scheduled_time(s) + s.probe.length();
    if (cfg.t_end() < needed) {
        range_error("grid.nt", std::to_string(cfg.grid.nt),
                    "[" + std::to_string(static_cast<std::size_t>(
                              std::ceil((needed - cfg.t_start) / cfg.grid.dt))) +
                        ", inf) so the horizon covers every event plus one probe length");
    }

    try {
        validate(cfg);
    } catch (const InvalidInput& e) {
        throw ConfigError("", e.what());
    }
    return cfg;
}

std::string emit_config(const ScenarioConfig& c)
{
    const auto& m = c.medium;
    const auto& s = c.schedule;
    const double gammas[4] = {m.decays.gamma_ab, m.decays.gamma_ac, m.decays.gamma_db,
                              m.decays.gamma_dc};
    const double omegas[4] = {m.omega1, m.omega2, m.omega3, m.omega4};
    const double ds[4] = {m.d1, m.d2, m.d3, m.d4};
    auto dipole = [&](int j) {
        if (gammas[j] > 0.0 && derive_dipole(gammas[j], omegas[j]) == ds[j]) {
            return std::string("auto");
        }
        return format_double(ds[j]);
    };
    const double tau2 = ramp_tau_of(s.control2);
    const double tau4 = ramp_tau_of(s.control4);

    std::ostringstream out;
    out << "# lambda-store configuration, atomic units\n";
    out << "run.scenario = " << to_string(c.kind) << '\n';
    out << "run.t_start = " << format_double(c.t_start) << '\n';
    out << "run.record_every = " << c.record_every << '\n';
    out << "run.peak_fraction = " << format_double(c.peak_fraction) << '\n';
    out << "medium.e_a = " << format_double(m.levels.e_a) << '\n';
    out << "medium.e_b = " << format_double(m.levels.e_b) << '\n';
    out << "medium.e_c = " << format_double(m.levels.e_c) << '\n';
    out << "medium.e_d = " << format_double(m.levels.e_d) << '\n';
    out << "medium.gamma_ab = " << format_double(gammas[0]) << '\n';
    out << "medium.gamma_ac = " << format_double(gammas[1]) << '\n';
    out << "medium.gamma_db = " << format_double(gammas[2]) << '\n';
    out << "medium.gamma_dc = " << format_double(gammas[3]) << '\n';
    out << "medium.density = " << format_double(m.density) << '\n';
    out << "medium.length = " << format_double(m.length) << '\n';
    for (int j = 0; j < 4; ++j) {
        out << "medium.d" << j + 1 << " = " << dipole(j) << '\n';
    }
    out << "grid.nz = " << c.grid.nz << '\n';
    out << "grid.dt = " << format_double(c.grid.dt) << '\n';
    out << "grid.nt = " << c.grid.nt << '\n';
    out << "grid.coupling = " << coupling_name(c.grid.coupling) << '\n';
    out << "probe.eps10 = " << format_double(s.probe.eps10) << '\n';
    out << "probe.t1 = " << format_double(s.probe.t1) << '\n';
    out << "probe.t2 = " << format_double(s.probe.t2) << '\n';
    out << "control2.level = " << format_double(s.control2.level) << '\n';
    out << "control2.ramp_tau = " << format_double(tau2) << '\n';
    out << "control2.events = " << emit_events(s.control2, tau2) << '\n';
    out << "control4.level = " << format_double(s.control4.level) << '\n';
    out << "control4.ramp_tau = " << format_double(tau4) << '\n';
    out << "control4.events = " << emit_events(s.control4, tau4) << '\n';
    return out.str();
}

} // namespace lambda_store
