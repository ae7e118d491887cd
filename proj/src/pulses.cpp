#include "lambda_store/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "lambda_store/error.hpp"

namespace lambda_store {

double probe_envelope(const ProbeSpec& spec, double t)
{
    if (t < spec.t1 || t > spec.t2) {
        return 0.0;
    }
    const double s = std::sin(std::numbers::pi * (t - spec.t2) / (spec.t2 - spec.t1));
    return spec.eps10 * s * s;
}

double control_value(const ControlChannel& channel, double t)
{
    double g = channel.initially_on() ? 1.0 : 0.0;
    for (const auto& ev : channel.events) {
        const double th = std::tanh((t - ev.t_switch) / ev.ramp_tau);
        if (ev.direction == SwitchDirection::off) {
            g *= 0.5 * (1.0 - th);
        } else {
            g = 1.0 - (1.0 - g) * 0.5 * (1.0 - th);
        }
    }
    return channel.level * g;
}

void validate(const ProbeSpec& probe)
{
    if (!(probe.t2 > probe.t1)) {
        std::ostringstream msg;
        msg << "probe.t2 = " << probe.t2 << " must exceed probe.t1 = " << probe.t1;
        throw InvalidInput(msg.str());
    }
    if (!(probe.eps10 >= 0.0) || !std::isfinite(probe.eps10)) {
        throw InvalidInput("probe.eps10 must be finite and >= 0");
    }
}

void validate(const ControlChannel& channel, const char* name)
{
    const std::string n(name);
    if (!(channel.level >= 0.0) || !std::isfinite(channel.level)) {
        throw InvalidInput(n + ".level must be finite and >= 0");
    }
    for (std::size_t i = 0; i < channel.events.size(); ++i) {
        const auto& ev = channel.events[i];
        if (!(ev.ramp_tau > 0.0) || !std::isfinite(ev.ramp_tau)) {
            throw InvalidInput(n + ": ramp_tau must be positive");
        }
        if (!std::isfinite(ev.t_switch)) {
            throw InvalidInput(n + ": switch time must be finite");
        }
        if (i > 0) {
            const auto& prev = channel.events[i - 1];
            if (!(ev.t_switch > prev.t_switch)) {
                throw InvalidInput(n + ": events must be strictly time-ordered");
            }
            if (ev.direction == prev.direction) {
                throw InvalidInput(n + ": events must alternate between on and off");
            }
        }
    }
}

void validate(const PulseSchedule& schedule)
{
    validate(schedule.probe);
    validate(schedule.control2, "control2");
    validate(schedule.control4, "control4");
}

double last_scheduled_time(const PulseSchedule& schedule)
{
    double last = schedule.probe.t2;
    for (const auto* ch : {&schedule.control2, &schedule.control4}) {
        if (!ch->events.empty()) {
            last = std::max(last, ch->events.back().t_switch);
        }
    }
    return last;
}

} // namespace lambda_store
