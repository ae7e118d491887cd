#pragma once

#include <vector>

namespace lambda_store {

/// sin^2 probe on channel 1, nonzero on [t1, t2].
struct ProbeSpec
{
    double eps10 = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;

    double length() const { return t2 - t1; }

    bool operator==(const ProbeSpec&) const = default;
};

enum class SwitchDirection { on, off };

struct SwitchEvent
{
    double t_switch = 0.0;
    SwitchDirection direction = SwitchDirection::on;
    double ramp_tau = 0.0;

    bool operator==(const SwitchEvent&) const = default;
};

/// Spatially uniform control field. Without events it sits at `level`
/// forever; otherwise it starts in the state opposite to the first event.
struct ControlChannel
{
    double level = 0.0;
    std::vector<SwitchEvent> events;

    bool initially_on() const
    {
        return events.empty() || events.front().direction == SwitchDirection::off;
    }

    bool operator==(const ControlChannel&) const = default;
};

struct PulseSchedule
{
    ProbeSpec probe;
    ControlChannel control2;
    ControlChannel control4;

    bool operator==(const PulseSchedule&) const = default;
};

double probe_envelope(const ProbeSpec& spec, double t);

/// Smooth tanh switching. Each event multiplies either the running
/// on-fraction g (off event) or its complement 1 - g (on event) by
/// (1 - tanh((t - t_switch) / ramp_tau)) / 2. The result lies in [0, level]
/// and is C-infinity in t.
double control_value(const ControlChannel& channel, double t);

/// Throws InvalidInput on t2 <= t1, eps10 < 0, ramp_tau <= 0, negative
/// level, unordered or non-alternating events.
void validate(const ProbeSpec& probe);
void validate(const ControlChannel& channel, const char* name);
void validate(const PulseSchedule& schedule);

/// Latest switch time over both control channels, or the probe end if that
/// is later.
double last_scheduled_time(const PulseSchedule& schedule);

} // namespace lambda_store
