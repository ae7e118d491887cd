#pragma once

#include <numbers>

namespace lambda_store {

/// Hartree atomic units: hbar = e = m_e = 1.
namespace au {

inline constexpr double c = 137.035999;
inline constexpr double eps0 = 1.0 / (4.0 * std::numbers::pi);
inline constexpr double hbar = 1.0;
inline constexpr double alpha = 1.0 / c;

/* SI values of the atomic units, used only for reporting */
inline constexpr double bohr_m = 5.29177210903e-11;
inline constexpr double time_s = 2.4188843265857e-17;
inline constexpr double field_v_per_m = 5.14220674763e11;
inline constexpr double si_c = 299792458.0;
inline constexpr double si_eps0 = 8.8541878128e-12;

inline constexpr double length_to_m(double x) { return x * bohr_m; }
inline constexpr double time_to_s(double t) { return t * time_s; }

/// Number density in atoms per bohr^3 to atoms per cm^3.
inline constexpr double density_to_per_cm3(double n)
{
    const double bohr_cm = bohr_m * 100.0;
    return n / (bohr_cm * bohr_cm * bohr_cm);
}

/// Cycle-averaged intensity c eps0 E^2 / 2 of a field envelope, in W/cm^2.
inline constexpr double field_to_w_per_cm2(double e)
{
    const double e_si = e * field_v_per_m;
    return 0.5 * si_c * si_eps0 * e_si * e_si * 1e-4;
}

} // namespace au

/// Level energies of the double-Lambda atom (a.u.). Lower states b, c;
/// upper states a, d.
struct LevelScheme
{
    double e_a = 0.0;
    double e_b = 0.0;
    double e_c = 0.0;
    double e_d = 0.0;

    bool operator==(const LevelScheme&) const = default;
};

/// Partial spontaneous decay rates; gamma_ab is the rate of |a> -> |b>.
struct DecayRates
{
    double gamma_ab = 0.0;
    double gamma_ac = 0.0;
    double gamma_db = 0.0;
    double gamma_dc = 0.0;

    double total_a() const { return gamma_ab + gamma_ac; }
    double total_d() const { return gamma_db + gamma_dc; }

    bool operator==(const DecayRates&) const = default;
};

/// Resonant angular frequencies of the four couplings: 1 (b-a), 2 (c-a),
/// 3 (b-d), 4 (c-d).
struct TransitionFrequencies
{
    double omega1 = 0.0;
    double omega2 = 0.0;
    double omega3 = 0.0;
    double omega4 = 0.0;

    bool operator==(const TransitionFrequencies&) const = default;
};

struct MediumSpec
{
    LevelScheme levels;
    DecayRates decays;
    double density = 0.0; ///< atoms per bohr^3
    double length = 0.0;  ///< sample length, bohr

    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
    double d4 = 0.0;

    double omega1 = 0.0;
    double omega2 = 0.0;
    double omega3 = 0.0;
    double omega4 = 0.0;

    bool operator==(const MediumSpec&) const = default;
};

/// Resonance conditions hbar*omega_j = E_upper - E_lower. Throws
/// InvalidInput unless E_b < E_c < E_a < E_d.
TransitionFrequencies derive_frequencies(const LevelScheme& levels);

/// Inverts the single-channel spontaneous emission rate
/// gamma = (4/3) alpha^3 omega^3 d^2 for the transition dipole d.
double derive_dipole(double gamma, double omega);

/// Builds a medium with frequencies from the level scheme and dipoles from
/// the partial decay rates of each transition.
MediumSpec make_medium(const LevelScheme& levels, const DecayRates& decays,
                       double density, double length);

/// The canonical medium: E = (-0.10, -0.20, -0.18, -0.05), all partial
/// rates 2.4e-9, N = 3e-13, L = 3e7 (all a.u.).
MediumSpec paper_medium();

/// Throws InvalidInput if any invariant of MediumSpec is violated.
void validate(const MediumSpec& medium);

} // namespace lambda_store
