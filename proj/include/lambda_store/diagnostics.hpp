#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "lambda_store/bloch.hpp"
#include "lambda_store/model.hpp"

namespace lambda_store {

/// Adiabatic-following relation for the Raman coherence of one Lambda arm:
/// sigma_bc = -(eps_s d_s) / (eps_c d_c). Throws AdiabaticInapplicable when
/// the control coupling vanishes.
double adiabatic_sigma_bc(double eps_s, double eps_c, double d_s, double d_c);

/// 2 N hbar omega1 / eps0, the atomic weight in the polariton expressions.
double polariton_atomic_weight(const MediumSpec& medium);

/// Dark-state polariton amplitude
///
///   psi = [ (d2 e2/d1) e1 - W sigma_bc + (d4 e4 w1/(d3 w3)) e3 ]
///         / sqrt( (d2/d1)^2 e2^2 + W + d4^2 w1/(d3^2 w3) e4^2 ),
///
/// W = 2 N hbar w1 / eps0, evaluated literally (mixed units).
double polariton_psi(const LocalFields& fields, double sigma_bc, const MediumSpec& medium);

/// Polariton group velocity
/// c [X2 + X4] / [X2 + W + X4], X2 = (d2/d1)^2 e2^2, X4 = d4^2 w1/(d3^2 w3) e4^2.
double polariton_velocity(double eps2, double eps4, const MediumSpec& medium);

/// Simulated coherence and fields at one (z, t') point.
struct CoherenceSample
{
    LocalFields fields;
    double sigma_bc = 0.0;
};

enum class AdiabaticBranch { probe_control2, signal_control4 };

struct Mismatch
{
    AdiabaticBranch branch = AdiabaticBranch::signal_control4;
    double ratio = 0.0;
    /// ratio * sqrt(omega3/omega1) on the release branch; equal to ratio on
    /// the storage branch.
    double corrected_ratio = 0.0;
};

/// Minimum |sigma_bc| for which a mismatch ratio is formed.
inline constexpr double min_stored_coherence = 1e-15;

/// Ratio of the adiabatic prediction to the simulated coherence. Uses the
/// (3, 4) branch when control 4 is on (both controls on included), the
/// (1, 2) branch when only control 2 is on.
Mismatch nonadiabatic_mismatch(const CoherenceSample& sample, const MediumSpec& medium);

/// Sorted eigenvalues of the resonant rotating-frame interaction matrix
/// with couplings -d_j eps_j / 2 on the b-a, c-a, b-d and c-d positions.
std::array<double, 4> dressed_eigenvalues(const LocalFields& fields, const MediumSpec& medium);

/// Diagnostic scalars at one sample point.
struct PolaritonSample
{
    double psi = 0.0;
    double v = 0.0;
    std::optional<double> sigma_bc_from_12;
    std::optional<double> sigma_bc_from_34;
    std::optional<double> mismatch;
};

PolaritonSample polariton_sample(const CoherenceSample& sample, const MediumSpec& medium);

struct Peak
{
    double t_center = 0.0;
    double height = 0.0;
    double width_fwhm = 0.0;
};

/// Interior local maxima above min_height. Centers and heights come from the
/// parabola through the three samples around the maximum; the FWHM from
/// linear interpolation of the half-height crossings (clipped to the series
/// ends). Throws InvalidInput on an empty or unordered series.
std::vector<Peak> detect_peaks(std::span<const double> times,
                               std::span<const double> values, double min_height);

/// Normalized cross-correlation of two equally sampled profiles.
double normalized_overlap(std::span<const double> a, std::span<const double> b);

} // namespace lambda_store
