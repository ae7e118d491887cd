#include "lambda_store/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "lambda_store/error.hpp"

namespace lambda_store {

double adiabatic_sigma_bc(double eps_s, double eps_c, double d_s, double d_c)
{
    const double control = eps_c * d_c;
    if (control == 0.0) {
        throw AdiabaticInapplicable("adiabatic relation inapplicable: control coupling is zero");
    }
    return -(eps_s * d_s) / control;
}

double polariton_atomic_weight(const MediumSpec& m)
{
    return 2.0 * m.density * au::hbar * m.omega1 / au::eps0;
}

namespace {

/* (d2/d1)^2 and d4^2 w1 / (d3^2 w3), the control weights of the polariton */
double weight2(const MediumSpec& m)
{
    const double r = m.d2 / m.d1;
    return r * r;
}

double weight4(const MediumSpec& m)
{
    const double r = m.d4 / m.d3;
    return r * r * m.omega1 / m.omega3;
}

} // namespace

double polariton_psi(const LocalFields& f, double sigma_bc, const MediumSpec& m)
{
    const double w = polariton_atomic_weight(m);
    const double num = (m.d2 * f.eps2 / m.d1) * f.eps1 - w * sigma_bc +
                       (m.d4 * f.eps4 * m.omega1 / (m.d3 * m.omega3)) * f.eps3;
    const double den =
        std::sqrt(weight2(m) * f.eps2 * f.eps2 + w + weight4(m) * f.eps4 * f.eps4);
    return num / den;
}

double polariton_velocity(double eps2, double eps4, const MediumSpec& m)
{
    const double x = weight2(m) * eps2 * eps2 + weight4(m) * eps4 * eps4;
    return au::c * x / (x + polariton_atomic_weight(m));
}

Mismatch nonadiabatic_mismatch(const CoherenceSample& sample, const MediumSpec& m)
{
    const auto& f = sample.fields;
    if (std::abs(sample.sigma_bc) < min_stored_coherence) {
        throw NoStoredCoherence("no stored coherence: |sigma_bc| below 1e-15");
    }

    Mismatch out;
    if (f.eps4 != 0.0) {
        out.branch = AdiabaticBranch::signal_control4;
        out.ratio = adiabatic_sigma_bc(f.eps3, f.eps4, m.d3, m.d4) / sample.sigma_bc;
        out.corrected_ratio = out.ratio * std::sqrt(m.omega3 / m.omega1);
    } else if (f.eps2 != 0.0) {
        out.branch = AdiabaticBranch::probe_control2;
        out.ratio = adiabatic_sigma_bc(f.eps1, f.eps2, m.d1, m.d2) / sample.sigma_bc;
        out.corrected_ratio = out.ratio;
    } else {
        throw AdiabaticInapplicable("adiabatic relation inapplicable: both controls are off");
    }
    return out;
}

std::array<double, 4> dressed_eigenvalues(const LocalFields& f, const MediumSpec& m)
{
    Eigen::Matrix4d h = Eigen::Matrix4d::Zero();
    h(B, A) = h(A, B) = -0.5 * m.d1 * f.eps1;
    h(C, A) = h(A, C) = -0.5 * m.d2 * f.eps2;
    h(B, D) = h(D, B) = -0.5 * m.d3 * f.eps3;
    h(C, D) = h(D, C) = -0.5 * m.d4 * f.eps4;

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(h, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    std::array<double, 4> out{ev(0), ev(1), ev(2), ev(3)};
    std::sort(out.begin(), out.end());
    return out;
}

PolaritonSample polariton_sample(const CoherenceSample& sample, const MediumSpec& m)
{
    const auto& f = sample.fields;
    PolaritonSample p;
    p.psi = polariton_psi(f, sample.sigma_bc, m);
    p.v = polariton_velocity(f.eps2, f.eps4, m);
    if (f.eps2 != 0.0) {
        p.sigma_bc_from_12 = adiabatic_sigma_bc(f.eps1, f.eps2, m.d1, m.d2);
    }
    if (f.eps4 != 0.0) {
        p.sigma_bc_from_34 = adiabatic_sigma_bc(f.eps3, f.eps4, m.d3, m.d4);
    }
    if ((f.eps2 != 0.0 || f.eps4 != 0.0) &&
        std::abs(sample.sigma_bc) >= min_stored_coherence) {
        p.mismatch = nonadiabatic_mismatch(sample, m).ratio;
    }
    return p;
}

namespace {

/// Vertex of the parabola through three points.
void parabola_vertex(double x0, double y0, double x1, double y1, double x2, double y2,
                     double& xv, double& yv)
{
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double a = (d12 - d01) / (x2 - x0);
    if (a >= 0.0) {
        xv = x1;
        yv = y1;
        return;
    }
    const double b = d01 - a * (x0 + x1);
    xv = -b / (2.0 * a);
    xv = std::clamp(xv, x0, x2);
    yv = y1 + (xv - x1) * (d01 + a * (xv - x0));
    yv = std::max(yv, y1);
}

double crossing(double x0, double y0, double x1, double y1, double level)
{
    return x0 + (level - y0) * (x1 - x0) / (y1 - y0);
}

} // namespace

std::vector<Peak> detect_peaks(std::span<const double> times,
                               std::span<const double> values, double min_height)
{
    if (times.empty() || times.size() != values.size()) {
        throw InvalidInput("detect_peaks: series must be non-empty with matching columns");
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) {
            throw InvalidInput("detect_peaks: series must be strictly time-ordered");
        }
    }

    std::vector<Peak> peaks;
    const std::size_t n = values.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double y = values[i];
        if (!(y > values[i - 1] && y >= values[i + 1] && y > min_height)) {
            continue;
        }
        Peak p;
        parabola_vertex(times[i - 1], values[i - 1], times[i], y, times[i + 1],
                        values[i + 1], p.t_center, p.height);

        const double half = 0.5 * p.height;
        double left = times.front();
        for (std::size_t j = i; j > 0; --j) {
            if (values[j - 1] < half) {
                left = crossing(times[j - 1], values[j - 1], times[j], values[j], half);
                break;
            }
        }
        double right = times.back();
        for (std::size_t j = i; j + 1 < n; ++j) {
            if (values[j + 1] < half) {
                right = crossing(times[j], values[j], times[j + 1], values[j + 1], half);
                break;
            }
        }
        p.width_fwhm = right - left;
        peaks.push_back(p);
    }
    return peaks;
}

double normalized_overlap(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size() || a.empty()) {
        throw InvalidInput("normalized_overlap: profiles must have equal non-zero length");
    }
    double ab = 0.0, aa = 0.0, bb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ab += a[i] * b[i];
        aa += a[i] * a[i];
        bb += b[i] * b[i];
    }
    if (aa == 0.0 || bb == 0.0) {
        return 0.0;
    }
    return ab / std::sqrt(aa * bb);
}

} // namespace lambda_store
