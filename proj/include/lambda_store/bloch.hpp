#pragma once

#include <complex>
#include <concepts>

#include <Eigen/Dense>

#include "lambda_store/error.hpp"
#include "lambda_store/model.hpp"

namespace lambda_store {

using complex = std::complex<double>;
using Matrix4c = Eigen::Matrix<complex, 4, 4>;

/// Row/column index of each level in the density matrix.
enum Level : int { A = 0, B = 1, C = 2, D = 3 };

/// Slowly varying density matrix sigma of one atom, rapid optical phases
/// factored out. Entry (i, j) is sigma_ij.
struct DensityMatrix
{
    Matrix4c sigma = Matrix4c::Zero();

    static DensityMatrix ground()
    {
        DensityMatrix s;
        s.sigma(B, B) = 1.0;
        return s;
    }

    complex operator()(Level i, Level j) const { return sigma(i, j); }
    complex& operator()(Level i, Level j) { return sigma(i, j); }

    double trace() const { return sigma.trace().real(); }

    /// max |sigma_ij - conj(sigma_ji)|
    double hermiticity_residual() const
    {
        return (sigma - sigma.adjoint()).cwiseAbs().maxCoeff();
    }

    double max_abs() const { return sigma.cwiseAbs().maxCoeff(); }

    double min_eigenvalue() const;

    void hermitize() { sigma = 0.5 * (sigma + sigma.adjoint()).eval(); }

    bool all_finite() const { return sigma.allFinite(); }
};

/// Real envelopes of the four fields at one (z, t') point.
struct LocalFields
{
    double eps1 = 0.0;
    double eps2 = 0.0;
    double eps3 = 0.0;
    double eps4 = 0.0;
};

/// d(sigma)/dt of the resonant double-Lambda master equation with
/// spontaneous emission, evaluated term by term.
Matrix4c liouville_rhs(const DensityMatrix& state, const LocalFields& fields,
                       const MediumSpec& medium);

/// Largest trace change tolerated within one integrator step.
inline constexpr double step_trace_tolerance = 1e-6;

template <typename F>
concept FieldSampler = requires(const F& f, double t) {
    { f(t) } -> std::convertible_to<LocalFields>;
};

/// One classical RK4 step of the atomic equations from t to t + dt. The
/// fields are sampled at t, t + dt/2 and t + dt. The result is
/// re-hermitized.
template <FieldSampler Sampler>
DensityMatrix step_atoms(const DensityMatrix& state, const Sampler& fields_at,
                         double t, double dt, const MediumSpec& medium)
{
    if (!(dt > 0.0)) {
        throw InvalidInput("step_atoms: dt must be positive");
    }

    const LocalFields f0 = fields_at(t);
    const LocalFields fh = fields_at(t + 0.5 * dt);
    const LocalFields f1 = fields_at(t + dt);

    DensityMatrix tmp;
    const Matrix4c k1 = liouville_rhs(state, f0, medium);
    tmp.sigma = state.sigma + (0.5 * dt) * k1;
    const Matrix4c k2 = liouville_rhs(tmp, fh, medium);
    tmp.sigma = state.sigma + (0.5 * dt) * k2;
    const Matrix4c k3 = liouville_rhs(tmp, fh, medium);
    tmp.sigma = state.sigma + dt * k3;
    const Matrix4c k4 = liouville_rhs(tmp, f1, medium);

    DensityMatrix out;
    out.sigma = state.sigma + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    out.hermitize();

    if (std::abs(out.trace() - state.trace()) > step_trace_tolerance) {
        throw NumericalError("trace", "step_atoms: trace drift exceeds 1e-6 "
                                      "in one step; reduce dt");
    }
    return out;
}

} // namespace lambda_store
