#include "lambda_store/bloch.hpp"

#include <Eigen/Eigenvalues>

namespace lambda_store {

double DensityMatrix::min_eigenvalue() const
{
    const Matrix4c h = 0.5 * (sigma + sigma.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4c> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

Matrix4c liouville_rhs(const DensityMatrix& state, const LocalFields& fields,
                       const MediumSpec& medium)
{
    const auto& s = state.sigma;
    const auto& g = medium.decays;
    const complex I(0.0, 1.0);

    /* half Rabi couplings (1/2) eps_j d_j */
    const double r1 = 0.5 * fields.eps1 * medium.d1;
    const double r2 = 0.5 * fields.eps2 * medium.d2;
    const double r3 = 0.5 * fields.eps3 * medium.d3;
    const double r4 = 0.5 * fields.eps4 * medium.d4;

    const double ga = g.gamma_ab + g.gamma_ac;
    const double gd = g.gamma_db + g.gamma_dc;

    const complex aa = s(A, A), bb = s(B, B), cc = s(C, C), dd = s(D, D);
    const complex ab = s(A, B), ba = s(B, A);
    const complex ac = s(A, C), ca = s(C, A);
    const complex ad = s(A, D);
    const complex bc = s(B, C), cb = s(C, B);
    const complex bd = s(B, D), db = s(D, B);
    const complex cd = s(C, D), dc = s(D, C);

    /* i hbar d(sigma)/dt, one line per independent element */
    const complex h_aa = -r1 * (ba - ab) - r2 * (ca - ac) - I * ga * aa;
    const complex h_bb = -r1 * (ab - ba) - r3 * (db - bd) +
                         I * g.gamma_ab * aa + I * g.gamma_db * dd;
    const complex h_cc = -r2 * (ac - ca) - r4 * (dc - cd) +
                         I * g.gamma_ac * aa + I * g.gamma_dc * dd;
    const complex h_dd = -r3 * (bd - db) - r4 * (cd - dc) - I * gd * dd;
    const complex h_ab =
        -r1 * (bb - aa) - r2 * cb + r3 * ad - 0.5 * I * ga * ab;
    const complex h_ac =
        -r1 * bc - r2 * (cc - aa) + r4 * ad - 0.5 * I * ga * ac;
    const complex h_ad =
        -r1 * bd - r2 * cd + r3 * ab + r4 * ac - 0.5 * I * (ga + gd) * ad;
    const complex h_bc = -r1 * ac + r2 * ba - r3 * dc + r4 * bd;
    const complex h_bd =
        -r1 * ad - r3 * (dd - bb) + r4 * bc - 0.5 * I * gd * bd;
    const complex h_cd =
        -r2 * ad + r3 * cb - r4 * (dd - cc) - 0.5 * I * gd * cd;

    const complex k = -I / au::hbar;
    Matrix4c out;
    out(A, A) = k * h_aa;
    out(B, B) = k * h_bb;
    out(C, C) = k * h_cc;
    out(D, D) = k * h_dd;
    out(A, B) = k * h_ab;
    out(A, C) = k * h_ac;
    out(A, D) = k * h_ad;
    out(B, C) = k * h_bc;
    out(B, D) = k * h_bd;
    out(C, D) = k * h_cd;
    out(B, A) = std::conj(out(A, B));
    out(C, A) = std::conj(out(A, C));
    out(D, A) = std::conj(out(A, D));
    out(C, B) = std::conj(out(B, C));
    out(D, B) = std::conj(out(B, D));
    out(D, C) = std::conj(out(C, D));
    return out;
}

} // namespace lambda_store
