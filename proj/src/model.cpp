#include "lambda_store/model.hpp"

#include <cmath>
#include <sstream>

#include "lambda_store/error.hpp"

namespace lambda_store {

TransitionFrequencies derive_frequencies(const LevelScheme& levels)
{
    const bool ordered = levels.e_b < levels.e_c && levels.e_c < levels.e_a &&
                         levels.e_a < levels.e_d;
    if (!ordered) {
        std::ostringstream msg;
        msg << "level scheme must satisfy E_b < E_c < E_a < E_d, got E_a="
            << levels.e_a << " E_b=" << levels.e_b << " E_c=" << levels.e_c
            << " E_d=" << levels.e_d;
        throw InvalidInput(msg.str());
    }

    TransitionFrequencies f;
    f.omega1 = (levels.e_a - levels.e_b) / au::hbar;
    f.omega2 = (levels.e_a - levels.e_c) / au::hbar;
    f.omega3 = (levels.e_d - levels.e_b) / au::hbar;
    f.omega4 = (levels.e_d - levels.e_c) / au::hbar;

    /* Nudge omega4, or failing that omega2, by a few ulps so the Raman
       condition omega1 - omega2 == omega3 - omega4 holds bit-exactly. */
    auto align = [](double hi, double& lo, double target) {
        const double start = lo;
        for (int i = 0; i < 64; ++i) {
            const double diff = hi - lo;
            if (diff == target) {
                return true;
            }
            lo = std::nextafter(lo, diff > target ? INFINITY : -INFINITY);
        }
        lo = start;
        return false;
    };
    if (!align(f.omega3, f.omega4, f.omega1 - f.omega2)) {
        align(f.omega1, f.omega2, f.omega3 - f.omega4);
    }
    return f;
}

double derive_dipole(double gamma, double omega)
{
    if (!(gamma > 0.0) || !(omega > 0.0) || !std::isfinite(gamma) ||
        !std::isfinite(omega)) {
        std::ostringstream msg;
        msg << "derive_dipole needs gamma > 0 and omega > 0, got gamma="
            << gamma << " omega=" << omega;
        throw InvalidInput(msg.str());
    }
    const double a3 = au::alpha * au::alpha * au::alpha;
    return std::sqrt(3.0 * gamma / (4.0 * a3 * omega * omega * omega));
}

MediumSpec make_medium(const LevelScheme& levels, const DecayRates& decays,
                       double density, double length)
{
    const auto f = derive_frequencies(levels);

    MediumSpec m;
    m.levels = levels;
    m.decays = decays;
    m.density = density;
    m.length = length;
    m.omega1 = f.omega1;
    m.omega2 = f.omega2;
    m.omega3 = f.omega3;
    m.omega4 = f.omega4;
    m.d1 = derive_dipole(decays.gamma_ab, f.omega1);
    m.d2 = derive_dipole(decays.gamma_ac, f.omega2);
    m.d3 = derive_dipole(decays.gamma_db, f.omega3);
    m.d4 = derive_dipole(decays.gamma_dc, f.omega4);
    validate(m);
    return m;
}

MediumSpec paper_medium()
{
    const LevelScheme levels{-0.10, -0.20, -0.18, -0.05};
    const DecayRates decays{2.4e-9, 2.4e-9, 2.4e-9, 2.4e-9};
    return make_medium(levels, decays, 3e-13, 3e7);
}

void validate(const MediumSpec& m)
{
    const auto f = derive_frequencies(m.levels);
    if (f.omega1 != m.omega1 || f.omega2 != m.omega2 ||
        f.omega3 != m.omega3 || f.omega4 != m.omega4) {
        throw InvalidInput("medium frequencies inconsistent with level scheme");
    }
    const auto& g = m.decays;
    if (!(g.gamma_ab >= 0.0 && g.gamma_ac >= 0.0 && g.gamma_db >= 0.0 &&
          g.gamma_dc >= 0.0)) {
        throw InvalidInput("decay rates must be non-negative");
    }
    if (!(m.d1 > 0.0 && m.d2 > 0.0 && m.d3 > 0.0 && m.d4 > 0.0)) {
        throw InvalidInput("dipole moments must be positive");
    }
    if (!(m.density > 0.0) || !std::isfinite(m.density)) {
        throw InvalidInput("density must be positive");
    }
    if (!(m.length > 0.0) || !std::isfinite(m.length)) {
        throw InvalidInput("sample length must be positive");
    }
}

} // namespace lambda_store
