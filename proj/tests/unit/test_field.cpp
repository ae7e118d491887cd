#include <doctest.h>

#include <cmath>
#include <limits>

#include "lambda_store/error.hpp"
#include "lambda_store/field.hpp"

using namespace lambda_store;

namespace {

MediumState with_sigma_ab(const Grid& g, auto profile)
{
    auto ms = MediumState::ground(g.nz);
    for (std::size_t k = 0; k < g.nz; ++k) {
        const complex v(0.0, profile(g.z(k)));
        ms.states[k](A, B) = v;
        ms.states[k].sigma(B, A) = std::conj(v);
    }
    return ms;
}

} // namespace

TEST_CASE("grid construction")
{
    const auto g = Grid::make(3e7, 201, 2e7, 100);
    CHECK(g.dz == doctest::Approx(1.5e5));
    CHECK(g.z(200) == doctest::Approx(3e7));
    CHECK_THROWS_AS(Grid::make(3e7, 1, 2e7, 100), InvalidInput);
    CHECK_THROWS_AS(Grid::make(3e7, 11, 0.0, 100), InvalidInput);
    CHECK_THROWS_AS(Grid::make(3e7, 11, 1.0, 0), InvalidInput);
    auto bad = g;
    bad.dz *= 1.01;
    CHECK_THROWS_AS(validate(bad, 3e7), InvalidInput);
}

TEST_CASE("ground medium is transparent")
{
    const auto m = paper_medium();
    const auto g = Grid::make(m.length, 51, 2e7, 1);
    const auto p = propagate_signals(MediumState::ground(g.nz), 3e-11, 0.0, g, m);
    for (std::size_t k = 0; k < g.nz; ++k) {
        CHECK(p.eps1[k] == 3e-11);
        CHECK(p.eps3[k] == 0.0);
    }
}

TEST_CASE("trapezoid is exact for a linear coherence profile")
{
    const auto m = paper_medium();
    const auto g = Grid::make(m.length, 31, 2e7, 1);
    const double slope = 1e-12 / m.length;
    const auto ms = with_sigma_ab(g, [&](double z) { return slope * z; });
    const auto p = propagate_signals(ms, 0.0, 0.0, g, m);
    // d eps/dz = i k (i s z) = -k s z
    const double k1 = signal_coupling1(m);
    for (std::size_t k = 0; k < g.nz; ++k) {
        const double z = g.z(k);
        CHECK(p.eps1[k] == doctest::Approx(-0.5 * k1 * slope * z * z).epsilon(1e-12));
    }
}

TEST_CASE("propagation converges at second order in dz")
{
    const auto m = paper_medium();
    const double k1 = signal_coupling1(m);
    const double w = 3.0 / m.length;
    auto error = [&](std::size_t nz) {
        const auto g = Grid::make(m.length, nz, 2e7, 1);
        const auto ms = with_sigma_ab(g, [&](double z) { return 1e-12 * std::sin(w * z); });
        const auto p = propagate_signals(ms, 0.0, 0.0, g, m);
        const double exact = -k1 * 1e-12 * (1.0 - std::cos(w * m.length)) / w;
        return std::abs(p.eps1.back() - exact);
    };
    const double ratio = error(41) / error(81);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("a real optical coherence breaks the phase invariant")
{
    const auto m = paper_medium();
    const auto g = Grid::make(m.length, 11, 2e7, 1);
    auto ms = MediumState::ground(g.nz);
    ms.states[5](A, B) = complex(1e-6, 1e-6);
    ms.states[5].sigma(B, A) = std::conj(ms.states[5](A, B));
    try {
        propagate_signals(ms, 1e-10, 0.0, g, m);
        FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
        CHECK(e.monitor() == "phase");
    }
}

TEST_CASE("window step keeps an unprobed ground medium unchanged")
{
    const auto m = paper_medium();
    const auto g = Grid::make(m.length, 11, 2e7, 1);
    PulseSchedule s;
    s.probe = {0.0, 0.0, 1e11};
    s.control2.level = 1.2e-9;
    s.control4.level = 1.2e-9;
    const auto ms = MediumState::ground(g.nz);
    for (auto c : {Coupling::stage_rk4, Coupling::predictor_corrector}) {
        auto gc = g;
        gc.coupling = c;
        const auto w = advance_window_step(fields_at(ms, s, 0.0, gc, m), ms, s, 0.0, gc, m);
        for (const auto& st : w.medium.states) {
            CHECK((st.sigma - DensityMatrix::ground().sigma).cwiseAbs().maxCoeff() == 0.0);
        }
        CHECK(w.fields.eps2 == 1.2e-9);
    }
}

TEST_CASE("non-finite states are reported with their location")
{
    const auto m = paper_medium();
    const auto g = Grid::make(m.length, 11, 2e7, 1);
    PulseSchedule s;
    s.probe = {1e-10, 0.0, 1e11};
    s.control2.level = 1.2e-9;
    auto ms = MediumState::ground(g.nz);
    ms.states[4](C, C) = std::numeric_limits<double>::quiet_NaN();
    FieldState f;
    f.eps1.assign(g.nz, 0.0);
    f.eps3.assign(g.nz, 0.0);
    try {
        advance_window_step(f, ms, s, 0.0, g, m);
        FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
        CHECK(e.monitor() == "finite");
        CHECK(std::string(e.what()).find("z-index 4") != std::string::npos);
    }
}

TEST_CASE("both couplings agree and converge on a reduced instance")
{
    auto m = paper_medium();
    m.length = 7.5e5;
    PulseSchedule s;
    s.probe = {1e-10, 0.0, 1e9};
    s.control2.level = 1.2e-9;

    auto exit_trace = [&](Coupling c, double dt) {
        auto g = Grid::make(m.length, 21, dt, static_cast<std::size_t>(std::lround(3e9 / dt)));
        g.coupling = c;
        auto ms = MediumState::ground(g.nz);
        auto f = fields_at(ms, s, 0.0, g, m);
        std::vector<double> out;
        for (std::size_t n = 0; n < g.nt; ++n) {
            auto w = advance_window_step(f, ms, s, n * dt, g, m);
            f = std::move(w.fields);
            ms = std::move(w.medium);
            out.push_back(f.eps1.back());
        }
        return out;
    };
    auto sup_diff = [](const std::vector<double>& fine, const std::vector<double>& coarse) {
        double d = 0.0, peak = 0.0;
        for (std::size_t n = 0; n < coarse.size(); ++n) {
            d = std::max(d, std::abs(fine[2 * n + 1] - coarse[n]));
            peak = std::max(peak, std::abs(coarse[n]));
        }
        return d / peak;
    };
    const auto rk_a = exit_trace(Coupling::stage_rk4, 2e7);
    const auto rk_b = exit_trace(Coupling::stage_rk4, 1e7);
    const auto pc_a = exit_trace(Coupling::predictor_corrector, 2e7);
    const auto pc_b = exit_trace(Coupling::predictor_corrector, 1e7);
    CHECK(sup_diff(rk_b, rk_a) < 1e-5);
    CHECK(sup_diff(pc_b, pc_a) < 1e-2);
    CHECK(sup_diff(pc_b, pc_a) > 10.0 * sup_diff(rk_b, rk_a));
    CHECK(sup_diff(rk_b, pc_a) < 1e-2);
}
