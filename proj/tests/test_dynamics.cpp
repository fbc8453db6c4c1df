#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

#include "ottoref/dynamics.hpp"

#include <cmath>

using namespace ottoref;
using ottoref::testing::reference_baths;
using ottoref::testing::reference_drive;

TEST_CASE("lindblad rhs is traceless and Hermitian")
{
    const DriveParams p = reference_drive();
    const auto baths = reference_baths(p);
    ottoref::testing::Rng rng;
    for (int i = 0; i < 24; ++i) {
        const double t = rng.uniform(0.0, p.period());
        const Mat2 rho = ottoref::testing::random_density(rng);
        for (Mode mode : {Mode::Original, Mode::CounterDiabatic}) {
            const Mat2 d = lindblad_rhs(rho, t, p, baths, mode);
            CHECK(std::abs(trace(d)) < 1e-14);
            CHECK(hermiticity_defect(d) < 1e-14);
        }
    }
    CHECK_THROWS_AS(lindblad_rhs(identity2(), 0.0, p, baths, Mode::Classical),
                    std::invalid_argument);
}

TEST_CASE("gibbs state of each bath is stationary at the resonance instants")
{
    const DriveParams p = reference_drive();
    for (const BathParams& b : reference_baths(p)) {
        const std::vector<BathParams> single{b};
        for (double t : {0.0, 0.5 * p.period()}) {
            for (Mode mode : {Mode::Original, Mode::CounterDiabatic}) {
                const InstantaneousFrame f = eigenframe(t, p, mode);
                const Mat2 rho = gibbs_state(b.beta, f);
                CHECK(frobenius_norm(lindblad_rhs(rho, t, p, single, mode)) < 1e-12);
            }
        }
    }
}

TEST_CASE("uncoupled evolution preserves purity over one period")
{
    const DriveParams p = reference_drive();
    auto baths = reference_baths(p);
    for (auto& b : baths) b.coupling = 0.0;

    const InstantaneousFrame f0 = eigenframe(0.0, p, Mode::Original);
    const Mat2 rho0 = outer(f0.eigvec_g, f0.eigvec_g);
    const Trajectory traj = integrate(rho0, 0.0, p.period(), 20000, p, baths, Mode::Original);

    const Mat2& rho = traj.rho.back();
    CHECK(std::abs(std::real(trace(rho)) - 1.0) < 1e-10);
    CHECK(std::abs(std::real(trace(rho * rho)) - 1.0) < 1e-8);
    // zero couplings mean zero rates, identically zero heat fluxes
    for (const FluxRecord& r : traj.flux) {
        CHECK(r.qdot_c == 0.0);
        CHECK(r.qdot_h == 0.0);
    }
}

TEST_CASE("classical rate equation")
{
    const DriveParams p = reference_drive();
    const std::vector<BathParams> hot{default_hot_bath(p)};

    SUBCASE("detailed-balance populations are a fixed point at q = 1/2")
    {
        const double gap = gap_of_q(0.5, p);
        const double w = std::exp(-hot.front().beta * gap);
        const ClassicalState s{1.0 / (1.0 + w), w / (1.0 + w)};
        const ClassicalState d = classical_rhs(s, 0.0, p, hot);
        CHECK(std::abs(d.p_g) < 1e-15);
        CHECK(std::abs(d.p_e) < 1e-15);
    }

    SUBCASE("fully excited state decays downward")
    {
        const ClassicalState d = classical_rhs({0.0, 1.0}, 0.0, p, hot);
        CHECK(d.p_g > 0.0);
        CHECK(d.p_e == -d.p_g);
    }

    SUBCASE("relaxation matches the closed-form two-state solution")
    {
        // quasi-frozen drive: over the 5/Gamma_down window the gap moves by ~1e-12
        DriveParams frozen = p;
        frozen.omega = 1e-6;
        const double gap = gap_of_q(0.5, frozen);
        const double gdown = noise_power(gap, hot.front());
        const double gup = noise_power(-gap, hot.front());
        const double gtot = gdown + gup;
        const double pg_inf = gdown / gtot;
        const double t_end = 5.0 / gdown;

        const Trajectory traj = integrate(ClassicalState{0.0, 1.0}, 0.0, t_end, 4000, frozen, hot);
        const double expected = pg_inf * (1.0 - std::exp(-gtot * t_end));
        CHECK(traj.probs.back().p_g == doctest::Approx(expected).epsilon(1e-9));

        const double pg_gibbs = 1.0 / (1.0 + std::exp(-hot.front().beta * gap));
        CHECK(std::abs(traj.probs.back().p_g - pg_gibbs) < 0.01);
    }
}

TEST_CASE("integrate argument checking and sampling layout")
{
    const DriveParams p = reference_drive();
    const auto baths = reference_baths(p);
    const Mat2 rho0 = 0.5 * identity2();

    CHECK_THROWS_AS(integrate(rho0, 1.0, 0.5, 10, p, baths, Mode::Original),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate(rho0, 0.0, 1.0, 0, p, baths, Mode::Original),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate(rho0, 0.0, 1.0, 10, p, baths, Mode::Classical),
                    std::invalid_argument);

    const Trajectory traj = integrate(rho0, 0.0, p.period(), 64, p, baths, Mode::Original);
    REQUIRE(traj.size() == 65);
    const double h = p.period() / 64;
    for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
        CHECK(traj.t[i + 1] > traj.t[i]);
        CHECK(traj.t[i + 1] - traj.t[i] == doctest::Approx(h).epsilon(1e-12));
    }
    CHECK(traj.flux.size() == traj.size());
    CHECK(traj.rho.size() == traj.size());
}

TEST_CASE("coarse stepping aborts on lost positivity with a diagnostic")
{
    const DriveParams p = reference_drive();
    const auto baths = reference_baths(p);
    const InstantaneousFrame f0 = eigenframe(0.0, p, Mode::Original);
    const Mat2 rho0 = outer(f0.eigvec_e, f0.eigvec_e);
    CHECK_THROWS_WITH_AS(integrate(rho0, 0.0, p.period(), 2, p, baths, Mode::Original),
                         doctest::Contains("positivity"), std::runtime_error);
}

TEST_CASE("closed-system transport fidelity")
{
    SUBCASE("control field holds both labels to better than 1e-8")
    {
        for (double omega : {0.05, 0.1, 0.2}) {
            const DriveParams p = reference_drive(omega);
            const FidelityPair f =
                cd_fidelity_check(p, Mode::CounterDiabatic, p.period(), 20000);
            CHECK(f.ground >= 1.0 - 1e-8);
            CHECK(f.excited >= 1.0 - 1e-8);
        }
    }

    SUBCASE("bare evolution leaks at moderate speed")
    {
        const DriveParams p = reference_drive(0.1);
        const FidelityPair f = cd_fidelity_check(p, Mode::Original, p.period(), 20000);
        CHECK(std::min(f.ground, f.excited) < 1.0 - 1e-3);
    }

    SUBCASE("bare evolution becomes adiabatic at slow speed")
    {
        const DriveParams p = reference_drive(0.001);
        const FidelityPair f = cd_fidelity_check(p, Mode::Original, p.period(), 20000);
        CHECK(f.ground >= 1.0 - 1e-3);
        CHECK(f.excited >= 1.0 - 1e-3);
    }
}

TEST_CASE("limit cycle detection")
{
    const DriveParams p = reference_drive();
    const auto baths = reference_baths(p);

    SUBCASE("converges within 200 cycles at tol 1e-9 and closes on itself")
    {
        const Trajectory traj = find_limit_cycle(p, baths, Mode::Original, 4000, 1e-9, 200);
        CHECK(traj.convergence.converged);
        CHECK(traj.convergence.cycles <= 200);
        CHECK(traj.convergence.distance < 1e-9);
        CHECK(trace_distance(traj.rho.front(), traj.rho.back()) < 1e-9);

        // state-space invariants at every sample
        for (const Mat2& rho : traj.rho) {
            CHECK(hermiticity_defect(rho) < 1e-10);
            CHECK(std::abs(std::real(trace(rho)) - 1.0) < 1e-10);
            CHECK(eigvals_hermitian(rho)[0] >= -1e-8);
        }
    }

    SUBCASE("classical cycle is independent of the initial populations")
    {
        const Trajectory a =
            find_limit_cycle(ClassicalState{1.0, 0.0}, p, baths, 4000, 1e-9, 200);
        const Trajectory b =
            find_limit_cycle(ClassicalState{0.0, 1.0}, p, baths, 4000, 1e-9, 200);
        double worst = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            worst = std::max(worst, classical_distance(a.probs[i], b.probs[i]));
        CHECK(worst < 1e-8);  // 10 * tol
    }

    SUBCASE("quantum cycle is independent of the initial state")
    {
        const InstantaneousFrame f0 = eigenframe(0.0, p, Mode::Original);
        const Mat2 gibbs = gibbs_state(default_cold_bath(p).beta, f0);
        const Mat2 mixed = 0.5 * identity2();
        const Trajectory a =
            find_limit_cycle(gibbs, p, baths, Mode::CounterDiabatic, 4000, 1e-9, 200);
        const Trajectory b =
            find_limit_cycle(mixed, p, baths, Mode::CounterDiabatic, 4000, 1e-9, 200);
        double worst = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            worst = std::max(worst, trace_distance(a.rho[i], b.rho[i]));
        CHECK(worst < 1e-8);
    }

    SUBCASE("non-convergence reports the last distance")
    {
        try {
            find_limit_cycle(p, baths, Mode::Original, 512, 1e-16, 2);
            FAIL("expected LimitCycleError");
        } catch (const LimitCycleError& e) {
            CHECK(e.cycles == 2);
            CHECK(e.distance > 0.0);
            CHECK(std::string(e.what()).find("no convergence") != std::string::npos);
        }
    }
}

TEST_CASE("slow driving reduces the controlled dynamics to the rate equation")
{
    // frozen bound 2e-3: the measured sup-norm gap at omega = 0.01 is 1.47e-3,
    // stable under step refinement
    const DriveParams p = reference_drive(0.01);
    const auto baths = reference_baths(p);
    const Trajectory cd = find_limit_cycle(p, baths, Mode::CounterDiabatic, 8000, 1e-9, 200);
    const Trajectory cl = find_limit_cycle(p, baths, Mode::Classical, 8000, 1e-9, 200);
    double worst = 0.0;
    for (std::size_t i = 0; i < cd.size(); ++i)
        worst = std::max(worst, std::abs(cd.flux[i].p_e_frame - cl.flux[i].p_e_frame));
    CHECK(worst <= 2e-3);
}

TEST_CASE("first-law residual improves at fourth order under step halving")
{
    const DriveParams p = reference_drive();
    const auto baths = reference_baths(p);
    double res[2];
    int i = 0;
    for (int steps : {2500, 5000}) {
        const Trajectory traj = find_limit_cycle(p, baths, Mode::Original, steps, 1e-12, 800);
        res[i++] = summarize_cycle(traj).first_law_residual;
    }
    const double ratio = res[0] / res[1];
    CHECK(ratio > 8.0);
    CHECK(ratio < 32.0);
}
