#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "qbsim/lindblad.hpp"
#include "qbsim/qops.hpp"
#include "test_helpers.hpp"

using namespace qbsim;
using lindblad::Generator;
using lindblad::RateMatrix;

TEST_SUITE_BEGIN("lindblad");

namespace {

Generator pure_decay(double gamma) {
    return Generator(ComplexMatrix::Zero(2, 2), {qops::sigma_minus_1q()},
                     RateMatrix::diagonal({gamma}));
}

// Random generator with a Hermitian (not necessarily PSD) rate matrix.
Generator random_generator(Eigen::Index dim, int n_jumps, std::mt19937& gen) {
    std::vector<ComplexMatrix> jumps;
    for (int k = 0; k < n_jumps; ++k) jumps.push_back(testing::random_matrix(dim, gen));
    ComplexMatrix rates = testing::random_hermitian(n_jumps, gen);
    for (int k = 0; k < n_jumps; ++k) rates(k, k) = std::abs(rates(k, k)) + 1.0;
    return Generator(testing::random_hermitian(dim, gen), std::move(jumps),
                     RateMatrix(std::move(rates)));
}

}  // namespace

TEST_CASE("rate matrix validation and cp flag") {
    CHECK_THROWS_AS(RateMatrix(testing::random_matrix(2, testing::rng())), ValidationError);
    ComplexMatrix neg = -ComplexMatrix::Identity(2, 2);
    CHECK_THROWS_AS(RateMatrix{neg}, ValidationError);

    // PSD: decay/pump two-jump set without anomalous couplings.
    CHECK(RateMatrix::plus_minus(1.0, 0.5, 0.0).cp_flag());
    // Indefinite but Hermitian with non-negative diagonal is accepted, cp_flag false.
    ComplexMatrix indef(2, 2);
    indef << 1.0, 2.0, 2.0, 1.0;
    const RateMatrix r{indef};
    CHECK_FALSE(r.cp_flag());
    CHECK(r.min_eigenvalue() == doctest::Approx(-1.0));
}

TEST_CASE("apply_generator: pure decay of the excited state") {
    const double gamma = 1.7;
    ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
    rho(0, 0) = 1.0;  // |e><e|
    const ComplexMatrix out = lindblad::apply_generator(pure_decay(gamma), rho);
    ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
    expected(0, 0) = -gamma;
    expected(1, 1) = gamma;
    CHECK((out - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("apply_generator: anomalous-only rates keep the trace") {
    const double c = 0.8;
    ComplexMatrix rates(2, 2);
    rates << 0.0, c, c, 0.0;  // only sigma^+ rho sigma^+ / sigma^- rho sigma^- sandwiches
    const Generator g(ComplexMatrix::Zero(2, 2),
                      {qops::sigma_plus_1q(), qops::sigma_minus_1q()}, RateMatrix(rates));
    const ComplexMatrix rho = 0.5 * ComplexMatrix::Identity(2, 2);
    const ComplexMatrix out = lindblad::apply_generator(g, rho);
    CHECK(std::abs(out.trace()) < 1e-14);
    // c (s^+ I s^+ + s^- I s^-)/2 vanishes: both sandwiches square a ladder op.
    CHECK(out.cwiseAbs().maxCoeff() < 1e-15);
    // On a coherence-bearing state the anomalous terms do act.
    ComplexMatrix rho_x(2, 2);
    rho_x << 0.5, 0.3, 0.3, 0.5;
    CHECK(lindblad::apply_generator(g, rho_x).cwiseAbs().maxCoeff() > 0.1);
}

TEST_CASE("apply_generator matches the independent term-by-term oracle") {
    auto& gen = testing::rng();
    for (int rep = 0; rep < 10; ++rep) {
        const auto g = random_generator(4, 3, gen);
        const ComplexMatrix rho = testing::random_hermitian(4, gen);
        const ComplexMatrix expected = testing::lindblad_action_oracle(
            g.hamiltonian(), g.jumps(), g.rates().entries(), rho);
        const ComplexMatrix got = lindblad::apply_generator(g, rho);
        CHECK((got - expected).cwiseAbs().maxCoeff() < 1e-12);
        // Trace and Hermiticity preservation.
        CHECK(std::abs(got.trace()) < 1e-12);
        CHECK(hermiticity_defect(got) < 1e-12);
    }
    CHECK_THROWS_AS(lindblad::apply_generator(pure_decay(1.0), ComplexMatrix::Zero(3, 3)),
                    ValidationError);
}

TEST_CASE("superoperator: known amplitude-damping spectrum at D=2") {
    const double gamma = 0.9;
    const auto ev = lindblad::spectrum(pure_decay(gamma));
    REQUIRE(ev.size() == 4);
    CHECK(std::abs(ev[0]) < 1e-12);
    CHECK(ev[1].real() == doctest::Approx(-gamma / 2));
    CHECK(ev[2].real() == doctest::Approx(-gamma / 2));
    CHECK(ev[3].real() == doctest::Approx(-gamma));
}

TEST_CASE("superoperator reproduces the direct action and the serial reference") {
    auto& gen = testing::rng();
    const auto g = random_generator(5, 2, gen);
    const auto sop = lindblad::build_superoperator(g);
    const auto ref = lindblad::build_superoperator_reference(g);
    CHECK((sop.matrix - ref.matrix).cwiseAbs().maxCoeff() < 1e-12);
    for (int rep = 0; rep < 20; ++rep) {
        const ComplexMatrix rho = testing::random_hermitian(5, gen);
        const ComplexVector lhs = sop.matrix * vec(rho);
        const ComplexVector rhs = vec(lindblad::apply_generator(g, rho));
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
    }
    // Trace functional is a left null vector.
    const ComplexVector trace_row = vec(ComplexMatrix::Identity(5, 5));
    CHECK((trace_row.adjoint() * sop.matrix).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("superoperator of a pure Hamiltonian has an imaginary spectrum") {
    const Generator g(ComplexMatrix::Identity(3, 3) * 2.0 +
                          testing::random_hermitian(3, testing::rng()),
                      {}, RateMatrix(ComplexMatrix::Zero(0, 0)));
    for (const auto& lambda : lindblad::spectrum(g)) CHECK(std::abs(lambda.real()) < 1e-10);
}

TEST_CASE("evolve: exponential decay of the stored population") {
    const double gamma = 1.0;
    ComplexMatrix rho0 = ComplexMatrix::Zero(2, 2);
    rho0(0, 0) = 1.0;
    std::vector<double> grid{0.0, 0.5, 1.0, 2.0, 5.0};
    const auto traj = lindblad::evolve(pure_decay(gamma), rho0, grid);
    for (std::size_t k = 0; k < grid.size(); ++k)
        CHECK(traj.states[k](0, 0).real() ==
              doctest::Approx(std::exp(-gamma * grid[k])).epsilon(1e-6));
}

TEST_CASE("evolve at t_grid={0} returns the initial state unchanged") {
    auto& gen = testing::rng();
    const ComplexMatrix rho0 = testing::random_density(4, gen);
    const auto g = random_generator(4, 2, gen);
    const auto traj = lindblad::evolve(g, rho0, {0.0});
    REQUIRE(traj.size() == 1);
    CHECK((traj.states[0] - rho0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("evolve agrees with the matrix exponential oracle") {
    auto& gen = testing::rng();
    std::uniform_real_distribution<double> ud(0.05, 2.0);
    for (Eigen::Index dim : {2, 3, 4}) {
        // CP generator: PSD rate matrix keeps the evolution a physical channel.
        std::vector<ComplexMatrix> jumps{testing::random_matrix(dim, gen),
                                         testing::random_matrix(dim, gen)};
        ComplexMatrix a = testing::random_matrix(2, gen);
        const Generator g(testing::random_hermitian(dim, gen), std::move(jumps),
                          RateMatrix(ComplexMatrix(a * a.adjoint())));
        const ComplexMatrix rho0 = testing::random_density(dim, gen);
        const auto sop = lindblad::build_superoperator(g);

        std::vector<double> grid{0.0};
        for (int k = 0; k < 10; ++k) grid.push_back(grid.back() + ud(gen) / double(dim));
        const auto traj = lindblad::evolve(g, rho0, grid);
        for (std::size_t k = 1; k < grid.size(); ++k) {
            const ComplexMatrix expected =
                unvec(ComplexMatrix(sop.matrix * grid[k]).exp() * vec(rho0));
            CHECK((traj.states[k] - expected).cwiseAbs().maxCoeff() < 1e-7);
        }
    }
}

TEST_CASE("evolve: trajectory invariants hold along a physical evolution") {
    auto& gen = testing::rng();
    ComplexMatrix rho0 = ComplexMatrix::Zero(3, 3);
    rho0(0, 0) = 1.0;
    std::vector<ComplexMatrix> jumps{testing::random_matrix(3, gen)};
    const Generator g(testing::random_hermitian(3, gen), std::move(jumps),
                      RateMatrix::diagonal({0.7}));
    std::vector<double> grid;
    for (int k = 0; k <= 50; ++k) grid.push_back(0.1 * k);
    const auto traj = lindblad::evolve(g, rho0, grid);
    for (std::size_t k = 0; k < traj.size(); ++k) {
        CHECK(traj.trace_defect[k] < 1e-8);
        CHECK(traj.min_eig[k] > -1e-8);
        CHECK(traj.herm_defect[k] < 1e-10);
    }
}

TEST_CASE("evolve lands exactly on sample times, including sliver segments") {
    ComplexMatrix rho0 = ComplexMatrix::Zero(2, 2);
    rho0(0, 0) = 1.0;
    // Irregular spacing plus a segment far below the step-underflow guard.
    const std::vector<double> grid{0.0, 0.1 * kPi, 1.0, 1.0 + 1e-15, 2.7182818284590451};
    const auto traj = lindblad::evolve(pure_decay(1.3), rho0, grid);
    REQUIRE(traj.size() == grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        CHECK(traj.times[k] == grid[k]);
        CHECK(traj.states[k](0, 0).real() ==
              doctest::Approx(std::exp(-1.3 * grid[k])).epsilon(1e-7));
    }
}

TEST_CASE("evolve rejects invalid initial states") {
    const auto g = pure_decay(1.0);
    CHECK_THROWS_AS(lindblad::evolve(g, 2.0 * ComplexMatrix::Identity(2, 2), {0.0, 1.0}),
                    ValidationError);
    ComplexMatrix nonpsd(2, 2);
    nonpsd << 1.5, 0.0, 0.0, -0.5;
    CHECK_THROWS_AS(lindblad::evolve(g, nonpsd, {0.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(lindblad::evolve(g, 0.5 * ComplexMatrix::Identity(2, 2), {1.0, 0.0}),
                    ValidationError);
}

TEST_CASE("steady_state: dark ground state of pure decay") {
    const auto ss = lindblad::steady_state(pure_decay(0.8));
    CHECK(ss.degeneracy == 1);
    CHECK(ss.rho(1, 1).real() == doctest::Approx(1.0).epsilon(1e-10));
    // Residual norm of the fixed-point condition.
    CHECK(lindblad::apply_generator(pure_decay(0.8), ss.rho).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("steady_state: driven two-level atom reproduces optical Bloch populations") {
    // H = Omega sigma^x, decay gamma: rho_ee = Omega^2 / (gamma^2/4 + 2 Omega^2).
    const double gamma = 1.0, omega = 0.5;
    ComplexMatrix h = omega * qops::sigma_x_1q();
    const Generator g(h, {qops::sigma_minus_1q()}, RateMatrix::diagonal({gamma}));
    const auto ss = lindblad::steady_state(g);
    const double expected = omega * omega / (gamma * gamma / 4.0 + 2.0 * omega * omega);
    CHECK(ss.rho(0, 0).real() == doctest::Approx(expected).epsilon(1e-9));
    CHECK(ss.degeneracy == 1);
}

TEST_CASE("steady_state reports degeneracy of a dephasing-free Hamiltonian") {
    ComplexMatrix sz(2, 2);
    sz << 1.0, 0.0, 0.0, -1.0;
    const Generator g(sz, {}, RateMatrix(ComplexMatrix::Zero(0, 0)));
    const auto ss = lindblad::steady_state(g);
    CHECK(ss.degeneracy == 2);
    CHECK(std::abs(ss.rho.trace() - Complex(1.0)) < 1e-12);
    CHECK(hermiticity_defect(ss.rho) < 1e-12);
}

TEST_CASE("steady state is a fixed point of evolve") {
    const double gamma = 1.0, omega = 0.7;
    const Generator g(omega * qops::sigma_x_1q(), {qops::sigma_minus_1q()},
                      RateMatrix::diagonal({gamma}));
    const auto ss = lindblad::steady_state(g);
    std::vector<double> grid{0.0, 2.5, 5.0, 10.0};
    const auto traj = lindblad::evolve(g, ss.rho, grid);
    for (const auto& rho : traj.states) CHECK(trace_distance(rho, ss.rho) < 1e-6);
}

TEST_CASE("spectrum contract: closed upper half, conjugate pairs, zero mode") {
    auto& gen = testing::rng();
    ComplexMatrix a = testing::random_matrix(2, gen);
    const Generator g(testing::random_hermitian(3, gen),
                      {testing::random_matrix(3, gen), testing::random_matrix(3, gen)},
                      RateMatrix(ComplexMatrix(a * a.adjoint())));
    const auto ev = lindblad::spectrum(g);
    CHECK(ev.front().real() <= 1e-8);
    for (const auto& lambda : ev) CHECK(lambda.real() <= 1e-8);
    CHECK(std::abs(ev.front()) < 1e-8);
    // Conjugate pairing.
    for (const auto& lambda : ev) {
        bool found = false;
        for (const auto& mu : ev)
            if (std::abs(mu - std::conj(lambda)) < 1e-8) {
                found = true;
                break;
            }
        CHECK(found);
    }
    CHECK_THROWS_AS(
        lindblad::spectrum(Generator(ComplexMatrix::Zero(128, 128), {},
                                     RateMatrix(ComplexMatrix::Zero(0, 0)))),
        SizeError);
}

TEST_CASE("positivity is monitored, not enforced: leaving the cone aborts") {
    // Indefinite (non-CP) rate matrix drags the +x state out of the cone.
    ComplexMatrix cm(2, 2);
    cm << 0.2, 1.0, 1.0, 0.2;
    const Generator g(ComplexMatrix::Zero(2, 2),
                      {qops::sigma_plus_1q(), qops::sigma_minus_1q()}, RateMatrix(cm));
    CHECK_FALSE(g.rates().cp_flag());
    ComplexMatrix plus_x(2, 2);
    plus_x << 0.5, 0.5, 0.5, 0.5;
    try {
        lindblad::evolve(g, plus_x, {0.0, 0.5, 1.0});
        FAIL("expected PositivityError");
    } catch (const PositivityError& e) {
        CHECK(e.min_eig() < -1e-6);
        CHECK(e.t() > 0.0);
    }
    // Mild violations below the floor are reported in the diagnostics instead.
    lindblad::EvolveOptions relaxed;
    relaxed.monitor_positivity = false;
    const auto traj = lindblad::evolve(g, plus_x, {0.0, 0.5, 1.0}, relaxed);
    CHECK(traj.min_eig.back() < -1e-6);
}

TEST_CASE("trace and Hermiticity preservation on random Hermitian-rate generators") {
    auto& gen = testing::rng();
    for (int rep = 0; rep < 20; ++rep) {
        const auto g = random_generator(3, 2, gen);
        const ComplexMatrix rho = testing::random_density(3, gen);
        const ComplexMatrix out = lindblad::apply_generator(g, rho);
        CHECK(std::abs(out.trace()) < 1e-12);
        CHECK(hermiticity_defect(out) < 1e-12);
    }
}

TEST_SUITE_END();
