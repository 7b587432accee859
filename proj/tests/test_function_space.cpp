#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "generators.hpp"
#include "padic_ctqw/function_space.hpp"

using namespace ctqw;
using std::complex;

namespace {

TestFunction random_function(const SupportSet& support, std::mt19937_64& rng) {
    return TestFunction(support, gen::random_state(static_cast<Eigen::Index>(support.size()), rng));
}

}  // namespace

TEST_CASE("coefficient vectors pair like an orthonormal basis") {
    const SupportSet s = SupportSet::full(Level(2));
    for (std::uint32_t a = 0; a < 4; ++a) {
        for (std::uint32_t b = 0; b < 4; ++b) {
            const auto ip = inner_product(TestFunction::basis_state(s, a),
                                          TestFunction::basis_state(s, b));
            CHECK(ip == complex<double>(a == b ? 1.0 : 0.0, 0.0));
        }
    }
}

TEST_CASE("inner product conjugates its second argument") {
    const SupportSet s = SupportSet::full(Level(1));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Eigen::VectorXcd f(2), g(2);
    f << complex<double>(inv_sqrt2, 0.0), complex<double>(0.0, inv_sqrt2);
    g << complex<double>(1.0, 0.0), complex<double>(0.0, 0.0);
    const auto ip = inner_product(TestFunction(s, f), TestFunction(s, g));
    CHECK(std::abs(ip - complex<double>(inv_sqrt2, 0.0)) < 1e-15);

    // Hermitian symmetry of the pairing.
    const auto flipped = inner_product(TestFunction(s, g), TestFunction(s, f));
    CHECK(std::abs(flipped - std::conj(ip)) < 1e-15);
}

TEST_CASE("inner product refuses mismatched supports") {
    const TestFunction f = TestFunction::basis_state(SupportSet::full(Level(1)), 0);
    const TestFunction g = TestFunction::basis_state(SupportSet::full(Level(2)), 0);
    CHECK_THROWS_AS(static_cast<void>(inner_product(f, g)), std::invalid_argument);

    const TestFunction h = TestFunction::basis_state(SupportSet(Level(1), {0}), 0);
    CHECK_THROWS_AS(static_cast<void>(inner_product(f, h)), std::invalid_argument);
}

TEST_CASE("averaging a constant reproduces it at every depth") {
    const Level fine(4);
    const SupportSet s = SupportSet::full(fine);
    // Pointwise value 1 everywhere: coefficients 2^(-l/2).
    const TestFunction one =
        TestFunction::from_ball_values(s, Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(s.size())));
    for (int lv = 0; lv <= 4; ++lv) {
        const TestFunction averaged = project_average(one, Level(lv));
        for (std::size_t p = 0; p < averaged.support().size(); ++p) {
            CHECK(std::abs(averaged.ball_value(p) - 1.0) < 1e-14);
        }
        CHECK(std::abs(averaged.norm() - 1.0) < 1e-14);
    }
}

TEST_CASE("averaging a fine basis state scales by the measure ratio") {
    const SupportSet fine = SupportSet::full(Level(3));
    const TestFunction e5 = TestFunction::basis_state(fine, 5);
    const TestFunction averaged = project_average(e5, Level(1));
    // Sole surviving coefficient: 2^((1-3)/2) = 1/2 at the parent residue 1.
    REQUIRE(averaged.support().size() == 2);  // parents of the full depth-3 set
    const auto pos = averaged.support().position(1);
    REQUIRE(pos.has_value());
    CHECK(std::abs(averaged.coefficients()[static_cast<Eigen::Index>(*pos)] -
                   complex<double>(0.5, 0.0)) < 1e-15);
    CHECK(averaged.coefficients().cwiseAbs().sum() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("embedding spreads coefficients isometrically") {
    const SupportSet coarse = SupportSet::full(Level(1));
    const TestFunction e0 = TestFunction::basis_state(coarse, 0);
    const TestFunction lifted = embed(e0, Level(3));
    REQUIRE(lifted.support().size() == 8);
    for (std::size_t p = 0; p < 8; ++p) {
        const std::uint32_t v = lifted.support().values()[p];
        const complex<double> c = lifted.coefficients()[static_cast<Eigen::Index>(p)];
        if (v % 2 == 0) {
            CHECK(std::abs(c - complex<double>(0.5, 0.0)) < 1e-15);
        } else {
            CHECK(c == complex<double>(0.0, 0.0));
        }
    }
    CHECK(std::abs(lifted.norm() - 1.0) < 1e-15);
}

TEST_CASE("embedding preserves norms and inner products") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        const int lv = std::uniform_int_distribution<int>(0, 5)(rng);
        const int rv = lv + std::uniform_int_distribution<int>(0, 3)(rng);
        const SupportSet s = SupportSet::full(Level(lv));
        const TestFunction f = random_function(s, rng);
        const TestFunction g = random_function(s, rng);
        const TestFunction fr = embed(f, Level(rv));
        const TestFunction gr = embed(g, Level(rv));
        CHECK(std::abs(fr.norm() - f.norm()) < 1e-14);
        CHECK(std::abs(inner_product(fr, gr) - inner_product(f, g)) < 1e-14);
    }
}

TEST_CASE("averaging retracts the embedding exactly") {
    std::mt19937_64 rng(202);
    for (int trial = 0; trial < 200; ++trial) {
        const int lv = std::uniform_int_distribution<int>(0, 5)(rng);
        const int rv = lv + std::uniform_int_distribution<int>(0, 3)(rng);
        const SupportSet s = SupportSet::full(Level(lv));
        const TestFunction f = random_function(s, rng);
        const TestFunction back = project_average(embed(f, Level(rv)), Level(lv));
        REQUIRE(back.support() == f.support());
        CHECK((back.coefficients() - f.coefficients()).norm() < 1e-14);
    }
}

TEST_CASE("averaging never increases the norm") {
    std::mt19937_64 rng(303);
    for (int trial = 0; trial < 1000; ++trial) {
        const int rv = std::uniform_int_distribution<int>(0, 6)(rng);
        const int lv = std::uniform_int_distribution<int>(0, rv)(rng);
        const SupportSet s = SupportSet::full(Level(rv));
        const TestFunction f = random_function(s, rng);
        CHECK(project_average(f, Level(lv)).norm() <= f.norm() + 1e-14);
    }
}

TEST_CASE("partial supports: averaging treats missing children as zero") {
    // Support {0, 2} at depth 2 inside the parent 0 mod 2: the average over
    // the parent ball picks up half the mass.
    const SupportSet s(Level(2), {0, 2});
    Eigen::VectorXcd c(2);
    c << complex<double>(1.0, 0.0), complex<double>(1.0, 0.0);
    const TestFunction f(s, c);
    const TestFunction averaged = project_average(f, Level(1));
    REQUIRE(averaged.support().size() == 1);
    CHECK(averaged.support().values()[0] == 0);
    // 2^((1-2)/2) * (1 + 1) = sqrt(2)
    CHECK(std::abs(averaged.coefficients()[0] - complex<double>(std::sqrt(2.0), 0.0)) < 1e-15);
}

TEST_CASE("residual against the embedded average shrinks as depth grows") {
    const Level fine(6);
    const SupportSet s = SupportSet::full(fine);
    const BallIndex origin(0, fine);
    const TestFunction f = TestFunction::from_sampler(s, [&](const BallIndex& ball) {
        return complex<double>(ultra_distance(ball, origin), 0.0);
    });
    double previous = -1.0;
    for (int lv = 0; lv <= 6; ++lv) {
        const TestFunction averaged_back = embed(project_average(f, Level(lv)), fine);
        const double residual = (f.coefficients() - averaged_back.coefficients()).norm();
        if (lv > 0) CHECK(residual <= previous + 1e-14);
        previous = residual;
    }
    CHECK(previous < 1e-14);  // depth 6 averaging is the identity
}

TEST_CASE("norm chain: sup norm dominates L2 dominates L1 on the unit ball") {
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 500; ++trial) {
        const int lv = std::uniform_int_distribution<int>(0, 6)(rng);
        const SupportSet s = SupportSet::full(Level(lv));
        const TestFunction f = random_function(s, rng);
        CHECK(f.sup_norm() >= f.norm() - 1e-12);
        CHECK(f.norm() >= f.l1_norm() - 1e-12);
    }
}

TEST_CASE("construction rejects mismatched coefficient counts") {
    CHECK_THROWS_AS(TestFunction(SupportSet::full(Level(2)), Eigen::VectorXcd::Zero(3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(
                        TestFunction::basis_state(SupportSet(Level(2), {0, 1}), 3)),
                    std::invalid_argument);
}

TEST_CASE("level ordering is enforced by both depth maps") {
    const TestFunction f = TestFunction::basis_state(SupportSet::full(Level(3)), 0);
    CHECK_THROWS_AS(static_cast<void>(embed(f, Level(2))), std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(project_average(f, Level(4))), std::invalid_argument);
}
