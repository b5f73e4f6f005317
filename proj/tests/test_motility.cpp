#include <doctest.h>

#include <cmath>

#include "cogmap/motility.hpp"
#include "oracles.hpp"

using namespace cogmap;

TEST_CASE("gamma values") {
    const MotilityLaw law = MotilityLaw::power(1.0, 2.0);
    CHECK(gamma(law, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gamma(law, 1.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(gamma(MotilityLaw::constant(0.7), 3.0) == 0.7);
    CHECK_THROWS_AS(gamma(law, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(gamma_prime(law, -1.0), std::invalid_argument);
}

TEST_CASE("gamma is positive and decreasing on a sample grid") {
    for (const MotilityLaw& law : {MotilityLaw::power(1.0, 2.0), MotilityLaw::power(0.5, 3.0)}) {
        double prev = gamma(law, 0.0);
        for (int i = 1; i <= 400; ++i) {
            const double z = 10.0 * i / 400.0;
            const double g = gamma(law, z);
            CHECK(g > 0.0);
            CHECK(g < prev);
            CHECK(g >= gamma(law, 10.0));
            prev = g;
        }
    }
}

TEST_CASE("gamma_prime matches central differences") {
    for (const MotilityLaw& law : {MotilityLaw::power(1.0, 2.0), MotilityLaw::power(2.0, 0.5),
                                   MotilityLaw::constant(0.3)}) {
        for (double z : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
            const double fd = oracles::central_difference(
                [&](double t) { return gamma(law, t); }, z, 1e-5);
            CHECK(gamma_prime(law, z) == doctest::Approx(fd).epsilon(1e-8));
        }
    }
}

TEST_CASE("neg_z_gamma_prime is unimodal with argmax c/k") {
    const MotilityLaw law = MotilityLaw::power(1.0, 2.0);
    CHECK(gamma_prime(law, 0.0) == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(neg_z_gamma_prime(law, 0.0) == 0.0);
    CHECK(law.z0() == doctest::Approx(0.5));

    for (const MotilityLaw& l : {MotilityLaw::power(1.0, 2.0), MotilityLaw::power(2.0, 0.5)}) {
        const double z0 = l.z0();
        double best_z = 0.0, best_v = -1.0;
        bool rising = true;
        double prev = 0.0;
        for (int i = 0; i <= 4000; ++i) {
            const double z = 4.0 * z0 * i / 4000.0;
            const double v = neg_z_gamma_prime(l, z);
            if (v > best_v) {
                best_v = v;
                best_z = z;
            }
            if (i > 0) {
                if (rising && v < prev) rising = false;
                else if (!rising) CHECK(v <= prev + 1e-15);  // no second rise
            }
            prev = v;
        }
        CHECK(best_z == doctest::Approx(z0).epsilon(1e-3));
    }
}

TEST_CASE("existence condition check") {
    const MotilityLaw law = MotilityLaw::power(1.0, 2.0);
    const ConditionCheck pass = check_existence_condition(law, 1.0);
    CHECK(pass.pass);
    CHECK(pass.sup_ratio == doctest::Approx(2.0));
    CHECK(pass.margin == doctest::Approx(2.0));

    const ConditionCheck fail = check_existence_condition(law, 3.0);
    CHECK_FALSE(fail.pass);
    CHECK(fail.threshold == doctest::Approx(4.0 / 3.0));

    // dense grid sup of |gamma'/gamma| equals the closed form k/c
    for (double M : {0.5, 1.0, 3.0}) {
        double sup = 0.0;
        for (int i = 0; i <= 20000; ++i) {
            const double z = M * i / 20000.0;
            sup = std::max(sup, std::abs(gamma_prime(law, z) / gamma(law, z)));
        }
        CHECK(std::abs(sup - sup_log_derivative(law, M)) < 1e-12);
    }
}

TEST_CASE("uniqueness condition check") {
    const MotilityLaw law = MotilityLaw::power(1.0, 2.0);
    CHECK(check_uniqueness_condition(law, 1.0, 3.0, 1.0).pass);
    CHECK_FALSE(check_uniqueness_condition(law, 1.0, 1.0, 1.0).pass);
    CHECK(check_uniqueness_condition(MotilityLaw::constant(2.0), 5.0, 0.01, 10.0).pass);
}
