#ifndef COGMAP_MOTILITY_HPP
#define COGMAP_MOTILITY_HPP

#include <cmath>

#include "cogmap/common.hpp"

namespace cogmap {

// Motility gamma(z): positive, and strictly decreasing for the power family
// gamma(z) = 1/(z+c)^k. The constant variant is the classical random-dispersal
// control. z0 = c/k is the argmax of z -> -z gamma'(z) for power laws.
struct MotilityLaw {
    enum class Variant { power, constant };
    Variant variant = Variant::power;
    double c = 1.0;
    double k = 2.0;
    double gamma0 = 1.0;

    static MotilityLaw power(double c, double k) {
        require(c > 0.0 && k > 0.0, "motility: power law needs c > 0 and k > 0");
        MotilityLaw law;
        law.variant = Variant::power;
        law.c = c;
        law.k = k;
        return law;
    }
    static MotilityLaw constant(double g0) {
        require(g0 > 0.0, "motility: constant gamma must be positive");
        MotilityLaw law;
        law.variant = Variant::constant;
        law.gamma0 = g0;
        return law;
    }

    double z0() const { return variant == Variant::power ? c / k : 0.0; }
};

inline double gamma(const MotilityLaw& law, double z) {
    require(z >= 0.0, "gamma: z must be nonnegative");
    if (law.variant == MotilityLaw::Variant::constant) return law.gamma0;
    const double base = z + law.c;
    if (law.k == 2.0) return 1.0 / (base * base);
    if (law.k == 1.0) return 1.0 / base;
    return std::pow(base, -law.k);
}

inline double gamma_prime(const MotilityLaw& law, double z) {
    require(z >= 0.0, "gamma_prime: z must be nonnegative");
    if (law.variant == MotilityLaw::Variant::constant) return 0.0;
    const double base = z + law.c;
    if (law.k == 2.0) return -2.0 / (base * base * base);
    return -law.k * std::pow(base, -(law.k + 1.0));
}

inline double neg_z_gamma_prime(const MotilityLaw& law, double z) {
    return -z * gamma_prime(law, z);
}

struct ConditionCheck {
    bool pass = false;
    double sup_ratio = 0.0;  // sup over [0, M] of |gamma'/gamma|
    double threshold = 0.0;
    double margin = 0.0;     // threshold - sup_ratio
};

// sup_{[0,M]} |gamma'/gamma|. For power laws |gamma'/gamma| = k/(z+c) is
// decreasing, so the sup is k/c at z = 0.
inline double sup_log_derivative(const MotilityLaw& law, double M) {
    require(M > 0.0, "sup_log_derivative: M must be positive");
    if (law.variant == MotilityLaw::Variant::constant) return 0.0;
    return law.k / law.c;
}

// Existence condition for the logistic steady state: sup |gamma'/gamma| < 4/M
// with M = alpha * max sbar. Sufficient, not necessary.
inline ConditionCheck check_existence_condition(const MotilityLaw& law, double M) {
    ConditionCheck out;
    out.sup_ratio = sup_log_derivative(law, M);
    out.threshold = 4.0 / M;
    out.margin = out.threshold - out.sup_ratio;
    out.pass = out.sup_ratio < out.threshold;
    return out;
}

// Uniqueness condition: sup |gamma'/gamma| <= mu / (M * ||s||_inf).
inline ConditionCheck check_uniqueness_condition(const MotilityLaw& law, double M, double mu,
                                                 double s_max) {
    require(mu > 0.0 && s_max > 0.0, "uniqueness check: mu and s_max must be positive");
    ConditionCheck out;
    out.sup_ratio = sup_log_derivative(law, M);
    out.threshold = mu / (M * s_max);
    out.margin = out.threshold - out.sup_ratio;
    out.pass = out.sup_ratio <= out.threshold;
    return out;
}

} // namespace cogmap

#endif
