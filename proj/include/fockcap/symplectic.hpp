#pragma once

#include <cmath>
#include <stdexcept>

namespace fockcap {

/**
 * Single-mode phase-insensitive Gaussian channel tracked at covariance level:
 * a symmetrized variance gamma maps to x^2 * gamma + y.  Physicality demands
 * y >= |1 - x^2| (vacuum noise floor), enforced on every construction.
 */
struct GaussChannel {
    double x;
    double y;
};

inline GaussChannel check_physical(GaussChannel c) {
    if (!(c.y >= std::abs(1.0 - c.x * c.x) - 1e-12))
        throw std::invalid_argument("gauss channel below the vacuum noise floor");
    return c;
}

inline GaussChannel make_additive(double n_bar) {
    if (!(n_bar >= 0.0)) throw std::invalid_argument("n_bar must be >= 0");
    return check_physical({1.0, 2.0 * n_bar});
}

inline GaussChannel make_loss(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must be in [0, 1]");
    return check_physical({std::sqrt(eta), 1.0 - eta});
}

inline GaussChannel make_thermal(double eta, double n_b) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must be in [0, 1]");
    if (!(n_b >= 0.0)) throw std::invalid_argument("n_b must be >= 0");
    return check_physical({std::sqrt(eta), (1.0 - eta) * (2.0 * n_b + 1.0)});
}

inline GaussChannel make_amplifier(double gain) {
    if (!(gain >= 1.0)) throw std::invalid_argument("gain must be >= 1");
    return check_physical({std::sqrt(gain), gain - 1.0});
}

// second ∘ first, i.e. `first` acts on the state before `second`.
inline GaussChannel compose(GaussChannel second, GaussChannel first) {
    return check_physical(
        {second.x * first.x, second.x * second.x * first.y + second.y});
}

inline double apply_to_variance(GaussChannel c, double gamma) {
    return c.x * c.x * gamma + c.y;
}

}  // namespace fockcap
