#pragma once

#include "fockcap/fock.hpp"

namespace fockcap {

/**
 * Parameter bundle for the channel family.  eta is the transmissivity of the
 * embedded beamsplitter, n_b the environment mean photon number, n_bar the
 * variance of the random-displacement channel, gain the amplifier gain.
 */
struct ChannelParams {
    double eta = 1.0;
    double n_b = 0.0;
    double n_bar = 0.0;
    double gain = 1.0;

    // Gain of the amplifier in the amplifier-after-loss factorization.
    double amplifier_gain() const { return (1.0 - eta) * n_b + 1.0; }
    // Transmissivity of the pure-loss stage in the same factorization.
    double residual_transmissivity() const { return eta / amplifier_gain(); }
};

// Output photon distribution of pure loss on input |k>.
PhotonDistribution loss_number_dist(int k, double eta, int dim);

// Output photon distribution of the random-displacement channel on |m>.
PhotonDistribution additive_number_dist(int m, double n_bar, int dim);

// Output photon distribution of the thermal channel on |k>; mean eta*k + (1-eta)*n_b.
PhotonDistribution thermal_number_dist(int k, double eta, double n_b, int dim);

// Smallest environment dimension keeping thermal-state leakage below leak_tol.
int thermal_env_dim(double n_b, double leak_tol = 1e-8);

// Two-mode beamsplitter exp(theta (a†b - a b†)), cos(theta) = sqrt(eta),
// both modes truncated at dim; basis index is n_a * dim + n_b.
Mat beamsplitter_unitary(double eta, int dim);

// Beamsplitter dilation with a thermal environment, traced back to the signal
// mode.  env_dim = 0 picks max(rho.dim(), thermal_env_dim(n_b)); explicit
// env_dim below the thermal requirement raises TruncationError.
DensityMatrix thermal_apply(const DensityMatrix& rho, double eta, double n_b,
                            int env_dim = 0);

struct QuadratureSpec {
    int points_per_axis = 64;  // tensor Gauss-Hermite, per real axis
};

struct AdditiveApplyResult {
    DensityMatrix state;
    double quadrature_tol;  // declared accuracy of the quadrature used
    double weight_defect;   // |sum of quadrature weights / pi - 1|
};

// Gaussian-weighted displacement average of rho with variance n_bar.
AdditiveApplyResult additive_apply(const DensityMatrix& rho, double n_bar,
                                   QuadratureSpec grid = {});

}  // namespace fockcap
