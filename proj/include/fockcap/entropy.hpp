#pragma once

#include <vector>

#include "fockcap/fock.hpp"

namespace fockcap {

// (x+1) log2(x+1) - x log2(x), the entropy of a thermal state with mean x.
double g(double x);

// Renyi entropy of order alpha > 1 in bits; alpha = +inf gives min-entropy.
// Spectra with tail/leakage above 1e-9 are refused, smaller tails are
// renormalized away.
double renyi_entropy(const std::vector<double>& probs, double alpha,
                     double tail = 0.0);
double renyi_entropy(const PhotonDistribution& dist, double alpha);
double renyi_entropy(const DensityMatrix& rho, double alpha);

double shannon_entropy(const std::vector<double>& probs, double tail = 0.0);
double min_entropy(const std::vector<double>& probs, double tail = 0.0);
double min_entropy(const DensityMatrix& rho);

// Smallest output Renyi entropy of the channel over all inputs, closed form,
// integer alpha >= 2.
double min_output_renyi_additive(double n_bar, int alpha);
double min_output_renyi_thermal(double eta, double n_b, int alpha);

struct SmoothingResult {
    double smooth_min_entropy;      // -log2 of the flattening threshold
    double achieved_distance;       // total-variation distance to the input
    std::vector<double> smoothed;   // the explicit nearby distribution
    double threshold;               // flattening level p
    double feasibility_cap;         // largest admissible eps for this input
};

// Flatten the largest entries down to a common threshold removing eps of
// mass, and return it to the complement.  eps must stay strictly below the
// feasibility cap (threshold reaching the mean probability).
SmoothingResult smooth_min_entropy(const std::vector<double>& probs, double eps);

struct SmoothingCheck {
    double lhs;   // smoothed min-entropy
    double rhs;   // renyi_entropy(alpha) - log2(1/eps)/(alpha-1)
    bool holds;
};

SmoothingCheck verify_renyi_smoothing(const std::vector<double>& probs,
                                      double alpha, double eps);

}  // namespace fockcap
