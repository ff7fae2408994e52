#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace fockcap {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using BigInt = boost::multiprecision::cpp_int;

// Requested truncation is too small to represent the result honestly.
class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& what, int required)
        : std::runtime_error(what), required_dim(required) {}
    int required_dim;
};

// A declared numerical tolerance cannot be met (infeasible request).
class ToleranceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Pure state over photon numbers 0..dim-1.  Weight pushed past the cutoff is
 * tracked in `leakage`, so squared norm + leakage stays within 1e-9 of 1.
 */
struct FockVector {
    Vec amps;
    double leakage = 0.0;

    int dim() const { return static_cast<int>(amps.size()); }
    double norm2() const { return amps.squaredNorm(); }
};

/**
 * Mixed state on the truncated space: Hermitian to 1e-12, eigenvalues above
 * -psd_tol, trace + leakage within 1e-9 of 1.  Built through make() so the
 * invariants are checked once at the boundary.
 */
struct DensityMatrix {
    Mat entries;
    double leakage = 0.0;

    int dim() const { return static_cast<int>(entries.rows()); }
    double trace() const { return entries.real().trace(); }

    static DensityMatrix make(Mat m, double leakage, double psd_tol = 1e-10);
    // For states positive by construction (outer products, convex mixtures,
    // tensor products of checked states); validates hermiticity only.
    static DensityMatrix make_unchecked(Mat m, double leakage);
};

/** Distribution over photon numbers 0..probs.size()-1 plus truncated tail. */
struct PhotonDistribution {
    std::vector<double> probs;
    double tail = 0.0;

    double sum() const;
    double mean() const;           // truncated first moment
    double second_moment() const;  // truncated second moment
};

// Projector onto total photon number <= limit across `modes` modes.
struct CutoffProjector {
    int modes;
    int limit;

    BigInt rank() const;
};

// ---- log-space helpers (all factorials/binomials go through lgamma) ----

double log_factorial(int k);
double log_binomial(int n, int k);  // -inf for k outside [0, n]
double logsumexp(const std::vector<double>& log_terms);

// ---- states ----

FockVector coherent_state(cplx alpha, int dim);
DensityMatrix vacuum_state(int dim);
DensityMatrix thermal_state(double mean_photons, int dim);
DensityMatrix pure_density(const FockVector& psi);

// ---- operators and functionals ----

// exp(alpha a† - conj(alpha) a) on the truncated space, dim should be at
// least 4x the photon scale actually used (validated by its unitary defect).
Mat displacement_operator(cplx alpha, int dim);

// Spectral norm of (U†U - I) restricted to the given basis columns.
double unitary_defect(const Mat& u, const std::vector<int>& block);

std::vector<double> hermitian_eigenvalues(const Mat& m);
double trace_norm(const Mat& hermitian);
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double infinity_norm(const DensityMatrix& rho);

// || rho - sqrt(op) rho sqrt(op) ||_1 for a measurement operator 0 <= op <= I.
double gentle_measurement_defect(const DensityMatrix& rho, const Mat& op);

BigInt projector_rank(int modes, int limit);
double log2_projector_rank(int modes, int limit);

}  // namespace fockcap
