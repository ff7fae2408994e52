#include "fockcap/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fockcap {

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kMassTol = 1e-9;
const double kNegInf = -std::numeric_limits<double>::infinity();

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

double herm_defect(const Mat& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::SelfAdjointEigenSolver<Mat> solve_hermitian(const Mat& m, bool vectors) {
    Eigen::SelfAdjointEigenSolver<Mat> es;
    es.compute(m, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("hermitian eigensolver did not converge");
    return es;
}

}  // namespace

double log_factorial(int k) {
    require(k >= 0, "factorial argument must be >= 0");
    return std::lgamma(double(k) + 1.0);
}

double log_binomial(int n, int k) {
    require(n >= 0, "binomial row must be >= 0");
    if (k < 0 || k > n) return kNegInf;
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double logsumexp(const std::vector<double>& log_terms) {
    double m = kNegInf;
    for (double t : log_terms) m = std::max(m, t);
    if (!(m > kNegInf)) return kNegInf;
    double s = 0.0;
    for (double t : log_terms)
        if (t > kNegInf) s += std::exp(t - m);
    return m + std::log(s);
}

DensityMatrix DensityMatrix::make(Mat m, double leakage, double psd_tol) {
    require(m.rows() > 0 && m.rows() == m.cols(), "state matrix must be square");
    require(std::isfinite(leakage) && leakage >= -1e-12, "leakage must be a small nonnegative real");
    if (herm_defect(m) > kHermTol)
        throw std::invalid_argument("state matrix is not hermitian");
    Mat sym = 0.5 * (m + m.adjoint());
    auto es = solve_hermitian(sym, false);
    if (es.eigenvalues().minCoeff() < -psd_tol)
        throw std::invalid_argument("state matrix has a negative eigenvalue beyond tolerance");
    double mass = sym.real().trace() + std::max(leakage, 0.0);
    if (std::abs(mass - 1.0) > kMassTol)
        throw std::invalid_argument("trace plus leakage must equal 1");
    return DensityMatrix{std::move(sym), std::max(leakage, 0.0)};
}

DensityMatrix DensityMatrix::make_unchecked(Mat m, double leakage) {
    require(m.rows() > 0 && m.rows() == m.cols(), "state matrix must be square");
    require(std::isfinite(leakage) && leakage >= -1e-12, "leakage must be a small nonnegative real");
    if (herm_defect(m) > kHermTol)
        throw std::invalid_argument("state matrix is not hermitian");
    Mat sym = 0.5 * (m + m.adjoint());
    double mass = sym.real().trace() + std::max(leakage, 0.0);
    if (std::abs(mass - 1.0) > kMassTol)
        throw std::invalid_argument("trace plus leakage must equal 1");
    return DensityMatrix{std::move(sym), std::max(leakage, 0.0)};
}

double PhotonDistribution::sum() const {
    double s = 0.0;
    for (double p : probs) s += p;
    return s;
}

double PhotonDistribution::mean() const {
    double s = 0.0;
    for (std::size_t l = 0; l < probs.size(); ++l) s += double(l) * probs[l];
    return s;
}

double PhotonDistribution::second_moment() const {
    double s = 0.0;
    for (std::size_t l = 0; l < probs.size(); ++l) s += double(l) * double(l) * probs[l];
    return s;
}

FockVector coherent_state(cplx alpha, int dim) {
    require(dim >= 1, "dim must be >= 1");
    require(std::isfinite(alpha.real()) && std::isfinite(alpha.imag()), "alpha must be finite");
    Vec amps = Vec::Zero(dim);
    double a2 = std::norm(alpha);
    if (a2 == 0.0) {
        amps[0] = 1.0;
        return FockVector{std::move(amps), 0.0};
    }
    // amplitudes assembled as log-magnitude plus phase to survive large |alpha|
    double log_abs = 0.5 * std::log(a2);
    double phase = std::arg(alpha);
    double captured = 0.0;
    for (int k = 0; k < dim; ++k) {
        double mag = std::exp(-0.5 * a2 + k * log_abs - 0.5 * log_factorial(k));
        amps[k] = std::polar(mag, k * phase);
        captured += mag * mag;
    }
    return FockVector{std::move(amps), std::max(0.0, 1.0 - captured)};
}

DensityMatrix vacuum_state(int dim) {
    require(dim >= 1, "dim must be >= 1");
    Mat m = Mat::Zero(dim, dim);
    m(0, 0) = 1.0;
    return DensityMatrix{std::move(m), 0.0};
}

DensityMatrix thermal_state(double mean_photons, int dim) {
    require(dim >= 1, "dim must be >= 1");
    require(std::isfinite(mean_photons) && mean_photons >= 0.0, "mean photon number must be >= 0");
    if (mean_photons == 0.0) return vacuum_state(dim);
    Mat m = Mat::Zero(dim, dim);
    double log_ratio = std::log(mean_photons) - std::log1p(mean_photons);
    for (int k = 0; k < dim; ++k)
        m(k, k) = std::exp(-std::log1p(mean_photons) + k * log_ratio);
    // geometric tail sums in closed form
    double leak = std::exp(dim * log_ratio);
    return DensityMatrix{std::move(m), leak};
}

DensityMatrix pure_density(const FockVector& psi) {
    require(psi.dim() >= 1, "state must be nonempty");
    Mat m = psi.amps * psi.amps.adjoint();
    return DensityMatrix::make_unchecked(std::move(m), psi.leakage);
}

Mat displacement_operator(cplx alpha, int dim) {
    require(dim >= 1, "dim must be >= 1");
    require(std::isfinite(alpha.real()) && std::isfinite(alpha.imag()), "alpha must be finite");
    double r = std::abs(alpha);
    double phase = std::arg(alpha);
    // i(a† - a) is hermitian; exp(r(a† - a)) = V e^{-i r mu} V†
    Mat h = Mat::Zero(dim, dim);
    for (int k = 0; k + 1 < dim; ++k) {
        double c = std::sqrt(double(k + 1));
        h(k + 1, k) = cplx(0.0, c);
        h(k, k + 1) = cplx(0.0, -c);
    }
    auto es = solve_hermitian(h, true);
    Vec rot(dim);
    for (int k = 0; k < dim; ++k) rot[k] = std::polar(1.0, -r * es.eigenvalues()[k]);
    Mat d = es.eigenvectors() * rot.asDiagonal() * es.eigenvectors().adjoint();
    if (phase != 0.0) {
        // conjugate by the number-basis rotation that tilts a† to e^{i phase} a†
        for (int m = 0; m < dim; ++m)
            for (int k = 0; k < dim; ++k) d(m, k) *= std::polar(1.0, (m - k) * phase);
    }
    return d;
}

double unitary_defect(const Mat& u, const std::vector<int>& block) {
    require(u.rows() == u.cols() && u.rows() > 0, "operator must be square");
    require(!block.empty(), "defect block must be nonempty");
    Mat cols(u.rows(), static_cast<Eigen::Index>(block.size()));
    for (std::size_t j = 0; j < block.size(); ++j) {
        require(block[j] >= 0 && block[j] < u.cols(), "defect block index out of range");
        cols.col(static_cast<Eigen::Index>(j)) = u.col(block[j]);
    }
    Mat s = cols.adjoint() * cols;
    s -= Mat::Identity(s.rows(), s.cols());
    auto es = solve_hermitian(s, false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

std::vector<double> hermitian_eigenvalues(const Mat& m) {
    require(m.rows() == m.cols() && m.rows() > 0, "matrix must be square");
    Mat sym = 0.5 * (m + m.adjoint());
    auto es = solve_hermitian(sym, false);
    return std::vector<double>(es.eigenvalues().data(),
                               es.eigenvalues().data() + es.eigenvalues().size());
}

double trace_norm(const Mat& hermitian) {
    double s = 0.0;
    for (double lam : hermitian_eigenvalues(hermitian)) s += std::abs(lam);
    return s;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require(rho.dim() == sigma.dim(), "states must share a dimension");
    Mat diff = rho.entries - sigma.entries;
    // orient the difference deterministically so the distance is exactly
    // symmetric in its arguments
    double sign = 0.0;
    for (Eigen::Index i = 0; i < diff.rows() && sign == 0.0; ++i)
        for (Eigen::Index j = 0; j < diff.cols() && sign == 0.0; ++j) {
            cplx v = diff(i, j);
            if (v.real() != 0.0) sign = v.real() > 0.0 ? 1.0 : -1.0;
            else if (v.imag() != 0.0) sign = v.imag() > 0.0 ? 1.0 : -1.0;
        }
    if (sign < 0.0) diff = -diff;
    return 0.5 * trace_norm(diff);
}

double infinity_norm(const DensityMatrix& rho) {
    double m = 0.0;
    for (double lam : hermitian_eigenvalues(rho.entries)) m = std::max(m, std::abs(lam));
    return m;
}

double gentle_measurement_defect(const DensityMatrix& rho, const Mat& op) {
    require(op.rows() == rho.dim() && op.cols() == rho.dim(),
            "measurement operator must match the state dimension");
    if (herm_defect(op) > kHermTol)
        throw std::invalid_argument("measurement operator is not hermitian");
    Mat sym = 0.5 * (op + op.adjoint());
    auto es = solve_hermitian(sym, true);
    Eigen::VectorXd lam = es.eigenvalues();
    if (lam.minCoeff() < -1e-10 || lam.maxCoeff() > 1.0 + 1e-10)
        throw std::invalid_argument("measurement operator must satisfy 0 <= op <= I");
    Vec root(lam.size());
    for (Eigen::Index k = 0; k < lam.size(); ++k)
        root[k] = std::sqrt(std::clamp(lam[k], 0.0, 1.0));
    Mat s = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
    return trace_norm(rho.entries - s * rho.entries * s);
}

BigInt projector_rank(int modes, int limit) {
    require(modes >= 1, "modes must be >= 1");
    require(limit >= 0, "limit must be >= 0");
    // tuples with total <= limit: C(limit + modes, modes); every prefix of the
    // running product below is itself a binomial, so division stays exact
    BigInt r = 1;
    for (int i = 1; i <= modes; ++i) {
        r *= limit + i;
        r /= i;
    }
    return r;
}

// gcc's fortify analysis misreads boost cpp_int's small-value branch on the
// shift below and warns about an impossible overread; the shift is bounded
#if defined(__GNUC__) && !defined(__clang__)
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wstringop-overread"
#pragma GCC diagnostic ignored "-Wstringop-overflow"
#endif
double log2_projector_rank(int modes, int limit) {
    BigInt r = projector_rank(modes, limit);
    std::size_t bits = boost::multiprecision::msb(r);
    if (bits < 1000) return std::log2(r.convert_to<double>());
    BigInt top = r;
    top >>= (bits - 52);
    return double(bits - 52) + std::log2(top.convert_to<double>());
}
#if defined(__GNUC__) && !defined(__clang__)
#pragma GCC diagnostic pop
#endif

BigInt CutoffProjector::rank() const { return projector_rank(modes, limit); }

}  // namespace fockcap
