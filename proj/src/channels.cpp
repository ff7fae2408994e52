#include "fockcap/channels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace fockcap {

namespace {

const double kNegInf = -std::numeric_limits<double>::infinity();

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void check_transmissivity(double eta) {
    require(std::isfinite(eta) && eta >= 0.0 && eta <= 1.0, "transmissivity must lie in [0,1]");
}

void check_occupancy(double v, const char* msg) {
    require(std::isfinite(v) && v >= 0.0, msg);
}

// log weights of the binomial thinning of k photons at transmissivity eta;
// entries may be -inf at the endpoints eta = 0, 1
std::vector<double> log_binomial_weights(int k, double eta) {
    std::vector<double> lw(static_cast<std::size_t>(k) + 1, kNegInf);
    if (eta == 1.0) {
        lw[static_cast<std::size_t>(k)] = 0.0;
    } else if (eta == 0.0) {
        lw[0] = 0.0;
    } else {
        double le = std::log(eta), l1e = std::log1p(-eta);
        for (int m = 0; m <= k; ++m)
            lw[static_cast<std::size_t>(m)] = log_binomial(k, m) + m * le + (k - m) * l1e;
    }
    return lw;
}

struct BsBlocks {
    // one unitary per total photon number s; block s spans signal indices
    // [alo[s], alo[s] + u[s].rows())
    std::vector<Mat> u;
    std::vector<int> alo;
};

// exp(theta (a†b - a b†)) restricted to each total-photon subspace,
// theta = arccos(sqrt(eta)); |1,0> maps to sqrt(eta)|1,0> - sqrt(1-eta)|0,1>
BsBlocks make_bs_blocks(double eta, int dim_a, int dim_b) {
    double theta = std::acos(std::min(1.0, std::sqrt(eta)));
    BsBlocks blocks;
    int smax = dim_a + dim_b - 2;
    blocks.u.reserve(static_cast<std::size_t>(smax) + 1);
    blocks.alo.reserve(static_cast<std::size_t>(smax) + 1);
    for (int s = 0; s <= smax; ++s) {
        int alo = std::max(0, s - (dim_b - 1));
        int ahi = std::min(s, dim_a - 1);
        int sz = ahi - alo + 1;
        // H = i K with K the generator; K couples neighbours along the block
        Mat h = Mat::Zero(sz, sz);
        for (int a = alo; a < ahi; ++a) {
            double c = std::sqrt(double(a + 1) * double(s - a));
            h(a + 1 - alo, a - alo) = cplx(0.0, c);
            h(a - alo, a + 1 - alo) = cplx(0.0, -c);
        }
        Eigen::SelfAdjointEigenSolver<Mat> es(h);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("hermitian eigensolver did not converge");
        Vec rot(sz);
        for (int j = 0; j < sz; ++j) rot[j] = std::polar(1.0, -theta * es.eigenvalues()[j]);
        blocks.u.push_back(es.eigenvectors() * rot.asDiagonal() * es.eigenvectors().adjoint());
        blocks.alo.push_back(alo);
    }
    return blocks;
}

// nodes and weights of n-point Gauss-Hermite quadrature (weight e^{-x^2},
// total weight sqrt(pi)), by diagonalizing the Jacobi matrix
std::pair<std::vector<double>, std::vector<double>> gauss_hermite(int n) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k + 1 < n; ++k) {
        double b = std::sqrt(0.5 * double(k + 1));
        j(k, k + 1) = b;
        j(k + 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("quadrature eigensolver did not converge");
    std::vector<double> nodes(n), weights(n);
    const double sqrt_pi = std::sqrt(M_PI);
    for (int k = 0; k < n; ++k) {
        nodes[k] = es.eigenvalues()[k];
        double v0 = es.eigenvectors()(0, k);
        weights[k] = sqrt_pi * v0 * v0;
    }
    return {std::move(nodes), std::move(weights)};
}

}  // namespace

PhotonDistribution loss_number_dist(int k, double eta, int dim) {
    require(k >= 0, "input photon number must be >= 0");
    check_transmissivity(eta);
    require(dim >= 1, "dim must be >= 1");
    std::vector<double> p(static_cast<std::size_t>(dim), 0.0);
    auto lw = log_binomial_weights(k, eta);
    for (int m = 0; m <= k && m < dim; ++m)
        if (lw[static_cast<std::size_t>(m)] > kNegInf)
            p[static_cast<std::size_t>(m)] = std::exp(lw[static_cast<std::size_t>(m)]);
    PhotonDistribution out{std::move(p), 0.0};
    out.tail = std::max(0.0, 1.0 - out.sum());
    return out;
}

PhotonDistribution additive_number_dist(int m, double n_bar, int dim) {
    require(m >= 0, "input photon number must be >= 0");
    check_occupancy(n_bar, "added noise must be >= 0");
    require(dim >= 1, "dim must be >= 1");
    std::vector<double> p(static_cast<std::size_t>(dim), 0.0);
    if (n_bar == 0.0) {
        if (m < dim) p[static_cast<std::size_t>(m)] = 1.0;
    } else {
        double lx = std::log(n_bar), l1x = std::log1p(n_bar);
        std::vector<double> terms;
        for (int l = 0; l < dim; ++l) {
            terms.clear();
            for (int j = 0; j <= std::min(l, m); ++j)
                terms.push_back(log_binomial(l, j) + log_binomial(m, j) +
                                (m + l - 2 * j) * lx - (m + l + 1) * l1x);
            p[static_cast<std::size_t>(l)] = std::exp(logsumexp(terms));
        }
    }
    PhotonDistribution out{std::move(p), 0.0};
    out.tail = std::max(0.0, 1.0 - out.sum());
    return out;
}

PhotonDistribution thermal_number_dist(int k, double eta, double n_b, int dim) {
    require(k >= 0, "input photon number must be >= 0");
    check_transmissivity(eta);
    check_occupancy(n_b, "environment occupancy must be >= 0");
    require(dim >= 1, "dim must be >= 1");
    double y = (1.0 - eta) * n_b;
    std::vector<double> p(static_cast<std::size_t>(dim), 0.0);
    auto lw = log_binomial_weights(k, eta);
    if (y == 0.0) {
        for (int l = 0; l <= k && l < dim; ++l)
            if (lw[static_cast<std::size_t>(l)] > kNegInf)
                p[static_cast<std::size_t>(l)] = std::exp(lw[static_cast<std::size_t>(l)]);
    } else {
        double ly = std::log(y), l1y = std::log1p(y);
        std::vector<double> terms;
        for (int l = 0; l < dim; ++l) {
            terms.clear();
            for (int m = 0; m <= k; ++m) {
                if (lw[static_cast<std::size_t>(m)] == kNegInf) continue;
                for (int j = 0; j <= std::min(l, m); ++j)
                    terms.push_back(lw[static_cast<std::size_t>(m)] + log_binomial(l, j) +
                                    log_binomial(m, j) + (m + l - 2 * j) * ly -
                                    (m + l + 1) * l1y);
            }
            p[static_cast<std::size_t>(l)] = std::exp(logsumexp(terms));
        }
    }
    PhotonDistribution out{std::move(p), 0.0};
    out.tail = std::max(0.0, 1.0 - out.sum());
    return out;
}

int thermal_env_dim(double n_b, double leak_tol) {
    check_occupancy(n_b, "environment occupancy must be >= 0");
    require(leak_tol > 0.0 && leak_tol < 1.0, "leak tolerance must lie in (0,1)");
    if (n_b == 0.0) return 1;
    double log_ratio = std::log(n_b) - std::log1p(n_b);
    int d = std::max(1, int(std::ceil(std::log(leak_tol) / log_ratio)));
    while (std::exp(d * log_ratio) >= leak_tol) ++d;
    return d;
}

Mat beamsplitter_unitary(double eta, int dim) {
    check_transmissivity(eta);
    require(dim >= 1, "dim must be >= 1");
    auto blocks = make_bs_blocks(eta, dim, dim);
    Mat u = Mat::Zero(Eigen::Index(dim) * dim, Eigen::Index(dim) * dim);
    for (int s = 0; s < int(blocks.u.size()); ++s) {
        const Mat& us = blocks.u[static_cast<std::size_t>(s)];
        int alo = blocks.alo[static_cast<std::size_t>(s)];
        for (int i = 0; i < us.rows(); ++i)
            for (int j = 0; j < us.cols(); ++j) {
                int na = alo + i, nap = alo + j;
                u(Eigen::Index(na) * dim + (s - na), Eigen::Index(nap) * dim + (s - nap)) =
                    us(i, j);
            }
    }
    return u;
}

DensityMatrix thermal_apply(const DensityMatrix& rho, double eta, double n_b, int env_dim) {
    check_transmissivity(eta);
    check_occupancy(n_b, "environment occupancy must be >= 0");
    int da = rho.dim();
    int need = thermal_env_dim(n_b);
    int db = env_dim;
    if (db <= 0) db = std::max(da, need);
    else if (db < need)
        throw TruncationError("environment truncation too small for the requested occupancy",
                              need);

    std::vector<double> envp(static_cast<std::size_t>(db), 0.0);
    if (n_b == 0.0) {
        envp[0] = 1.0;
    } else {
        double log_ratio = std::log(n_b) - std::log1p(n_b);
        for (int t = 0; t < db; ++t)
            envp[static_cast<std::size_t>(t)] = std::exp(-std::log1p(n_b) + t * log_ratio);
    }

    auto blocks = make_bs_blocks(eta, da, db);
    int smax = da + db - 2;
    Mat out = Mat::Zero(da, da);

    // the joint state rho (x) env is supported on stripes n_b = n_b' inside
    // each block pair (s, s'); rotate the stripes and trace the environment
    // back out along them.  all-zero stripes are skipped, which makes
    // diagonal inputs (a single stripe per s) nearly free.
    for (int s = 0; s <= smax; ++s) {
        int alo_s = blocks.alo[static_cast<std::size_t>(s)];
        int ahi_s = alo_s + int(blocks.u[static_cast<std::size_t>(s)].rows()) - 1;
        for (int sp = std::max(0, s - (da - 1)); sp <= std::min(smax, s + da - 1); ++sp) {
            int alo_p = blocks.alo[static_cast<std::size_t>(sp)];
            int ahi_p = alo_p + int(blocks.u[static_cast<std::size_t>(sp)].rows()) - 1;
            int tlo = std::max(s - ahi_s, sp - ahi_p);
            int thi = std::min(s - alo_s, sp - alo_p);
            if (tlo > thi) continue;
            Mat a = Mat::Zero(ahi_s - alo_s + 1, ahi_p - alo_p + 1);
            bool any = false;
            for (int t = tlo; t <= thi; ++t) {
                cplx v = rho.entries(s - t, sp - t) * envp[static_cast<std::size_t>(t)];
                if (v != cplx(0.0)) {
                    a(s - t - alo_s, sp - t - alo_p) = v;
                    any = true;
                }
            }
            if (!any) continue;
            Mat x = blocks.u[static_cast<std::size_t>(s)] * a *
                    blocks.u[static_cast<std::size_t>(sp)].adjoint();
            for (int t = tlo; t <= thi; ++t)
                out(s - t, sp - t) += x(s - t - alo_s, sp - t - alo_p);
        }
    }

    double leak = rho.trace() + rho.leakage - out.real().trace();
    return DensityMatrix::make(std::move(out), std::max(0.0, leak), 1e-8);
}

AdditiveApplyResult additive_apply(const DensityMatrix& rho, double n_bar, QuadratureSpec grid) {
    check_occupancy(n_bar, "added noise must be >= 0");
    require(grid.points_per_axis >= 1, "quadrature must use at least one point per axis");
    if (n_bar == 0.0) return AdditiveApplyResult{rho, 0.0, 0.0};

    auto [nodes, weights] = gauss_hermite(grid.points_per_axis);
    double umax = 0.0;
    for (double u : nodes) umax = std::max(umax, std::abs(u));
    if (umax < 6.0)
        throw ToleranceError(
            "quadrature grid spans fewer than six standard deviations; raise points_per_axis");

    int dim = rho.dim();
    // one eigendecomposition of i(a† - a); every displacement is then a pair
    // of diagonal rotations around it
    Mat h = Mat::Zero(dim, dim);
    for (int k = 0; k + 1 < dim; ++k) {
        double c = std::sqrt(double(k + 1));
        h(k + 1, k) = cplx(0.0, c);
        h(k, k + 1) = cplx(0.0, -c);
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("hermitian eigensolver did not converge");
    const Mat& v = es.eigenvectors();
    Mat vadj = v.adjoint();

    double scale = std::sqrt(n_bar);
    Mat out = Mat::Zero(dim, dim);
    double wsum = 0.0;
    Vec rot(dim);
    Mat disp(dim, dim);
    for (int i = 0; i < grid.points_per_axis; ++i) {
        for (int j = 0; j < grid.points_per_axis; ++j) {
            double re = scale * nodes[static_cast<std::size_t>(i)];
            double im = scale * nodes[static_cast<std::size_t>(j)];
            double w = weights[static_cast<std::size_t>(i)] *
                       weights[static_cast<std::size_t>(j)] / M_PI;
            wsum += w;
            double r = std::hypot(re, im);
            double phase = std::atan2(im, re);
            for (int k = 0; k < dim; ++k) rot[k] = std::polar(1.0, -r * es.eigenvalues()[k]);
            disp.noalias() = v * rot.asDiagonal() * vadj;
            if (phase != 0.0)
                for (int m = 0; m < dim; ++m)
                    for (int k = 0; k < dim; ++k) disp(m, k) *= std::polar(1.0, (m - k) * phase);
            out.noalias() += w * (disp * rho.entries * disp.adjoint());
        }
    }

    double leak = rho.trace() + rho.leakage - out.real().trace();
    double quadrature_tol = grid.points_per_axis >= 64 ? 1e-6 : 1e-4;
    return AdditiveApplyResult{
        DensityMatrix::make(std::move(out), std::max(0.0, leak), 1e-8),
        quadrature_tol, std::abs(wsum - 1.0)};
}

}  // namespace fockcap
