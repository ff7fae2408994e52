#include "fockcap/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

namespace fockcap {

namespace {

constexpr double kTailTol = 1e-9;
const double kLn2 = std::log(2.0);

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

// clip tiny negatives, reject real ones, renormalize to unit mass (the
// discarded tail must already be negligible)
std::vector<double> clean_probs(const std::vector<double>& probs, double tail) {
    require(!probs.empty(), "distribution must be nonempty");
    require(std::isfinite(tail) && tail >= -1e-12, "tail mass must be a small nonnegative real");
    if (tail > kTailTol)
        throw std::invalid_argument("distribution tail mass too large for an entropy evaluation");
    std::vector<double> p(probs.size());
    double s = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        double v = probs[i];
        require(std::isfinite(v) && v >= -1e-12, "probabilities must be >= 0");
        p[i] = std::max(v, 0.0);
        s += p[i];
    }
    require(s > 0.0, "distribution must have positive mass");
    require(std::abs(s + std::max(tail, 0.0) - 1.0) <= kTailTol,
            "probabilities plus tail must sum to 1");
    for (double& v : p) v /= s;
    return p;
}

}  // namespace

double g(double x) {
    require(std::isfinite(x) && x >= 0.0, "mean photon number must be >= 0");
    if (x == 0.0) return 0.0;
    // (x+1)log2(x+1) - x log2 x, grouped to avoid cancellation at large x
    return std::log2(x + 1.0) + x * std::log1p(1.0 / x) / kLn2;
}

double renyi_entropy(const std::vector<double>& probs, double alpha, double tail) {
    require(alpha > 1.0, "order must exceed 1");
    auto p = clean_probs(probs, tail);
    double pmax = *std::max_element(p.begin(), p.end());
    if (std::isinf(alpha)) return -std::log2(pmax);
    require(std::isfinite(alpha), "order must be finite or +infinity");
    // sum p^alpha in units of pmax^alpha for stability
    double s = 0.0;
    for (double v : p)
        if (v > 0.0) s += std::exp(alpha * std::log(v / pmax));
    return (alpha * std::log2(pmax) + std::log2(s)) / (1.0 - alpha);
}

double renyi_entropy(const PhotonDistribution& dist, double alpha) {
    return renyi_entropy(dist.probs, alpha, dist.tail);
}

double renyi_entropy(const DensityMatrix& rho, double alpha) {
    auto lam = hermitian_eigenvalues(rho.entries);
    return renyi_entropy(lam, alpha, rho.leakage);
}

double shannon_entropy(const std::vector<double>& probs, double tail) {
    auto p = clean_probs(probs, tail);
    double h = 0.0;
    for (double v : p)
        if (v > 0.0) h -= v * std::log2(v);
    return h;
}

double min_entropy(const std::vector<double>& probs, double tail) {
    auto p = clean_probs(probs, tail);
    return -std::log2(*std::max_element(p.begin(), p.end()));
}

double min_entropy(const DensityMatrix& rho) {
    auto lam = hermitian_eigenvalues(rho.entries);
    return min_entropy(lam, rho.leakage);
}

double min_output_renyi_additive(double n_bar, int alpha) {
    require(std::isfinite(n_bar) && n_bar >= 0.0, "added noise must be >= 0");
    require(alpha >= 2, "order must be an integer >= 2");
    if (n_bar == 0.0) return 0.0;
    // log2[(n+1)^a - n^a] = a log2(n+1) + log2(1 - (n/(n+1))^a), kept stable
    // for both tiny and large occupancies
    double log_ratio = std::log(n_bar) - std::log1p(n_bar);
    double inner = std::log1p(-std::exp(alpha * log_ratio)) / kLn2;
    return (alpha * std::log2(n_bar + 1.0) + inner) / (double(alpha) - 1.0);
}

double min_output_renyi_thermal(double eta, double n_b, int alpha) {
    require(std::isfinite(eta) && eta >= 0.0 && eta <= 1.0, "transmissivity must lie in [0,1]");
    require(std::isfinite(n_b) && n_b >= 0.0, "environment occupancy must be >= 0");
    return min_output_renyi_additive((1.0 - eta) * n_b, alpha);
}

SmoothingResult smooth_min_entropy(const std::vector<double>& probs, double eps) {
    require(std::isfinite(eps) && eps >= 0.0, "smoothing radius must be >= 0");
    auto p = clean_probs(probs, 0.0);
    std::size_t n = p.size();
    double pmax = *std::max_element(p.begin(), p.end());

    double cap = 0.0;
    for (double v : p) cap += std::max(v - 1.0 / double(n), 0.0);

    if (eps == 0.0)
        return SmoothingResult{-std::log2(pmax), 0.0, p, pmax, cap};

    if (eps >= cap) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "smoothing radius %.17g is not below the feasibility cap %.17g", eps, cap);
        throw ToleranceError(msg);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return p[a] > p[b]; });

    // lower the largest k entries to a common level thr chosen so exactly eps
    // of mass is shaved off the top
    double prefix = 0.0;
    std::size_t k = 0;
    double thr = 0.0;
    for (std::size_t t = 1; t <= n; ++t) {
        prefix += p[order[t - 1]];
        double cand = (prefix - eps) / double(t);
        double next = t < n ? p[order[t]] : -std::numeric_limits<double>::infinity();
        if (cand >= next - 1e-15) {
            k = t;
            thr = cand;
            break;
        }
    }
    if (k == 0) throw std::runtime_error("waterfilling scan failed to locate a level");

    std::vector<double> q = p;
    double outside = 0.0;
    for (std::size_t t = k; t < n; ++t) outside += p[order[t]];
    for (std::size_t t = 0; t < k; ++t) q[order[t]] = thr;
    if (outside > 0.0) {
        double boost = 1.0 + eps / outside;
        for (std::size_t t = k; t < n; ++t) q[order[t]] = p[order[t]] * boost;
    } else if (k < n) {
        // everything below the level is exactly zero: spread the shaved mass
        // uniformly there (eps < cap guarantees thr > 1/n >= the spread value)
        double fill = eps / double(n - k);
        for (std::size_t t = k; t < n; ++t) q[order[t]] = fill;
    }

    double dist = 0.0;
    for (std::size_t i = 0; i < n; ++i) dist += std::abs(q[i] - p[i]);
    dist *= 0.5;

    return SmoothingResult{-std::log2(thr), dist, std::move(q), thr, cap};
}

SmoothingCheck verify_renyi_smoothing(const std::vector<double>& probs, double alpha, double eps) {
    require(std::isfinite(alpha) && alpha > 1.0, "order must exceed 1");
    require(std::isfinite(eps) && eps > 0.0 && eps < 1.0, "smoothing radius must lie in (0,1)");
    double lhs = smooth_min_entropy(probs, eps).smooth_min_entropy;
    double rhs = renyi_entropy(probs, alpha, 0.0) - std::log2(1.0 / eps) / (alpha - 1.0);
    return SmoothingCheck{lhs, rhs, lhs >= rhs - 1e-12};
}

}  // namespace fockcap
