#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "fockcap/channels.hpp"
#include "fockcap/fock.hpp"

using namespace fockcap;

namespace {

double binom_pmf(int k, int m, double eta) {
    if (m < 0 || m > k) return 0.0;
    if (eta == 0.0) return m == 0 ? 1.0 : 0.0;
    if (eta == 1.0) return m == k ? 1.0 : 0.0;
    return std::exp(log_binomial(k, m) + m * std::log(eta) +
                    (k - m) * std::log1p(-eta));
}

}  // namespace

TEST_CASE("photon loss statistics are binomial") {
    for (int k : {0, 1, 3, 7, 15})
        for (double eta : {0.0, 0.2, 0.5, 0.8, 1.0}) {
            auto d = loss_number_dist(k, eta, 24);
            for (int m = 0; m < 24; ++m)
                CHECK(d.probs[m] == doctest::Approx(binom_pmf(k, m, eta)).epsilon(1e-13));
            CHECK(d.sum() + d.tail == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(d.mean() == doctest::Approx(eta * k).epsilon(1e-12));
            double var = d.second_moment() - d.mean() * d.mean();
            CHECK(var == doctest::Approx(k * eta * (1.0 - eta)).epsilon(1e-10));
        }
}

TEST_CASE("added-noise statistics from the vacuum are geometric") {
    double nbar = 1.0;
    auto d = additive_number_dist(0, nbar, 80);
    for (int l = 0; l < 40; ++l)
        CHECK(d.probs[l] ==
              doctest::Approx(0.5 * std::pow(0.5, l)).epsilon(1e-12));
    CHECK(d.mean() == doctest::Approx(nbar).epsilon(1e-9));
}

TEST_CASE("added-noise statistics from one photon match the closed form") {
    // with unit added noise, one input photon lands on l with weight (1+l)/2^{l+2}
    auto d = additive_number_dist(1, 1.0, 60);
    for (int l = 0; l < 30; ++l)
        CHECK(d.probs[l] ==
              doctest::Approx((1.0 + l) * std::pow(2.0, -(l + 2.0))).epsilon(1e-12));
    CHECK(d.mean() == doctest::Approx(2.0).epsilon(1e-9));  // input + added
}

TEST_CASE("added-noise kernel is symmetric in input and output counts") {
    for (double nbar : {0.3, 1.0, 4.0})
        for (int m : {0, 1, 2, 5})
            for (int l : {0, 1, 3, 7}) {
                double forward = additive_number_dist(m, nbar, 16).probs[l];
                double reverse = additive_number_dist(l, nbar, 16).probs[m];
                CHECK(forward == doctest::Approx(reverse).epsilon(1e-13));
            }
}

TEST_CASE("thermal statistics compose loss with added noise") {
    for (double eta : {0.3, 0.5, 0.8})
        for (double nb : {0.5, 1.0, 2.0})
            for (int k : {0, 1, 4, 6}) {
                int dim = 48;
                auto direct = thermal_number_dist(k, eta, nb, dim);
                double y = (1.0 - eta) * nb;
                std::vector<double> composed(static_cast<std::size_t>(dim), 0.0);
                for (int m = 0; m <= k; ++m) {
                    double w = binom_pmf(k, m, eta);
                    auto add = additive_number_dist(m, y, dim);
                    for (int l = 0; l < dim; ++l) composed[l] += w * add.probs[l];
                }
                for (int l = 0; l < dim; ++l)
                    CHECK(std::abs(direct.probs[l] - composed[l]) <= 1e-12);
                // the truncated mean undershoots by the (tiny) tail mass
                CHECK(direct.mean() == doctest::Approx(eta * k + y).epsilon(1e-6));
                CHECK(direct.mean() <= eta * k + y + 1e-12);
            }
}

TEST_CASE("thermal statistics from the vacuum are geometric in the induced noise") {
    auto d = thermal_number_dist(0, 0.5, 1.0, 60);
    // induced occupancy (1-eta) n_b = 0.5, so p(l) = (2/3) (1/3)^l
    for (int l = 0; l < 30; ++l)
        CHECK(d.probs[l] ==
              doctest::Approx((2.0 / 3.0) * std::pow(1.0 / 3.0, l)).epsilon(1e-12));
}

TEST_CASE("environment truncation picker meets its leak target") {
    for (double nb : {0.2, 1.0, 5.0})
        for (double tol : {1e-4, 1e-8, 1e-12}) {
            int d = thermal_env_dim(nb, tol);
            double log_ratio = std::log(nb) - std::log1p(nb);
            CHECK(std::exp(d * log_ratio) < tol);
            CHECK(std::exp((d - 1) * log_ratio) >= tol);
        }
    CHECK(thermal_env_dim(0.0, 1e-8) == 1);
}

TEST_CASE("beamsplitter unitary has the stated single-photon convention") {
    double eta = 0.36;
    Mat u = beamsplitter_unitary(eta, 2);
    // basis index n_a * dim + n_b; |1,0> sits at 2, |0,1> at 1
    CHECK(u(2, 2).real() == doctest::Approx(std::sqrt(eta)).epsilon(1e-14));
    CHECK(u(1, 2).real() == doctest::Approx(-std::sqrt(1.0 - eta)).epsilon(1e-14));
    CHECK(u(2, 1).real() == doctest::Approx(std::sqrt(1.0 - eta)).epsilon(1e-14));
    CHECK(std::abs(u(0, 0) - cplx(1.0)) < 1e-15);

    Mat id = beamsplitter_unitary(1.0, 3);
    CHECK((id - Mat::Identity(9, 9)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("beamsplitter unitary is unitary and conserves total photon number") {
    int dim = 5;
    Mat u = beamsplitter_unitary(0.41, dim);
    std::vector<int> all;
    for (int i = 0; i < dim * dim; ++i) all.push_back(i);
    CHECK(unitary_defect(u, all) < 1e-12);
    for (int na = 0; na < dim; ++na)
        for (int nb = 0; nb < dim; ++nb)
            for (int ma = 0; ma < dim; ++ma)
                for (int mb = 0; mb < dim; ++mb)
                    if (na + nb != ma + mb)
                        CHECK(std::abs(u(na * dim + nb, ma * dim + mb)) == 0.0);
}

TEST_CASE("thermal evolution of number states reproduces the number statistics") {
    int dim = 36;
    double eta = 0.5, nb = 1.0;
    for (int k : {0, 1, 3, 5}) {
        Mat m = Mat::Zero(dim, dim);
        m(k, k) = 1.0;
        auto out = thermal_apply(DensityMatrix::make(m, 0.0), eta, nb);
        auto want = thermal_number_dist(k, eta, nb, dim);
        for (int l = 0; l < dim; ++l)
            CHECK(std::abs(out.entries(l, l).real() - want.probs[l]) <= 1e-8);
        // number states stay diagonal
        double offmax = 0.0;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                if (i != j) offmax = std::max(offmax, std::abs(out.entries(i, j)));
        CHECK(offmax < 1e-12);
        CHECK(out.trace() + out.leakage == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("thermal evolution sends coherent states to displaced thermal states") {
    int dim = 36;
    double eta = 0.5, nb = 1.0;
    cplx alpha(0.8, 0.3);
    auto in = pure_density(coherent_state(alpha, dim));
    auto out = thermal_apply(in, eta, nb);

    cplx shifted = std::sqrt(eta) * alpha;
    Mat d = displacement_operator(shifted, dim);
    auto core = thermal_state((1.0 - eta) * nb, dim);
    Mat want = d * core.entries * d.adjoint();
    auto target = DensityMatrix::make_unchecked(std::move(want), core.leakage);
    CHECK(trace_distance(out, target) < 1e-6);
}

TEST_CASE("thermal evolution rejects an undersized environment") {
    auto rho = vacuum_state(8);
    int need = thermal_env_dim(1.0);
    CHECK_THROWS_AS(thermal_apply(rho, 0.5, 1.0, need - 1), TruncationError);
    try {
        thermal_apply(rho, 0.5, 1.0, 2);
    } catch (const TruncationError& e) {
        CHECK(e.required_dim == need);
    }
    CHECK_NOTHROW(thermal_apply(rho, 0.5, 1.0, need));
}

TEST_CASE("added-noise evolution of the vacuum matches the geometric law") {
    int dim = 40;
    auto res = additive_apply(vacuum_state(dim), 1.0);
    for (int l = 0; l < 20; ++l)
        CHECK(std::abs(res.state.entries(l, l).real() - 0.5 * std::pow(0.5, l)) <=
              res.quadrature_tol);
    CHECK(res.weight_defect < 1e-12);
    CHECK(res.quadrature_tol == 1e-6);
}

TEST_CASE("added-noise evolution displaces coherent inputs around a thermal core") {
    int dim = 36;
    cplx alpha(0.5, -0.6);
    auto res = additive_apply(pure_density(coherent_state(alpha, dim)), 0.7);
    Mat d = displacement_operator(alpha, dim);
    auto core = thermal_state(0.7, dim);
    Mat want = d * core.entries * d.adjoint();
    auto target = DensityMatrix::make_unchecked(std::move(want), core.leakage);
    CHECK(trace_distance(res.state, target) < 1e-5);
}

TEST_CASE("added-noise evolution is the identity at zero noise") {
    auto rho = pure_density(coherent_state(0.9, 16));
    auto res = additive_apply(rho, 0.0);
    CHECK((res.state.entries - rho.entries).cwiseAbs().maxCoeff() == 0.0);
    CHECK(res.quadrature_tol == 0.0);
}

TEST_CASE("added-noise evolution rejects a grid that cannot reach six sigma") {
    QuadratureSpec narrow{8};
    CHECK_THROWS_AS(additive_apply(vacuum_state(8), 1.0, narrow), ToleranceError);
    QuadratureSpec coarse{32};
    CHECK_NOTHROW(additive_apply(vacuum_state(8), 1.0, coarse));
}

TEST_CASE("channel parameter helpers expose the decomposition constants") {
    ChannelParams p;
    p.eta = 0.5;
    p.n_b = 1.0;
    CHECK(p.amplifier_gain() == doctest::Approx(1.5).epsilon(1e-16));
    CHECK(p.residual_transmissivity() == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
}
