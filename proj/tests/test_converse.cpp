#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "fockcap/converse.hpp"
#include "fockcap/entropy.hpp"

using namespace fockcap;

TEST_CASE("capacity bounds hit frozen reference values") {
    CHECK(cap_lower_thermal(0.5, 1.0, 1.0) ==
          doctest::Approx(0.62255624891826573).epsilon(1e-13));
    CHECK(cap_upper_gio_thermal(0.5, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(cap_upper_ks_thermal(0.5, 1.0, 1.0) ==
          doctest::Approx(1.08170416594551049).epsilon(1e-13));

    CHECK(cap_lower_additive(1.0, 1.0) ==
          doctest::Approx(0.754887502163468544).epsilon(1e-13));
    CHECK(cap_upper_gio_additive(1.0, 1.0) ==
          doctest::Approx(1.16992500144231236).epsilon(1e-13));
    CHECK(cap_upper_ks_additive(1.0, 1.0) ==
          doctest::Approx(1.37744375108173427).epsilon(1e-13));
}

TEST_CASE("thermal bounds at unit transmissivity meet the noiseless values") {
    // no environment coupling: lower bound reaches g(n_s), both gaps close
    CHECK(cap_lower_thermal(1.0, 2.0, 5.0) == doctest::Approx(g(2.0)).epsilon(1e-13));
    CHECK(cap_upper_ks_thermal(1.0, 2.0, 5.0) == doctest::Approx(g(2.0)).epsilon(1e-13));
}

TEST_CASE("bounds are ordered and the gaps stay under 1.45 bits") {
    std::vector<double> etas, occ;
    for (int i = 0; i < 8; ++i) {
        etas.push_back(0.03 + 0.96 * i / 7.0);
        occ.push_back(std::pow(10.0, -2.0 + 3.5 * i / 7.0));  // 0.01 .. ~30
    }
    for (double eta : etas)
        for (double ns : occ)
            for (double nb : occ) {
                double lo = cap_lower_thermal(eta, ns, nb);
                double gio = cap_upper_gio_thermal(eta, ns, nb);
                double ks = cap_upper_ks_thermal(eta, ns, nb);
                CHECK(lo <= gio + 1e-12);
                CHECK(lo <= ks + 1e-12);
                CHECK(gio - lo >= -1e-12);
                CHECK(gio - lo <= 1.45);
                CHECK(ks - lo >= -1e-12);
                CHECK(ks - lo <= 1.45);
            }
    for (double ns : occ)
        for (double nbar : occ) {
            double lo = cap_lower_additive(ns, nbar);
            double gio = cap_upper_gio_additive(ns, nbar);
            double ks = cap_upper_ks_additive(ns, nbar);
            CHECK(lo <= std::min(gio, ks) + 1e-12);
            CHECK(std::max(gio, ks) - lo <= 1.45);
        }
}

TEST_CASE("lower bound grows with signal power") {
    double prev = -1.0;
    for (double ns : {0.1, 0.5, 1.0, 2.0, 5.0, 20.0}) {
        double lo = cap_lower_thermal(0.6, ns, 0.8);
        CHECK(lo > prev);
        prev = lo;
    }
}

TEST_CASE("parameter validation rejects out-of-range channels") {
    CHECK_THROWS_AS(cap_lower_thermal(1.5, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(cap_lower_thermal(0.5, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(cap_upper_ks_additive(1.0, -0.5), std::invalid_argument);
}

TEST_CASE("projector rank check reproduces the two-mode hand computation") {
    auto rep = rank_bound_check(2, 1.0);
    CHECK(rep.exact_log2_rank == doctest::Approx(2.58496250072115618).epsilon(1e-14));
    CHECK(rep.delta_used ==
          doctest::Approx((std::log2(std::exp(1.0)) + 1.0) / 2.0).epsilon(1e-14));
    CHECK(rep.bound == doctest::Approx(6.44269504088896341).epsilon(1e-13));
    CHECK(rep.margin == doctest::Approx(rep.bound - rep.exact_log2_rank).epsilon(1e-14));
    CHECK(rep.holds);
}

TEST_CASE("projector rank bound holds across sizes and signal powers") {
    for (long n : {1L, 2L, 5L, 17L, 60L, 200L})
        for (double ns : {0.5, 1.0, 5.0}) {
            auto rep = rank_bound_check(n, ns);
            CHECK(rep.holds);
            CHECK(rep.margin > 0.0);
        }
    // integer photon targets must not round up past the cutoff
    auto rep = rank_bound_check(10, 1.0);
    CHECK(rep.exact_log2_rank ==
          doctest::Approx(log2_projector_rank(10, 10)).epsilon(1e-14));
    CHECK_THROWS_AS(rank_bound_check(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(rank_bound_check(2, 0.0), std::invalid_argument);
}

namespace {

DeltaSchedule zero_slacks() {
    DeltaSchedule d;
    d.constraint_slack = [](long) { return 0.0; };
    d.gentle_slack = [](long) { return 0.0; };
    d.concentration_slack = [](long) { return 0.0; };
    return d;
}

}  // namespace

TEST_CASE("first envelope with zero slack is a bare exponential in n") {
    EnvelopeParams p;
    p.n_s = 1.0;
    p.eta = 0.5;
    p.n_b = 1.0;
    p.deltas = zero_slacks();
    double thr = envelope_threshold_ks(p);
    CHECK(thr == doctest::Approx(g(0.5 / 1.5)).epsilon(1e-14));
    p.rate = thr + 0.1;  // 0.08 above threshold after 0.01 + 0.01 margins

    double e100 = converse_envelope_ks(p, 100);
    double e1000 = converse_envelope_ks(p, 1000);
    CHECK(e100 == doctest::Approx(std::exp2(-8.0)).epsilon(1e-12));
    CHECK(e100 / e1000 == doctest::Approx(std::exp2(72.0)).epsilon(1e-9));

    // below threshold the bound saturates at one
    p.rate = thr;
    CHECK(converse_envelope_ks(p, 50) == 1.0);
}

TEST_CASE("second envelope matches its closed formula term by term") {
    EnvelopeParams p;
    p.n_s = 1.0;
    p.eta = 0.5;
    p.n_b = 1.0;
    double y = 0.5;
    double base = envelope_threshold_gio(p);
    CHECK(base == doctest::Approx(g(1.0) - std::log2(2.0)).epsilon(1e-14));
    p.rate = base + 0.3;

    for (long n : {10L, 100L, 1000L}) {
        double d1 = std::pow(double(n), -4.0);
        double thr = g(0.5 + y + 0.01) - std::log2(1.0 + 2.0 * y);
        double expo = p.rate - thr + std::log2(double(n)) / double(n) - 0.01;
        double want = std::min(1.0, std::exp2(-double(n) * expo) + 1.0 / double(n) +
                                        2.0 * std::sqrt(d1 + 2.0 * std::sqrt(d1) + d1));
        CHECK(converse_envelope_gio(p, n) == doctest::Approx(want).epsilon(1e-13));
    }
}

TEST_CASE("default envelopes sink below one permille within ten thousand uses") {
    EnvelopeParams p;
    p.n_s = 1.0;
    p.eta = 0.5;
    p.n_b = 1.0;
    p.rate = cap_upper_ks_thermal(0.5, 1.0, 1.0) + 0.2;
    CHECK(converse_envelope_ks(p, 10000) < 1e-3);

    EnvelopeParams q = p;
    q.rate = cap_upper_gio_thermal(0.5, 1.0, 1.0) + 0.2;
    CHECK(converse_envelope_gio(q, 10000) < 1e-3);

    // additive variant with the same shape
    EnvelopeParams a;
    a.additive = true;
    a.n_s = 1.0;
    a.n_bar = 1.0;
    a.rate = cap_upper_ks_additive(1.0, 1.0) + 0.2;
    CHECK(converse_envelope_ks(a, 10000) < 1e-3);
}

TEST_CASE("concentration experiment on vacuum inputs stays under chebyshev") {
    std::vector<int> profile(50, 0);
    auto rep = concentration_experiment(profile, 0.5, 1.0, 0.1, 2000, 1);
    CHECK(rep.n == 50);
    CHECK(rep.trials == 2000);
    CHECK(rep.threshold == doctest::Approx(30.0).epsilon(1e-13));
    CHECK(rep.max_variance == doctest::Approx(0.75).epsilon(1e-6));
    CHECK(rep.chebyshev_bound == doctest::Approx(1.5).epsilon(1e-6));
    CHECK(rep.holds);
    CHECK(rep.empirical_fail_rate >= 0.0);
    CHECK(rep.empirical_fail_rate <= 1.0);
}

TEST_CASE("concentration experiment accepts mixed occupation profiles") {
    std::vector<int> profile;
    for (int i = 0; i < 60; ++i) profile.push_back(i % 3);  // photons 0,1,2
    auto rep = concentration_experiment(profile, 0.6, 0.8, 0.5, 1500, 9);
    // threshold = n (eta mean_in + (1-eta) n_b + delta5)
    double want = 60.0 * (0.6 * 1.0 + 0.4 * 0.8 + 0.5);
    CHECK(rep.threshold == doctest::Approx(want).epsilon(1e-12));
    CHECK(rep.holds);

    // identical seeds reproduce identical empirical rates
    auto again = concentration_experiment(profile, 0.6, 0.8, 0.5, 1500, 9);
    CHECK(again.empirical_fail_rate == rep.empirical_fail_rate);
    CHECK_THROWS_AS(concentration_experiment({}, 0.5, 1.0, 0.1, 100, 0),
                    std::invalid_argument);
}

TEST_CASE("mean constraint demo meets the mixed-success floor") {
    CodebookSpec spec;
    spec.n_modes = 1;
    spec.power = 2.0;
    spec.mix_p = 0.5;
    spec.n_s = 1.0;
    auto rep = mean_constraint_demo(spec, 0.8, 0.5, 40);
    CHECK(rep.floor_holds);
    CHECK(rep.success_mixed >=
          (1.0 - spec.mix_p) * (1.0 - rep.error_ref) - 1e-9);
    CHECK(rep.success_floor ==
          doctest::Approx((1.0 - spec.mix_p) * (1.0 - rep.error_ref)).epsilon(1e-12));
    CHECK(rep.purified_mean_closed == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(std::abs(rep.purified_mean - rep.purified_mean_closed) <= 1e-12);
    CHECK(rep.success_ref > 0.9);  // the two coherent codewords are far apart
    CHECK(rep.error_ref == doctest::Approx(1.0 - rep.success_ref).epsilon(1e-12));
}

TEST_CASE("mean constraint demo without vacuum mixing reduces to the reference") {
    CodebookSpec spec;
    spec.n_modes = 1;
    spec.power = 1.5;
    spec.mix_p = 0.0;
    spec.n_s = 1.5;
    auto rep = mean_constraint_demo(spec, 0.7, 0.4, 36);
    CHECK(rep.success_mixed == doctest::Approx(rep.success_ref).epsilon(1e-12));
    CHECK(rep.floor_holds);

    // inconsistent power bookkeeping is rejected
    CodebookSpec bad = spec;
    bad.n_s = 1.0;
    CHECK_THROWS_AS(mean_constraint_demo(bad, 0.7, 0.4, 36), std::invalid_argument);
}

TEST_CASE("qubit partition decoder stays under the counting bound") {
    auto rep = qubit_converse_check(1, 1.5, 60, 4);
    CHECK(rep.messages == 3);
    // the certificate is 2^{-n(rate-1)}; the measured average also beats the
    // sharper 2^n / messages since messages rounds the rate up
    CHECK(rep.bound == doctest::Approx(std::exp2(-0.5)).epsilon(1e-14));
    CHECK(rep.max_avg_success <= rep.bound + 1e-12);
    CHECK(rep.max_avg_success <= 2.0 / 3.0 + 1e-12);
    CHECK(rep.instances == 60);
    CHECK(rep.holds);

    auto big = qubit_converse_check(4, 2.0, 20, 11);
    CHECK(big.messages == 256);
    CHECK(big.bound == doctest::Approx(0.0625).epsilon(1e-14));
    CHECK(big.holds);

    CHECK_THROWS_AS(qubit_converse_check(10, 2.5, 5, 0), std::invalid_argument);
    CHECK_THROWS_AS(qubit_converse_check(0, 1.5, 5, 0), std::invalid_argument);
}
