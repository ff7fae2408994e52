#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "fockcap/symplectic.hpp"

using namespace fockcap;

TEST_CASE("constructors produce the expected scalar pairs") {
    auto add = make_additive(1.0);
    CHECK(add.x == 1.0);
    CHECK(add.y == 2.0);

    auto loss = make_loss(0.5);
    CHECK(loss.x == doctest::Approx(std::sqrt(0.5)).epsilon(1e-16));
    CHECK(loss.y == 0.5);

    auto th = make_thermal(0.5, 1.0);
    CHECK(th.x == doctest::Approx(std::sqrt(0.5)).epsilon(1e-16));
    CHECK(th.y == doctest::Approx(1.5).epsilon(1e-16));

    auto amp = make_amplifier(2.0);
    CHECK(amp.x == doctest::Approx(std::sqrt(2.0)).epsilon(1e-16));
    CHECK(amp.y == 1.0);
}

TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(make_loss(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(make_loss(1.1), std::invalid_argument);
    CHECK_THROWS_AS(make_additive(-1e-3), std::invalid_argument);
    CHECK_THROWS_AS(make_amplifier(0.5), std::invalid_argument);
    CHECK_THROWS_AS(make_thermal(0.5, -0.2), std::invalid_argument);
    // an unphysical raw pair fails the check
    CHECK_THROWS_AS(check_physical(GaussChannel{2.0, 0.5}), std::invalid_argument);
    CHECK_NOTHROW(check_physical(GaussChannel{2.0, 3.0}));
}

TEST_CASE("thermal channel factors through amplifier-after-loss exactly") {
    std::vector<double> etas{0.05, 0.1, 0.25, 0.4, 0.5, 0.6, 0.75, 0.9, 0.95};
    std::vector<double> nbs{0.1, 1.0, 10.0};
    for (double eta : etas)
        for (double nb : nbs) {
            auto direct = make_thermal(eta, nb);
            double gain = (1.0 - eta) * nb + 1.0;
            auto composed = compose(make_amplifier(gain), make_loss(eta / gain));
            CHECK(std::abs(composed.x - direct.x) <= 1e-14);
            CHECK(std::abs(composed.y - direct.y) <= 1e-14);
        }
}

TEST_CASE("thermal channel factors through additive-after-loss exactly") {
    std::vector<double> etas{0.05, 0.1, 0.25, 0.4, 0.5, 0.6, 0.75, 0.9, 0.95};
    std::vector<double> nbs{0.1, 1.0, 10.0};
    for (double eta : etas)
        for (double nb : nbs) {
            auto direct = make_thermal(eta, nb);
            auto composed = compose(make_additive((1.0 - eta) * nb), make_loss(eta));
            CHECK(std::abs(composed.x - direct.x) <= 1e-14);
            CHECK(std::abs(composed.y - direct.y) <= 1e-14);
        }
}

TEST_CASE("additive noise factors through amplifier-after-loss exactly") {
    for (double nbar : {0.1, 0.5, 1.0, 2.0, 10.0}) {
        auto direct = make_additive(nbar);
        auto composed =
            compose(make_amplifier(nbar + 1.0), make_loss(1.0 / (nbar + 1.0)));
        CHECK(std::abs(composed.x - direct.x) <= 1e-14);
        CHECK(std::abs(composed.y - direct.y) <= 1e-14);
    }
}

TEST_CASE("composition tracks variances the way the channels do") {
    // feeding a variance through two maps one at a time equals the composite
    GaussChannel first = make_loss(0.7);
    GaussChannel second = make_amplifier(1.8);
    GaussChannel both = compose(second, first);
    for (double v : {1.0, 1.5, 3.0, 10.0}) {
        double stepped = apply_to_variance(second, apply_to_variance(first, v));
        CHECK(apply_to_variance(both, v) == doctest::Approx(stepped).epsilon(1e-15));
    }
    // identity composition is neutral
    GaussChannel id{1.0, 0.0};
    CHECK(compose(id, first).x == first.x);
    CHECK(compose(id, first).y == first.y);
    CHECK(compose(first, id).x == first.x);
    CHECK(compose(first, id).y == first.y);
}

TEST_CASE("composites of physical channels stay physical") {
    std::vector<GaussChannel> pool{make_loss(0.3),      make_loss(0.9),
                                   make_additive(0.4),  make_additive(2.0),
                                   make_amplifier(1.2), make_amplifier(3.0),
                                   make_thermal(0.6, 0.7)};
    for (const auto& a : pool)
        for (const auto& b : pool) CHECK_NOTHROW(check_physical(compose(a, b)));
}
