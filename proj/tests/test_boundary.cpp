#include <doctest.h>

#include <cmath>

#include "fusionwalk/boundary.hpp"
#include "fusionwalk/measure.hpp"

using namespace fusionwalk;

namespace {

AtomicMeasure fair_mu() {
    AtomicMeasure mu;
    mu.add(Word{"a"}, 0.5);
    mu.add(Word{"b"}, 0.5);
    return mu;
}

std::vector<Cylinder> suffix_cylinders(std::size_t maxlen) {
    std::vector<Cylinder> out;
    for (const auto& w : words_up_to(maxlen)) out.push_back(Cylinder{w});
    return out;
}

}  // namespace

TEST_CASE("estimate_bound spot values") {
    CHECK(std::abs(estimate_bound(QParam(0.5), 0) - 2.0 / 3.0) <= 1e-15);
    CHECK(estimate_bound(QParam(0.5), 1) ==
          doctest::Approx(1.0 - 0.0625 / 0.75).epsilon(1e-15));
    CHECK(estimate_bound(QParam(1e-6), 3) == doctest::Approx(1.0).epsilon(1e-11));
    // near q = 1 with small k the bound turns negative and is vacuous
    CHECK(estimate_bound(QParam(0.99), 0) < 0.0);
    CHECK_THROWS_AS(estimate_bound(QParam(0.5), -1), std::invalid_argument);
}

TEST_CASE("verify_estimate examples") {
    const QParam q(0.5);

    auto chk = verify_estimate(AtomicMeasure::point(Word{}), Word{"ab"}, Word{"ab"}, 1, q);
    CHECK(chk.measured == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(chk.ok);
    CHECK(chk.k == 1);

    chk = verify_estimate(AtomicMeasure::point(Word{"a"}), Word{"b"}, Word{"b"}, 1, q);
    CHECK(chk.measured == doctest::Approx(0.84).epsilon(1e-12));
    CHECK(chk.bound == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(chk.ok);
    CHECK(chk.k == 0);

    CHECK_THROWS_AS(verify_estimate(AtomicMeasure::point(Word{}), Word{"a"}, Word{"b"}, 1, q),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify_estimate(AtomicMeasure::point(Word{}), Word{"ab"}, Word{"b"}, 2, q),
                    std::invalid_argument);
}

TEST_CASE("verify_estimate randomized instances") {
    for (double qq : {0.3, 0.5, 0.8}) {
        const QParam q(qq);
        for (std::uint64_t trial = 0; trial < 1000; ++trial) {
            const auto inst = random_estimate_instance(q, 7, trial, 5, 1 + trial % 3);
            const auto chk = verify_estimate(inst.lam, inst.y, inst.x_tail, inst.N, q);
            CHECK(chk.ok);
        }
    }
}

TEST_CASE("tail walker agrees with literal convolution powers") {
    const QParam q(0.5);
    const auto suffixes = suffix_cylinders(2);

    SUBCASE("single letter steps") {
        const auto mu = fair_mu();
        for (int n : {0, 1, 2, 5, 9, 12}) {
            const auto exact = convolve_power(mu, n, 0.0, q);
            TailWalker w(AtomicMeasure::point(Word{}), q, 18);
            w.run(mu, n);
            CHECK(w.lost_mass() <= 1e-15);
            CHECK(std::abs(w.total_mass() - 1.0) <= 1e-12);
            for (const auto& c : suffixes)
                CHECK(w.cylinder_mass(c) ==
                      doctest::Approx(cylinder_mass(exact, c)).epsilon(1e-12));
        }
    }

    SUBCASE("multi-letter steps and nontrivial start") {
        AtomicMeasure mu;
        mu.add(Word{}, 0.2);
        mu.add(Word{"a"}, 0.3);
        mu.add(Word{"ba"}, 0.3);
        mu.add(Word{"bb"}, 0.2);
        AtomicMeasure start;
        start.add(Word{"ab"}, 0.6);
        start.add(Word{"b"}, 0.4);
        for (int n : {1, 3, 6, 9}) {
            auto exact = start;
            for (int i = 0; i < n; ++i) exact = convolve(exact, mu, q);
            TailWalker w(start, q, 18);
            w.run(mu, n);
            CHECK(w.lost_mass() <= 1e-15);
            for (const auto& c : suffixes)
                CHECK(w.cylinder_mass(c) ==
                      doctest::Approx(cylinder_mass(exact, c)).epsilon(1e-11));
        }
    }
}

TEST_CASE("tail walker handles deep runs with negligible loss") {
    const QParam q(0.5);
    TailWalker w(AtomicMeasure::point(Word{}), q, 18);
    w.run(fair_mu(), 40);
    CHECK(std::abs(w.total_mass() + w.lost_mass() - 1.0) <= 1e-11);
    CHECK(w.lost_mass() <= 1e-9);
}

TEST_CASE("stationarity gap") {
    const QParam q(0.5);
    const auto mu = fair_mu();
    const auto suffixes = suffix_cylinders(2);

    CHECK(stationarity_gap(AtomicMeasure::point(Word{}), mu, 17, suffixes, q) == 0.0);

    // n = 0 compares the starting measures themselves
    AtomicMeasure lam;
    lam.add(Word{"ab"}, 1.0);
    CHECK(stationarity_gap(lam, mu, 0, suffixes, q) == doctest::Approx(1.0).epsilon(1e-15));

    for (const char* start : {"b", "ab", "ba"}) {
        const auto pt = AtomicMeasure::point(Word::parse(start));
        const double g40 = stationarity_gap(pt, mu, 40, suffixes, q);
        const double g5 = stationarity_gap(pt, mu, 5, suffixes, q);
        CHECK(g40 < 1e-3);
        CHECK(g40 < g5);
    }
}

TEST_CASE("hitting estimates") {
    const QParam q(0.5);
    const auto mu = fair_mu();

    CHECK(hitting_estimate(Word{}, Cylinder{Word{}}, mu, 7, q) ==
          doctest::Approx(1.0).epsilon(1e-12));

    // swap symmetry of the fair step measure
    const double ha = hitting_estimate(Word{}, Cylinder{Word{"a"}}, mu, 40, q);
    const double hb = hitting_estimate(Word{}, Cylinder{Word{"b"}}, mu, 40, q);
    CHECK(ha > 0.0);
    CHECK(ha < 1.0);
    CHECK(ha == doctest::Approx(hb).epsilon(1e-9));

    // start bias towards the matching cylinder
    CHECK(hitting_estimate(Word{"a"}, Cylinder{Word{"a"}}, mu, 40, q) >
          hitting_estimate(Word{"b"}, Cylinder{Word{"a"}}, mu, 40, q));
}
