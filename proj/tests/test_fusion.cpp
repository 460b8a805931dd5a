#include <doctest.h>

#include <set>

#include "fusionwalk/boundary.hpp"
#include "fusionwalk/fusion.hpp"
#include "oracles.hpp"

using namespace fusionwalk;

namespace {
const AufSystem kAuf;
const TemperleyLiebSystem kTl;
const TemperleyLiebSystem kSpin{true};
}  // namespace

TEST_CASE("word involution") {
    CHECK(Word{}.involute() == Word{});
    CHECK(Word{"a"}.involute() == Word{"b"});
    CHECK(Word{"aa"}.involute() == Word{"bb"});
    CHECK(Word::parse("e") == Word{});

    // involutive anti-automorphism on all pairs up to length 5
    const auto words = words_up_to(5);
    for (const auto& x : words) {
        CHECK(x.involute().involute() == x);
        for (const auto& y : words)
            CHECK((x + y).involute() == y.involute() + x.involute());
    }
}

TEST_CASE("qparam and q-integers") {
    CHECK_THROWS_AS(QParam(0.0), std::invalid_argument);
    CHECK_THROWS_AS(QParam(1.0), std::invalid_argument);
    CHECK_THROWS_AS(QParam(-0.5), std::invalid_argument);
    const QParam q(0.5);
    CHECK(q.delta() == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(qint(0, q) == 0.0);
    CHECK(qint(1, q) == 1.0);
    CHECK(qint(2, q) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(qint(3, q) == doctest::Approx(5.25).epsilon(1e-15));
}

TEST_CASE("quantum dimensions of words") {
    const QParam q(0.5);
    CHECK(qdim(Word{}, q) == 1.0);
    CHECK(qdim(Word{"a"}, q) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(qdim(Word{"ab"}, q) == doctest::Approx(5.25).epsilon(1e-15));

    // involution symmetry is exact, and the memoized recursion agrees with
    // the independent block-product formula
    for (double qq : {0.3, 0.5, 0.8}) {
        const QParam p(qq);
        for (const auto& w : words_up_to(7)) {
            CHECK(qdim(w, p) == qdim(w.involute(), p));
            CHECK(qdim(w, p) ==
                  doctest::Approx(oracles::block_qdim(w, qq)).epsilon(1e-12));
            CHECK(qdim(w, p) >= 1.0);
        }
    }
}

TEST_CASE("free tensor decomposition") {
    auto dec = kAuf.tensor(Word{"a"}, Word{"b"});
    REQUIRE(dec.size() == 2);
    CHECK(dec[0].first == Word{"ab"});
    CHECK(dec[1].first == Word{});

    dec = kAuf.tensor(Word{}, Word{"ba"});
    REQUIRE(dec.size() == 1);
    CHECK(dec[0].first == Word{"ba"});

    dec = kAuf.tensor(Word{"ab"}, Word{"ab"});
    REQUIRE(dec.size() == 3);
    CHECK(dec[0].first == Word{"abab"});
    CHECK(dec[1].first == Word{"ab"});
    CHECK(dec[2].first == Word{});

    // multiplicity free with distinct summand lengths |x|+|y|-2j
    for (const auto& x : words_up_to(4))
        for (const auto& y : words_up_to(4)) {
            std::set<std::size_t> lengths;
            for (const auto& [z, m] : kAuf.tensor(x, y)) {
                CHECK(m == 1);
                CHECK((x.size() + y.size() - z.size()) % 2 == 0);
                CHECK(lengths.insert(z.size()).second);
            }
        }
}

TEST_CASE("temperley-lieb tensor decomposition") {
    auto dec = kTl.tensor(1, 1);
    REQUIRE(dec.size() == 2);
    CHECK(dec[0].first == 0);
    CHECK(dec[1].first == 2);
    CHECK(kTl.tensor(2, 3).size() == 3);  // 1, 3, 5
    CHECK(kSpin.valid(2));
    CHECK_FALSE(kSpin.valid(3));
    // integer-spin labels close under fusion
    for (int n = 0; n <= 8; n += 2)
        for (int m = 0; m <= 8; m += 2)
            for (const auto& [k, mult] : kSpin.tensor(n, m)) CHECK(kSpin.valid(k));
}

TEST_CASE("dimension identity residual") {
    for (double qq : {0.3, 0.5, 0.8}) {
        const QParam q(qq);
        CHECK(dimension_identity_residual(kAuf, Word{}, Word{"ab"}, q) == 0.0);
        CHECK(dimension_identity_residual(kAuf, Word{"a"}, Word{"b"}, q) <= 1e-12);
        CHECK(dimension_identity_residual(kAuf, Word{"ab"}, Word{"ab"}, q) <= 1e-12);
        for (const auto& x : words_up_to(6))
            for (const auto& y : words_up_to(6))
                CHECK(dimension_identity_residual(kAuf, x, y, q) <=
                      1e-9 * kAuf.dim(x, q) * kAuf.dim(y, q));
        for (int n = 0; n <= 12; ++n)
            for (int m = 0; m <= 12; ++m)
                CHECK(dimension_identity_residual(kTl, n, m, q) <=
                      1e-9 * kTl.dim(n, q) * kTl.dim(m, q));
    }
}

TEST_CASE("frobenius reciprocity") {
    for (const auto& x : words_up_to(3))
        for (const auto& y : words_up_to(3))
            for (const auto& z : words_up_to(3))
                CHECK(tensor_multiplicity(kAuf, x, y, z) ==
                      tensor_multiplicity(kAuf, x.involute(), z, y));
}

TEST_CASE("paper dimension inequalities") {
    for (double qq : {0.3, 0.5, 0.8}) {
        const QParam q(qq);
        // d(z) >= q^{-|u|} d(z0) over every split z = z0 u
        for (const auto& z : words_up_to(8)) {
            const double dz = qdim(z, q);
            for (std::size_t cut = 0; cut <= z.size(); ++cut) {
                const double rhs = std::pow(qq, -double(z.size() - cut)) *
                                   qdim(z.prefix(cut), q);
                CHECK(dz >= rhs - 1e-12 * std::max(1.0, rhs));
            }
        }
        // submultiplicativity d(z0 y0) <= d(z0) d(y0)
        for (const auto& z0 : words_up_to(4))
            for (const auto& y0 : words_up_to(4)) {
                const double lhs = qdim(z0 + y0, q);
                const double rhs = qdim(z0, q) * qdim(y0, q);
                CHECK(lhs <= rhs + 1e-12 * std::max(1.0, rhs));
            }
    }
}

TEST_CASE("fusion matrices") {
    // TL, U=1 on {0,1}: off-diagonal ones (the 2 component of 1x1 is cut off)
    auto g = fusion_matrix(kTl, 1, std::vector<int>{0, 1});
    CHECK(g.entry(0, 0) == 0);
    CHECK(g.entry(1, 0) == 1);
    CHECK(g.entry(0, 1) == 1);
    CHECK(g.entry(1, 1) == 0);

    // unit object gives the identity
    auto id = fusion_matrix(kTl, 0, std::vector<int>{0, 1, 2, 3});
    for (std::size_t s = 0; s < 4; ++s)
        for (std::size_t t = 0; t < 4; ++t) CHECK(id.entry(s, t) == (s == t ? 1 : 0));

    // A_u(F): aa appears in a (x) a
    const auto words = words_up_to(2);
    auto ga = fusion_matrix(kAuf, Word{"a"}, words);
    std::size_t i_a = 0, i_aa = 0;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (words[i] == Word{"a"}) i_a = i;
        if (words[i] == Word{"aa"}) i_aa = i;
    }
    CHECK(ga.entry(i_aa, i_a) == 1);

    // a self-conjugate tensoring object gives a symmetric matrix
    auto gsym = fusion_matrix(kAuf, Word{"ab"}, words_up_to(4));
    REQUIRE(Word{"ab"}.involute() == Word{"ab"});
    for (std::size_t s = 0; s < gsym.size(); ++s)
        for (std::size_t t = 0; t < gsym.size(); ++t)
            CHECK(gsym.entry(s, t) == gsym.entry(t, s));

    CHECK_THROWS_AS(fusion_matrix(kTl, 1, std::vector<int>{0, 1, 1}), std::invalid_argument);
}
