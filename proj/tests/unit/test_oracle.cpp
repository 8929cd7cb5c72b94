#include <doctest.h>

#include <cmath>

#include "circol/oracle.hpp"
#include "helpers.hpp"

using namespace circol;
using namespace testing;

namespace {

struct Frozen {
    Raw intervals;
    int edges, omega, chi;
    double chi_f, mwis;
    int stacks[3];
    double stacks_lp[3];
};

// n = 7, seed 2024, instance k = 0..5; weights w_v = ((7v + k) mod 11) - 5, v 0-based.
// Values computed by tests/oracles/derive_examples.py.
const Frozen kFrozen[] = {
    {{{3, 6}, {4, 7}, {5, 11}, {8, 10}, {9, 12}, {13, 14}, {1, 2}}, 5, 3, 3, 3, 11, {3, 3, 3}, {3, 3, 3}},
    {{{1, 10}, {2, 6}, {7, 9}, {8, 14}, {3, 4}, {5, 12}, {11, 13}}, 6, 3, 3, 3, 10, {4, 3, 3}, {4, 3, 3}},
    {{{8, 9}, {1, 3}, {2, 5}, {12, 14}, {4, 13}, {7, 11}, {6, 10}}, 4, 2, 2, 2, 7, {4, 2, 2}, {4, 2, 2}},
    {{{4, 11}, {1, 10}, {6, 12}, {2, 14}, {3, 13}, {5, 9}, {7, 8}}, 6, 3, 3, 3, 5, {7, 4, 3}, {7, 3.5, 3}},
    {{{2, 9}, {4, 11}, {1, 8}, {7, 10}, {3, 12}, {13, 14}, {5, 6}}, 7, 3, 3, 3, 6, {5, 4, 3}, {5, 3.5, 3}},
    {{{1, 14}, {2, 8}, {5, 7}, {12, 13}, {4, 9}, {10, 11}, {3, 6}}, 3, 2, 2, 2, 5, {5, 3, 2}, {5, 2.5, 2}},
};

} // namespace

TEST_SUITE("oracle") {

TEST_CASE("chromatic examples") {
    CHECK(oracle::chromatic_exact(build_graph(c5())) == 3);
    CHECK(oracle::chromatic_exact(CircleGraph(4)) == 1);
    CHECK(oracle::chromatic_exact(build_graph(p3())) == 2);
    CHECK(oracle::chromatic_exact(CircleGraph(0)) == 0);
}

TEST_CASE("fractional chromatic examples") {
    CHECK(oracle::fractional_chromatic_exact(build_graph(c5())) == doctest::Approx(2.5));
    CHECK(oracle::fractional_chromatic_exact(CircleGraph(1)) == doctest::Approx(1));
    CHECK(oracle::fractional_chromatic_exact(build_graph(p3())) == doctest::Approx(2));
    CHECK(oracle::fractional_chromatic_all_sets(build_graph(c5())) == doctest::Approx(2.5));
}

TEST_CASE("mwis examples") {
    CHECK(oracle::mwis_exact(CircleGraph(1), std::vector<double>{-3}) == 0.0);
    CHECK(oracle::mwis_exact(build_graph(c5()), std::vector<double>(5, 1.0)) == doctest::Approx(2));
    CHECK(oracle::mwis_exact(build_graph(nested_pair()), std::vector<double>{1, 1}) == doctest::Approx(2));
}

TEST_CASE("stacks examples") {
    CHECK(oracle::stacks_exact(nested_pair(), 1) == 2);
    CHECK(oracle::stacks_exact(nested_pair(), 2) == 1);
    CHECK(oracle::stacks_exact(c5(), 5) == 3);
    CHECK(oracle::stacks_lp_exact(c5(), 1) == doctest::Approx(3));
    CHECK(oracle::stacks_lp_exact(c5(), 2) == doctest::Approx(2.5));
}

TEST_CASE("maximal independent sets of C5") {
    const auto sets = oracle::maximal_independent_sets(build_graph(c5()));
    CHECK(sets.size() == 5);
    for (const auto& s : sets) CHECK(s.size() == 2);
}

TEST_CASE("budgets are refused") {
    try {
        oracle::chromatic_exact(CircleGraph(13));
        FAIL("expected OverBudget");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OverBudget);
    }
    oracle::OracleBudget tight;
    tight.max_independent_sets = 3;
    CHECK_THROWS_AS(oracle::maximal_independent_sets(build_graph(c5()), tight), Error);
    CHECK_THROWS_AS(oracle::stacks_exact(generate_one(9, 1), 2), Error);
    CHECK_NOTHROW(oracle::chromatic_exact(CircleGraph(13), oracle::OracleBudget{13}));
}

TEST_CASE("maximal-set LP equals the all-sets equality LP up to n = 10") {
    for (std::size_t k = 0; k < 40; ++k) {
        const auto g = build_graph(random_rep(31, k, 10));
        CHECK(oracle::fractional_chromatic_exact(g) == doctest::Approx(oracle::fractional_chromatic_all_sets(g)).epsilon(1e-6));
    }
}

TEST_CASE("chi is at least the rounded-up chi_f") {
    for (std::size_t k = 0; k < 60; ++k) {
        const auto g = build_graph(random_rep(41, k, 12));
        CHECK(oracle::chromatic_exact(g) >= std::ceil(oracle::fractional_chromatic_exact(g) - 1e-6));
    }
}

TEST_CASE("stacks oracle is monotone in H and reaches chi") {
    for (std::size_t k = 0; k < 30; ++k) {
        const auto rep = random_rep(51, k, 8);
        const int n = rep.size();
        int prev = n + 1;
        for (int h = 1; h <= n; ++h) {
            const int s = oracle::stacks_exact(rep, h);
            CHECK(s <= prev);
            prev = s;
        }
        CHECK(prev == oracle::chromatic_exact(build_graph(rep)));
    }
}

TEST_CASE("frozen values from the independent script") {
    std::size_t k = 0;
    for (const Frozen& f : kFrozen) {
        CAPTURE(k);
        const auto rep = rep_of(f.intervals);
        CHECK(rep == generate_one(7, instance_seed(2024, k)));
        const auto g = build_graph(rep);
        CHECK(static_cast<int>(g.edge_count()) == f.edges);
        CHECK(max_clique(g) == f.omega);
        CHECK(oracle::chromatic_exact(g) == f.chi);
        CHECK(oracle::fractional_chromatic_exact(g) == doctest::Approx(f.chi_f));
        std::vector<double> w;
        for (int v = 0; v < 7; ++v) w.push_back(static_cast<double>((v * 7 + static_cast<int>(k)) % 11) - 5.0);
        CHECK(oracle::mwis_exact(g, w) == doctest::Approx(f.mwis));
        for (int h = 1; h <= 3; ++h) {
            CHECK(oracle::stacks_exact(rep, h) == f.stacks[h - 1]);
            CHECK(oracle::stacks_lp_exact(rep, h) == doctest::Approx(f.stacks_lp[h - 1]));
        }
        ++k;
    }
}

} // TEST_SUITE
