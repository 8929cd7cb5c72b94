#include <doctest.h>

#include "circol/greedy.hpp"
#include "circol/mwis.hpp"
#include "circol/oracle.hpp"
#include "helpers.hpp"

using namespace circol;
using namespace testing;

TEST_SUITE("mwis") {

TEST_CASE("max weight chain") {
    const auto c = c5();
    std::vector<double> ones(5, 1.0);
    const auto r = max_weight_chain(c, std::vector<int>{1, 2}, ones);
    CHECK(r.value == doctest::Approx(1.0));
    CHECK(r.chain.size() == 1);

    const auto empty = max_weight_chain(c, std::vector<int>{}, ones);
    CHECK(empty.value == 0.0);
    CHECK(empty.chain.empty());

    const auto line = rep_of({{1, 2}, {3, 4}, {5, 6}});
    const auto all = max_weight_chain(line, all_vertices(3), std::vector<double>{1, 1, 1});
    CHECK(all.value == doctest::Approx(3.0));
    CHECK(all.chain == std::vector<int>{0, 1, 2});

    const auto neg = max_weight_chain(line, all_vertices(3), std::vector<double>{-1, 2, -1});
    CHECK(neg.value == doctest::Approx(2.0));
    CHECK(neg.chain == std::vector<int>{1});
}

TEST_CASE("mwis examples") {
    const auto one = solve_mwis(single(), std::vector<double>{-3});
    CHECK(one.value == 0.0);
    CHECK(one.set.empty());

    const auto pair = solve_mwis(nested_pair(), std::vector<double>{1, 1});
    CHECK(pair.value == doctest::Approx(2.0));
    CHECK(pair.labels.ell[1] == doctest::Approx(1.0));
    CHECK(pair.labels.ell[0] == doctest::Approx(2.0));
    CHECK(pair.labels.root == doctest::Approx(2.0));

    const auto c = solve_mwis(c5(), std::vector<double>(5, 1.0));
    CHECK(c.value == doctest::Approx(2.0));
    CHECK(build_graph(c5()).is_independent(c.set));
}

TEST_CASE("labels of leaves are their weights") {
    const auto rep = c5();
    const std::vector<double> w{2, -1, 4, 0.5, 3};
    const auto r = solve_mwis(rep, w);
    for (int v : {0, 1, 2, 3}) CHECK(r.labels.ell[static_cast<std::size_t>(v)] == doctest::Approx(w[static_cast<std::size_t>(v)]));
    // v5 ⊃ {v2, v3}, which overlap: ℓ_5 = 3 + max(0, -1, 4)
    CHECK(r.labels.ell[4] == doctest::Approx(7.0));
}

TEST_CASE("mwis matches brute force with signed weights") {
    for (std::size_t k = 0; k < 200; ++k) {
        const auto rep = random_rep(2024, k, 12);
        const int n = rep.size();
        SplitMix64 rng(k + 17);
        std::vector<double> w(static_cast<std::size_t>(n));
        for (double& x : w) x = static_cast<double>(rng.below(11)) - 5.0;
        const auto r = solve_mwis(rep, w);
        const auto g = build_graph(rep);
        CHECK(r.value == doctest::Approx(oracle::mwis_exact(g, w)));
        CHECK(g.is_independent(r.set));
        double sum = 0.0;
        for (int v : r.set) sum += w[static_cast<std::size_t>(v)];
        CHECK(sum == doctest::Approx(r.value));
        CHECK(r.value >= 0.0);
    }
}

TEST_CASE("chain partition") {
    const auto three = rep_of({{1, 4}, {3, 6}, {5, 8}});
    const auto chains = chain_partition(three, all_vertices(3));
    CHECK(chains == std::vector<VertexSet>{{0, 2}, {1}});
    CHECK(chain_partition(three, std::vector<int>{}).empty());
    CHECK(chain_partition(rep_of({{1, 2}, {3, 4}}), all_vertices(2)).size() == 1);
}

TEST_CASE("chain partition is tight on random subsets") {
    for (std::size_t k = 0; k < 100; ++k) {
        const auto rep = random_rep(8, k, 12);
        const auto all = all_vertices(rep.size());
        const auto chains = chain_partition(rep, all);
        CHECK(static_cast<int>(chains.size()) == max_antichain(rep, all));
        std::size_t covered = 0;
        for (const auto& ch : chains) {
            CHECK(rep.is_chain(ch));
            covered += ch.size();
        }
        CHECK(covered == all.size());
    }
}

TEST_CASE("decode arborescence examples") {
    // P3: T = {(0,[1,4]), (0,[2,6]), ([2,6],[3,5])}
    const auto rep = p3();
    const std::vector<Arc> t{{kRoot, 1}, {kRoot, 2}, {2, 0}};
    const Coloring col = decode_arborescence(rep, t, 2);
    CHECK(col.num_colors == 2);
    CHECK(col.colors[0] == col.colors[2]);
    CHECK(validate_coloring(build_graph(rep), col));

    const Coloring one = decode_arborescence(single(), std::vector<Arc>{{kRoot, 0}}, 1);
    CHECK(one.colors == std::vector<int>{1});

    std::vector<Arc> star;
    for (int v = 0; v < 5; ++v) star.push_back({kRoot, v});
    const Coloring c = decode_arborescence(c5(), star, 3);
    CHECK(c.num_colors == 3);
    CHECK(validate_coloring(build_graph(c5()), c));
}

TEST_CASE("decode arborescence errors name the vertex") {
    const auto rep = c5();
    std::vector<Arc> star;
    for (int v = 0; v < 5; ++v) star.push_back({kRoot, v});
    try {
        decode_arborescence(rep, star, 2);
        FAIL("expected C2Violated");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::C2Violated);
        CHECK(e.vertex().has_value());
    }
    // v5 with both overlapping children v2, v3: not a chain
    try {
        decode_arborescence(rep, std::vector<Arc>{{kRoot, 0}, {4, 1}, {4, 2}, {kRoot, 3}, {kRoot, 4}}, 3);
        FAIL("expected C1Violated");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::C1Violated);
        CHECK(e.vertex() == 4);
    }
    try {
        decode_arborescence(rep, std::vector<Arc>{{kRoot, 0}, {kRoot, 1}, {kRoot, 2}, {kRoot, 3}}, 3);
        FAIL("expected NotArborescence");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotArborescence);
        CHECK(e.vertex() == 4);
    }
    // (v1, v2) is not a containment arc
    CHECK_THROWS_AS(decode_arborescence(rep, std::vector<Arc>{{kRoot, 0}, {0, 1}, {kRoot, 2}, {kRoot, 3}, {kRoot, 4}}, 3),
                    Error);
}

TEST_CASE("T(phi) round trip keeps a proper coloring of the same size") {
    for (std::size_t k = 0; k < 100; ++k) {
        const auto rep = random_rep(77, k, 12);
        const auto g = build_graph(rep);
        const Coloring ff = first_fit(g, rep.topological_order());
        const auto parent = arborescence_of(rep, ff.colors);
        const Coloring again = decode_parents(rep, parent, ff.num_colors);
        CHECK(validate_coloring(g, again));
        CHECK(again.num_colors == ff.num_colors);
        CHECK(again.parent.has_value());
    }
}

} // TEST_SUITE
