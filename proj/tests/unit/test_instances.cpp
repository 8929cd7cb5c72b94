#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "circol/instances.hpp"
#include "helpers.hpp"

using namespace circol;
using namespace testing;

TEST_SUITE("instances") {

TEST_CASE("SplitMix64 reference outputs") {
    SplitMix64 rng(1234567);
    CHECK(rng.next() == 6457827717110365317ULL);
    CHECK(rng.next() == 3203168211198807973ULL);
    CHECK(rng.next() == 9817491932198370423ULL);
    SplitMix64 again(1234567);
    CHECK(instance_seed(1234567, 0) == again.next());
    CHECK(instance_seed(1234567, 2) == 9817491932198370423ULL);
}

TEST_CASE("below stays in range and hits every value") {
    SplitMix64 rng(3);
    std::vector<int> seen(7, 0);
    for (int i = 0; i < 2000; ++i) {
        const auto x = rng.below(7);
        REQUIRE(x < 7);
        ++seen[x];
    }
    for (int c : seen) CHECK(c > 200);
    CHECK(rng.below(1) == 0);
}

TEST_CASE("consecutive pairs of a shuffled sequence") {
    const std::vector<std::int64_t> seq{5, 3, 1, 4, 6, 2};
    CHECK(from_sequence(seq).intervals() == std::vector<Interval>{{3, 5}, {1, 4}, {2, 6}});
    const std::vector<std::int64_t> odd{1, 2, 3};
    CHECK_THROWS_AS(from_sequence(odd), Error);
}

TEST_CASE("n = 1 is always [1,2]") {
    for (std::uint64_t seed : {0ULL, 7ULL, 123456789ULL}) {
        CHECK(generate_one(1, seed).intervals() == std::vector<Interval>{{1, 2}});
    }
}

TEST_CASE("generation is deterministic and uses every endpoint once") {
    const GeneratorConfig cfg{12, 99, 20};
    const auto a = generate(cfg);
    const auto b = generate(cfg);
    REQUIRE(a.size() == 20);
    CHECK(a == b);
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k] == generate_one(12, instance_seed(99, k)));
        std::vector<int> ends;
        for (const auto& iv : a[k].intervals()) {
            ends.push_back(iv.left);
            ends.push_back(iv.right);
        }
        std::sort(ends.begin(), ends.end());
        for (int i = 0; i < 24; ++i) CHECK(ends[static_cast<std::size_t>(i)] == i + 1);
    }
}

TEST_CASE("frozen stream for n = 7, seed 2024") {
    const auto list = generate({7, 2024, 2});
    CHECK(list[0].intervals() == std::vector<Interval>{{3, 6}, {4, 7}, {5, 11}, {8, 10}, {9, 12}, {13, 14}, {1, 2}});
    CHECK(list[1].intervals() == std::vector<Interval>{{1, 10}, {2, 6}, {7, 9}, {8, 14}, {3, 4}, {5, 12}, {11, 13}});
}

TEST_CASE("max clique") {
    CHECK(max_clique(build_graph(c5())) == 2);
    CHECK(max_clique(CircleGraph(4)) == 1);
    CHECK(max_clique(build_graph(p3())) == 2);
    CHECK(max_clique(CircleGraph(0)) == 0);
    // three pairwise overlapping intervals
    CHECK(max_clique(build_graph(rep_of({{1, 4}, {2, 5}, {3, 6}}))) == 3);
}

TEST_CASE("instance text round trip") {
    std::istringstream in("# C5 witness\n5\n1 4\n\n3 6\n5 8\n7 10\n2 9\n");
    const auto rep = read_instance(in);
    CHECK(rep == c5());
    std::ostringstream out;
    write_instance(out, rep);
    CHECK(out.str() == "5\n1 4\n3 6\n5 8\n7 10\n2 9\n");
    std::istringstream back(out.str());
    CHECK(read_instance(back) == rep);
}

TEST_CASE("instance parse errors carry codes") {
    auto code_of = [](const std::string& text) {
        std::istringstream in(text);
        try {
            read_instance(in);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvalidModel;
    };
    CHECK(code_of("3\n1 4\n2 x\n") == ErrorCode::ParseError);
    CHECK(code_of("2\n1 4\n") == ErrorCode::ParseError);
    CHECK(code_of("two\n") == ErrorCode::ParseError);
    CHECK(code_of("1\n1 2 3\n") == ErrorCode::ParseError);
    CHECK(code_of("") == ErrorCode::ParseError);
    CHECK(code_of("0\n") == ErrorCode::Empty);
    CHECK(code_of("2\n1 3\n3 4\n") == ErrorCode::DuplicateEndpoint);
    try {
        read_instance_file("/nonexistent/circol/instance.txt");
        FAIL("expected IoError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IoError);
    }
}

TEST_CASE("instance file on disk") {
    const auto path = std::filesystem::temp_directory_path() / "circol_instance_test.txt";
    {
        std::ofstream f(path);
        write_instance(f, p3());
    }
    CHECK(read_instance_file(path) == p3());
    std::filesystem::remove(path);
}

TEST_CASE("DIMACS and certificate writers") {
    std::ostringstream d;
    write_dimacs(d, build_graph(p3()));
    CHECK(d.str() == "p edge 3 2\ne 1 2\ne 2 3\n");
    std::ostringstream c;
    const std::vector<int> parent{kRoot, kRoot, 0};
    write_certificate(c, Coloring::from_colors({1, 2, 1}), parent);
    CHECK(c.str() == "1 1 0\n2 2 0\n3 1 1\n");
}

TEST_CASE("experiment CSV") {
    std::vector<ExperimentRow> rows(1);
    rows[0].n = 5;
    rows[0].samples = 100;
    rows[0].mean_edges = 3.354;
    rows[0].mean_solve_time = 0.0012;
    rows[0].count_omega_eq_chi = 100;
    rows[0].count_chi_f_eq_chi = 100;
    rows[0].max_chi_minus_chi_f = 0.0;
    std::ostringstream out;
    write_experiment_csv(out, rows);
    CHECK(out.str() == "|V|,|E|,Ours,# ω = χ,# χ_f = χ,max. χ − χ_f\n5,3.35,0.001,100,100,0.0\n");
    std::ostringstream bare;
    write_experiment_csv(bare, rows, false);
    CHECK(bare.str().find("5,3.35,-,100,100,0.0") != std::string::npos);
}

TEST_CASE("experiment results do not depend on the thread count") {
    const std::vector<int> ns{5, 9};
    ExperimentOptions one;
    ExperimentOptions four;
    four.threads = 4;
    const auto a = run_experiment(ns, 15, 42, one);
    const auto b = run_experiment(ns, 15, 42, four);
    REQUIRE(a.size() == 2);
    REQUIRE(b.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(a[i].n == ns[i]);
        CHECK(a[i].samples == 15);
        CHECK(a[i].failures == 0);
        CHECK(a[i].mean_edges == b[i].mean_edges);
        CHECK(a[i].count_omega_eq_chi == b[i].count_omega_eq_chi);
        CHECK(a[i].count_chi_f_eq_chi == b[i].count_chi_f_eq_chi);
        CHECK(a[i].max_chi_minus_chi_f == b[i].max_chi_minus_chi_f);
        CHECK(a[i].count_omega_eq_chi <= a[i].samples);
        CHECK(a[i].max_chi_minus_chi_f < 1.0);
    }
}

} // TEST_SUITE
