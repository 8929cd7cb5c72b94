// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "circol/bnb.hpp"
#include "circol/greedy.hpp"
#include "circol/instances.hpp"
#include "circol/lp_io.hpp"
#include "circol/lp_models.hpp"
#include "circol/mwis.hpp"
#include "circol/oracle.hpp"
#include "circol/stowage.hpp"

using namespace circol;

namespace {

constexpr double kTol = 1e-6;

struct Outcome {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

IntervalRepresentation random_instance(std::uint64_t seed, std::size_t k, int n_max) {
    SplitMix64 rng(instance_seed(seed, k));
    const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n_max)));
    return generate_one(n, rng.next());
}

std::string str(double x) {
    std::ostringstream ss;
    ss.precision(10);
    ss << x;
    return ss.str();
}

LpModel cg_model(const IntervalRepresentation& rep, bool relax = false) {
    const ContainmentDag dag(rep);
    const CliqueMatrix cm(rep);
    return build_cg(rep, dag, cm, relax);
}

double lp_optimum(const LpModel& m) {
    const auto s = solve_lp(m);
    if (s.status != LpStatus::Optimal) throw Error(ErrorCode::NumericalFailure, "LP not optimal");
    return s.objective;
}

Outcome pentagon() {
    Outcome o;
    const std::vector<std::pair<std::int64_t, std::int64_t>> raw{{1, 4}, {3, 6}, {5, 8}, {7, 10}, {2, 9}};
    const auto rep = IntervalRepresentation::normalize(raw);
    const SolveReport r = solve_chromatic(rep);
    const int omega = max_clique(build_graph(rep));
    if (r.chromatic_number != 3) o.fail("chi=" + std::to_string(r.chromatic_number));
    if (std::abs(r.fractional_chromatic - 2.5) > kTol) o.fail("chi_f=" + str(r.fractional_chromatic));
    if (omega != 2) o.fail("omega=" + std::to_string(omega));
    if (o.ok) o.detail = "chi=3 chi_f=2.5 omega=2";
    return o;
}

Outcome fractional_end_to_end() {
    Outcome o;
    double worst = 0.0;
    for (std::size_t k = 0; k < 100; ++k) {
        const auto rep = random_instance(20240101, k, 12);
        const auto g = build_graph(rep);
        const double root = fractional_chromatic(rep);
        const double ref = g.size() <= 10 ? oracle::fractional_chromatic_all_sets(g) : oracle::fractional_chromatic_exact(g);
        worst = std::max(worst, std::abs(root - ref));
        if (std::abs(root - ref) > kTol) o.fail("instance " + std::to_string(k) + ": " + str(root) + " vs " + str(ref));
    }
    if (o.ok) o.detail = "100 instances, max |diff| " + str(worst);
    return o;
}

Outcome chromatic_end_to_end() {
    Outcome o;
    std::size_t nodes = 0;
    for (std::size_t k = 0; k < 100; ++k) {
        const auto rep = random_instance(20240101, k, 12);
        const auto g = build_graph(rep);
        const SolveReport r = solve_chromatic(rep);
        const int ref = oracle::chromatic_exact(g);
        nodes += r.nodes_explored;
        if (r.chromatic_number != ref) {
            o.fail("instance " + std::to_string(k) + ": chi " + std::to_string(r.chromatic_number) + " vs " + std::to_string(ref));
        }
        if (r.coloring.num_colors != ref || !validate_coloring(g, r.coloring) || !r.coloring.parent) {
            o.fail("instance " + std::to_string(k) + ": bad certificate");
        }
    }
    if (o.ok) o.detail = "100 instances, " + std::to_string(nodes) + " nodes in total";
    return o;
}

Outcome mwis_duality() {
    Outcome o;
    for (std::size_t k = 0; k < 200; ++k) {
        const auto rep = random_instance(777, k, 12);
        SplitMix64 rng(instance_seed(778, k));
        std::vector<double> w(static_cast<std::size_t>(rep.size()));
        for (double& x : w) x = static_cast<double>(rng.below(11)) - 5.0;
        const ContainmentDag dag(rep);
        const CliqueMatrix cm(rep);
        const double isd = lp_optimum(build_isd(rep, dag, cm, w));
        const double dp = solve_mwis(rep, w).value;
        const double brute = oracle::mwis_exact(build_graph(rep), w);
        if (std::abs(isd - dp) > kTol || std::abs(dp - brute) > kTol) {
            o.fail("pair " + std::to_string(k) + ": ISD " + str(isd) + " DP " + str(dp) + " brute " + str(brute));
        }
    }
    if (o.ok) o.detail = "200 pairs agree";
    return o;
}

Outcome chain_integrality() {
    Outcome o;
    std::size_t k = 0;
    std::size_t done = 0;
    while (done < 100) {
        const auto rep = random_instance(4242, k, 12);
        SplitMix64 rng(instance_seed(4243, k));
        ++k;
        const ContainmentDag dag(rep);
        const CliqueMatrix cm(rep);
        std::vector<int> nodes{kRoot};
        for (int i : dag.branching()) nodes.push_back(i);
        const int node = nodes[static_cast<std::size_t>(rng.below(nodes.size()))];
        std::vector<double> ell(static_cast<std::size_t>(rep.size()));
        for (double& x : ell) x = static_cast<double>(rng.below(9)) - 2.0;
        const LpModel m = build_lc(node, rep, dag, cm, ell);
        const auto s = solve_lp(m);
        if (s.status != LpStatus::Optimal) {
            o.fail("LC " + std::to_string(done) + " not optimal");
            break;
        }
        std::vector<int> support;
        for (int j = 0; j < m.variable_count(); ++j) {
            const double x = s.primal[static_cast<std::size_t>(j)];
            if (std::abs(x - std::round(x)) > kTol) o.fail("LC " + std::to_string(done) + ": fractional value " + str(x));
            if (x > 0.5) support.push_back(m.variable(j).tag.index.at(1) - 1);
        }
        if (!rep.is_chain(support)) o.fail("LC " + std::to_string(done) + ": support is not a chain");
        const double best = max_weight_chain(rep, dag.children(node), ell).value;
        if (std::abs(s.objective - best) > kTol) o.fail("LC " + std::to_string(done) + ": value " + str(s.objective));
        ++done;
    }
    if (o.ok) o.detail = "100 LC vertex solutions integral, supports are chains";
    return o;
}

Outcome table_one() {
    Outcome o;
    const std::vector<int> ns{5, 10, 30, 50};
    const double reference_edges[] = {3.35, 14.17, 145.39, 413.40};
    ExperimentOptions opt;
    opt.threads = std::max(1u, std::thread::hardware_concurrency());
    const auto rows = run_experiment(ns, 100, 1, opt);
    std::ostringstream detail;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const double rel = std::abs(r.mean_edges - reference_edges[i]) / reference_edges[i];
        detail << "n=" << r.n << " |E|=" << str(r.mean_edges);
        if (r.failures) o.fail("n=" + std::to_string(r.n) + ": " + std::to_string(r.failures) + " solver failures");
        if (rel > 0.15) o.fail("n=" + std::to_string(r.n) + ": mean |E| " + str(r.mean_edges) + " off by " + str(rel * 100) + "%");
        if (r.max_chi_minus_chi_f >= 1.0) o.fail("n=" + std::to_string(r.n) + ": chi - chi_f = " + str(r.max_chi_minus_chi_f));
        if (r.n == 30) {
            detail << " #chi_f=chi " << r.count_chi_f_eq_chi;
            const double pct = 100.0 * static_cast<double>(r.count_chi_f_eq_chi) / static_cast<double>(r.samples);
            if (std::abs(pct - 94.0) > 10.0) o.fail("n=30: chi_f = chi on " + str(pct) + "%");
        }
        detail << (i + 1 < rows.size() ? ", " : "");
    }
    if (o.ok) o.detail = detail.str();
    return o;
}

Outcome stacks_theorem() {
    Outcome o;
    for (std::size_t k = 0; k < 50; ++k) {
        const auto rep = random_instance(8080, k, 8);
        const CliqueMatrix cm(rep);
        for (int h = 1; h <= 3; ++h) {
            const int got = solve_stacks(rep, h).chromatic_number;
            const int ref = oracle::stacks_exact(rep, h);
            const LayeredDag dag(rep, h);
            const double lp = lp_optimum(build_cgh(rep, dag, cm, true));
            const double ref_lp = oracle::stacks_lp_exact(rep, h);
            if (got != ref) o.fail("instance " + std::to_string(k) + " H=" + std::to_string(h) + ": " + std::to_string(got) + " vs " + std::to_string(ref));
            if (std::abs(lp - ref_lp) > kTol) o.fail("instance " + std::to_string(k) + " H=" + std::to_string(h) + ": LP " + str(lp) + " vs " + str(ref_lp));
        }
    }
    if (o.ok) o.detail = "50 instances x H=1..3";
    return o;
}

Outcome formulations_agree() {
    Outcome o;
    for (std::size_t k = 0; k < 50; ++k) {
        const auto rep = random_instance(9090, k, 10);
        const auto g = build_graph(rep);
        const double cg = solve_mip(cg_model(rep)).objective;
        const double cl = solve_mip(build_cl(g)).objective;
        const double as = solve_mip(build_as(g)).objective;
        if (std::abs(cg - cl) > kTol || std::abs(cg - as) > kTol) {
            o.fail("instance " + std::to_string(k) + ": CG " + str(cg) + " CL " + str(cl) + " AS " + str(as));
        }
    }
    if (o.ok) o.detail = "50 instances, n <= 10";
    return o;
}

Outcome export_round_trip() {
    Outcome o;
    for (std::size_t k = 0; k < 20; ++k) {
        const LpModel m = cg_model(random_instance(3030, k, 10));
        const double want = solve_mip(m).objective;
        std::ostringstream lp;
        std::ostringstream mps;
        write_lp(lp, m);
        write_mps(mps, m);
        std::istringstream lp_in(lp.str());
        std::istringstream mps_in(mps.str());
        const double via_lp = solve_mip(read_lp(lp_in)).objective;
        const double via_mps = solve_mip(read_mps(mps_in)).objective;
        if (std::abs(via_lp - want) > kTol || std::abs(via_mps - want) > kTol) {
            o.fail("model " + std::to_string(k) + ": " + str(want) + " / " + str(via_lp) + " / " + str(via_mps));
        }
    }
    const std::vector<std::pair<std::int64_t, std::int64_t>> raw{{1, 4}, {3, 6}, {5, 8}, {7, 10}, {2, 9}};
    const LpModel c5 = cg_model(IntervalRepresentation::normalize(raw));
    auto golden = [](const char* name) {
        std::ifstream in(std::string(CIRCOL_GOLDEN_DIR) + "/" + name, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    std::ostringstream lp;
    std::ostringstream mps;
    write_lp(lp, c5);
    write_mps(mps, c5);
    if (lp.str() != golden("c5_cg.lp")) o.fail("C5 LP differs from golden file");
    if (mps.str() != golden("c5_cg.mps")) o.fail("C5 MPS differs from golden file");
    if (o.ok) o.detail = "20 models via LP and MPS, C5 golden files identical";
    return o;
}

struct Criterion {
    int id;
    const char* title;
    double limit_s;
    std::function<Outcome()> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "pentagon values", 1, pentagon},
        {2, "root LP equals fractional chromatic number", 120, fractional_end_to_end},
        {3, "branch-and-bound chi equals backtracking chi", 120, chromatic_end_to_end},
        {4, "ISD LP, DP and brute-force MWIS agree", 120, mwis_duality},
        {5, "LC vertex solutions are integral chains", 60, chain_integrality},
        {6, "random instance statistics", 600, table_one},
        {7, "CG_H against the stack oracle", 300, stacks_theorem},
        {8, "CL, AS and CG optima agree", 300, formulations_agree},
        {9, "LP/MPS export round trip", 30, export_round_trip},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.limit_s) o.fail("took " + str(secs) + " s, limit " + str(c.limit_s) + " s");
        failed += !o.ok;
        std::cout << (o.ok ? "PASS" : "FAIL") << ' ' << c.id << ' ' << c.title << " (" << std::fixed;
        std::cout.precision(2);
        std::cout << secs << " s): " << o.detail << '\n';
        std::cout.unsetf(std::ios::fixed);
        std::cout.flush();
    }
    return failed == 0 ? 0 : 1;
}
