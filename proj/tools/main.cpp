#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "circol/bnb.hpp"
#include "circol/instances.hpp"
#include "circol/lp_io.hpp"
#include "circol/lp_models.hpp"
#include "circol/mwis.hpp"
#include "circol/oracle.hpp"
#include "circol/stowage.hpp"

using namespace circol;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

enum Exit { kOk = 0, kUsage = 1, kInput = 2, kSolver = 3 };

struct Globals {
    bool json = false;
    bool no_timing = false;
    bool verbose = false;
    double tolerance = 0.0;
    double int_tolerance = 1e-6;
    std::size_t node_limit = 200000;

    SimplexOptions lp() const {
        SimplexOptions o = SimplexOptions::from_environment();
        if (tolerance > 0.0) o.feasibility_tol = o.optimality_tol = tolerance;
        o.integrality_tol = int_tolerance;
        return o;
    }
    SolveOptions solve() const {
        SolveOptions o;
        o.branch.lp = lp();
        o.branch.integrality_tol = int_tolerance;
        o.branch.node_limit = node_limit;
        if (verbose) o.branch.log = &std::cerr;
        return o;
    }
};

// LP values printed to 9 decimals at most, so 2.4999999999 shows as 2.5.
double clean(double v) {
    const double r = std::round(v * 1e9) / 1e9;
    return r == 0.0 ? 0.0 : r;
}

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(12);
    ss << clean(v);
    return ss.str();
}

Json header(const std::string& command) { return Json{{"schema_version", kSchemaVersion}, {"command", command}}; }

void emit(const Json& doc) { std::cout << doc.dump(2) << '\n'; }

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
    return out;
}

std::vector<int> one_based(const VertexSet& s) {
    std::vector<int> out;
    for (int v : s) out.push_back(v + 1);
    return out;
}

std::string joined(const std::vector<int>& xs) {
    std::string out;
    for (int x : xs) out += (out.empty() ? "" : " ") + std::to_string(x);
    return out;
}

Json timings(const PhaseTimings& t) {
    return Json{{"build_ms", t.build_ms}, {"root_ms", t.root_ms}, {"search_ms", t.search_ms}, {"decode_ms", t.decode_ms}};
}

std::string timing_line(const PhaseTimings& t) {
    std::ostringstream ss;
    ss.setf(std::ios::fixed);
    ss.precision(3);
    ss << "time_ms build=" << t.build_ms << " root=" << t.root_ms << " search=" << t.search_ms
       << " decode=" << t.decode_ms;
    return ss.str();
}

int cmd_solve(const Globals& g, const std::string& input, const std::string& certificate, const std::string& dimacs) {
    const auto rep = read_instance_file(input);
    const auto graph = build_graph(rep);
    const SolveReport r = solve_chromatic(rep, g.solve());
    const auto parent = r.coloring.parent.value_or(std::vector<int>(static_cast<std::size_t>(rep.size()), kRoot));
    if (!certificate.empty()) {
        auto out = open_out(certificate);
        write_certificate(out, r.coloring, parent);
    }
    if (!dimacs.empty()) {
        auto out = open_out(dimacs);
        write_dimacs(out, graph);
    }
    if (g.json) {
        Json doc = header("solve");
        doc["n"] = rep.size();
        doc["edges"] = graph.edge_count();
        doc["chi"] = r.chromatic_number;
        doc["chi_f"] = clean(r.fractional_chromatic);
        doc["root_gap"] = clean(r.root_gap);
        doc["nodes"] = r.nodes_explored;
        doc["root_integral"] = r.root_integral;
        doc["coloring"] = r.coloring.colors;
        std::vector<int> p;
        for (int x : parent) p.push_back(x == kRoot ? 0 : x + 1);
        doc["parent"] = p;
        if (!g.no_timing) doc["timings"] = timings(r.timings);
        emit(doc);
        return kOk;
    }
    std::cout << "chi=" << r.chromatic_number << " chi_f=" << fmt(r.fractional_chromatic) << '\n';
    std::cout << "nodes=" << r.nodes_explored << " root_integral=" << (r.root_integral ? "yes" : "no") << '\n';
    std::cout << "vertex color parent\n";
    write_certificate(std::cout, r.coloring, parent);
    if (!g.no_timing) std::cout << timing_line(r.timings) << '\n';
    return kOk;
}

int cmd_relax(const Globals& g, const std::string& input, const std::string& formulation) {
    const auto rep = read_instance_file(input);
    const ContainmentDag dag(rep);
    const CliqueMatrix cm(rep);
    const LpModel model = formulation == "fcp" ? build_fcp(rep, dag, cm) : build_cg(rep, dag, cm, true);
    const LpSolution lp = solve_lp(model, g.lp());
    if (lp.status != LpStatus::Optimal) throw Error(ErrorCode::NumericalFailure, "relaxation did not solve");
    if (g.json) {
        Json doc = header("relax");
        doc["formulation"] = formulation;
        doc["chi_f"] = clean(lp.objective);
        doc["iterations"] = lp.iterations;
        emit(doc);
        return kOk;
    }
    std::cout << "chi_f=" << fmt(lp.objective) << '\n';
    std::cout << "formulation=" << formulation << " iterations=" << lp.iterations << '\n';
    return kOk;
}

std::vector<double> read_weights(const std::string& list, const std::string& file, int n) {
    std::vector<double> w;
    if (!list.empty() || !file.empty()) {
        std::string text = list;
        if (!file.empty()) {
            std::ifstream in(file);
            if (!in) throw Error(ErrorCode::IoError, "cannot open " + file);
            std::ostringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        }
        for (char& c : text) {
            if (c == ',') c = ' ';
        }
        std::istringstream ss(text);
        for (std::string tok; ss >> tok;) {
            try {
                std::size_t used = 0;
                w.push_back(std::stod(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw Error(ErrorCode::ParseError, "bad weight '" + tok + "'");
            }
        }
        if (static_cast<int>(w.size()) != n) {
            throw Error(ErrorCode::ParseError,
                        "expected " + std::to_string(n) + " weights, got " + std::to_string(w.size()));
        }
    } else {
        w.assign(static_cast<std::size_t>(n), 1.0);
    }
    return w;
}

int cmd_mwis(const Globals& g, const std::string& input, const std::string& list, const std::string& file) {
    const auto rep = read_instance_file(input);
    const auto w = read_weights(list, file, rep.size());
    const MwisResult r = solve_mwis(rep, w);
    if (g.json) {
        Json doc = header("mwis");
        doc["value"] = clean(r.value);
        doc["set"] = one_based(r.set);
        std::vector<double> ell;
        for (double x : r.labels.ell) ell.push_back(clean(x));
        doc["labels"] = ell;
        emit(doc);
        return kOk;
    }
    std::cout << "mwis=" << fmt(r.value) << '\n';
    std::cout << "set: " << joined(one_based(r.set)) << '\n';
    return kOk;
}

int cmd_stacks(const Globals& g, const std::string& input, int height, const std::string& plan_path) {
    const auto rep = read_instance_file(input);
    const SolveReport r = solve_stacks(rep, height, g.solve());
    const StackPlan& plan = *r.plan;
    if (!plan_path.empty()) {
        auto out = open_out(plan_path);
        write_stack_plan(out, plan);
    }
    if (g.json) {
        Json doc = header("stacks");
        doc["height"] = height;
        doc["effective_height"] = r.height;
        doc["stacks"] = r.chromatic_number;
        doc["lp"] = clean(r.fractional_chromatic);
        doc["nodes"] = r.nodes_explored;
        Json list = Json::array();
        for (std::size_t s = 0; s < plan.stacks.size(); ++s) {
            list.push_back({{"height", plan.heights[s]}, {"vertices", one_based(plan.stacks[s])}});
        }
        doc["plan"] = list;
        if (!g.no_timing) doc["timings"] = timings(r.timings);
        emit(doc);
        return kOk;
    }
    std::cout << "stacks=" << r.chromatic_number << " lp=" << fmt(r.fractional_chromatic) << " height=" << height
              << " effective_height=" << r.height << '\n';
    for (std::size_t s = 0; s < plan.stacks.size(); ++s) {
        std::cout << "stack " << s + 1 << " height " << plan.heights[s] << ": " << joined(one_based(plan.stacks[s]))
                  << '\n';
    }
    if (!g.no_timing) std::cout << timing_line(r.timings) << '\n';
    return kOk;
}

int cmd_gen(const Globals& g, int n, std::uint64_t seed, std::size_t count, const std::string& dir) {
    const auto instances = generate({n, seed, count});
    if (!dir.empty()) {
        std::filesystem::create_directories(dir);
        for (std::size_t k = 0; k < instances.size(); ++k) {
            auto out = open_out((std::filesystem::path(dir) / ("inst_" + std::to_string(k + 1) + ".txt")).string());
            write_instance(out, instances[k]);
        }
    }
    if (g.json) {
        Json doc = header("gen");
        doc["n"] = n;
        doc["seed"] = seed;
        Json list = Json::array();
        for (const auto& rep : instances) {
            Json ivs = Json::array();
            for (const auto& iv : rep.intervals()) ivs.push_back({iv.left, iv.right});
            list.push_back(ivs);
        }
        doc["instances"] = list;
        emit(doc);
        return kOk;
    }
    for (const auto& rep : instances) {
        std::string line;
        for (const auto& iv : rep.intervals()) {
            line += (line.empty() ? "" : " ") + ("[" + std::to_string(iv.left) + "," + std::to_string(iv.right) + "]");
        }
        std::cout << line << '\n';
    }
    return kOk;
}

int cmd_export(const Globals&, const std::string& input, const std::string& format, const std::string& formulation,
               bool relax, int height, const std::string& output, const std::string& sidecar) {
    const auto rep = read_instance_file(input);
    const ContainmentDag dag(rep);
    const CliqueMatrix cm(rep);
    LpModel model;
    if (formulation == "cg") {
        model = build_cg(rep, dag, cm, relax);
    } else if (formulation == "cgh") {
        model = build_cgh(rep, LayeredDag(rep, height), cm, relax);
    } else {
        const auto graph = build_graph(rep);
        model = formulation == "cl" ? build_cl(graph) : build_as(graph);
        if (relax) model = model.relaxed();
    }
    auto write = [&](std::ostream& out) {
        if (format == "mps") {
            write_mps(out, model);
        } else {
            write_lp(out, model);
        }
    };
    if (output.empty() || output == "-") {
        write(std::cout);
    } else {
        auto out = open_out(output);
        write(out);
    }
    if (!sidecar.empty()) {
        auto out = open_out(sidecar);
        out << sidecar_json(model);
    }
    return kOk;
}

int cmd_bench(const Globals& g, const std::vector<int>& ns, std::size_t samples, std::uint64_t seed, unsigned threads,
              const std::string& output) {
    ExperimentOptions opts;
    opts.solve = g.solve();
    opts.solve.branch.log = nullptr;
    opts.threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    const auto rows = run_experiment(ns, samples, seed, opts);
    std::size_t failures = 0;
    for (const auto& r : rows) failures += r.failures;
    if (failures > 0) std::cerr << "warning: " << failures << " instance(s) failed and were excluded\n";
    if (g.json) {
        Json doc = header("bench");
        doc["seed"] = seed;
        doc["samples"] = samples;
        Json list = Json::array();
        for (const auto& r : rows) {
            Json row{{"n", r.n},
                     {"mean_edges", r.mean_edges},
                     {"count_omega_eq_chi", r.count_omega_eq_chi},
                     {"count_chi_f_eq_chi", r.count_chi_f_eq_chi},
                     {"max_chi_minus_chi_f", clean(r.max_chi_minus_chi_f)},
                     {"failures", r.failures}};
            if (!g.no_timing) row["mean_solve_time"] = r.mean_solve_time;
            list.push_back(row);
        }
        doc["rows"] = list;
        emit(doc);
    } else if (output.empty() || output == "-") {
        write_experiment_csv(std::cout, rows, !g.no_timing);
    } else {
        auto out = open_out(output);
        write_experiment_csv(out, rows, !g.no_timing);
    }
    return failures > 0 ? kSolver : kOk;
}

int cmd_verify(const Globals& g, int n_max, std::size_t trials, std::uint64_t seed) {
    const SolveOptions solve = g.solve();
    const SimplexOptions lp = g.lp();
    std::size_t checks = 0;
    std::size_t mismatches = 0;
    auto check = [&](bool ok, std::size_t trial, const std::string& what) {
        ++checks;
        if (ok) return;
        ++mismatches;
        std::cerr << "trial " << trial + 1 << ": " << what << '\n';
    };
    for (std::size_t t = 0; t < trials; ++t) {
        SplitMix64 rng(instance_seed(seed, t));
        const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n_max)));
        const auto rep = generate_one(n, rng.next());
        const auto graph = build_graph(rep);

        const SolveReport r = solve_chromatic(rep, solve);
        const int chi = oracle::chromatic_exact(graph);
        check(r.chromatic_number == chi, t, "chi " + std::to_string(r.chromatic_number) + " vs " + std::to_string(chi));
        check(validate_coloring(graph, r.coloring) && r.coloring.num_colors == chi, t, "coloring certificate");
        const double chi_f = oracle::fractional_chromatic_exact(graph, {}, lp);
        check(std::abs(r.fractional_chromatic - chi_f) <= 1e-6, t,
              "chi_f " + fmt(r.fractional_chromatic) + " vs " + fmt(chi_f));

        std::vector<double> w(static_cast<std::size_t>(n));
        for (double& x : w) x = static_cast<double>(rng.below(11)) - 5.0;
        const double dp = solve_mwis(rep, w).value;
        const double brute = oracle::mwis_exact(graph, w);
        const ContainmentDag dag(rep);
        const CliqueMatrix cm(rep);
        const LpSolution isd = solve_lp(build_isd(rep, dag, cm, w), lp);
        check(std::abs(dp - brute) <= 1e-6, t, "mwis dp " + fmt(dp) + " vs " + fmt(brute));
        check(isd.status == LpStatus::Optimal && std::abs(isd.objective - brute) <= 1e-6, t,
              "mwis lp " + fmt(isd.objective) + " vs " + fmt(brute));

        std::vector<int> all(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) all[static_cast<std::size_t>(v)] = v;
        check(max_antichain(rep, all) == oracle::max_antichain_exact(rep, all), t, "max antichain");

        if (n <= 8) {
            for (int h = 1; h <= 3; ++h) {
                const int got = solve_stacks(rep, h, solve).chromatic_number;
                const int want = oracle::stacks_exact(rep, h);
                check(got == want, t,
                      "stacks H=" + std::to_string(h) + " " + std::to_string(got) + " vs " + std::to_string(want));
            }
        }
    }
    if (g.json) {
        Json doc = header("verify");
        doc["trials"] = trials;
        doc["checks"] = checks;
        doc["mismatches"] = mismatches;
        emit(doc);
    } else {
        std::cout << "verify: trials=" << trials << " checks=" << checks << " mismatches=" << mismatches << '\n';
    }
    return mismatches == 0 ? kOk : kSolver;
}

int exit_code(ErrorCode code) {
    switch (code) {
    case ErrorCode::Empty:
    case ErrorCode::DuplicateEndpoint:
    case ErrorCode::ParseError:
    case ErrorCode::IoError:
    case ErrorCode::MissingVertex: return kInput;
    case ErrorCode::InvalidHeight:
    case ErrorCode::OverBudget: return kUsage;
    default: return kSolver;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact coloring and stack planning for circle graphs", "circol"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    auto* json_flag = app.add_flag("--json", g.json, "Machine-readable JSON report");
    app.add_flag("--no-timing", g.no_timing, "Omit timing fields");
    app.add_flag("-v,--verbose", g.verbose, "Log branch-and-bound nodes to stderr")->excludes(json_flag);
    app.add_option("--tolerance", g.tolerance, "Simplex feasibility/optimality tolerance")->check(CLI::PositiveNumber);
    app.add_option("--int-tolerance", g.int_tolerance, "Integrality tolerance")->check(CLI::PositiveNumber);
    app.add_option("--node-limit", g.node_limit, "Branch-and-bound node limit")->check(CLI::PositiveNumber);

    std::string input;
    auto* solve = app.add_subcommand("solve", "Chromatic number, fractional chromatic number and a coloring");
    std::string certificate;
    std::string dimacs;
    solve->add_option("input", input, "Instance file")->required();
    solve->add_option("--certificate", certificate, "Write 'vertex color parent' lines here");
    solve->add_option("--dimacs", dimacs, "Write the graph in DIMACS edge format here");

    auto* relax = app.add_subcommand("relax", "Fractional chromatic number from the LP relaxation");
    std::string relax_form = "cg";
    relax->add_option("input", input, "Instance file")->required();
    relax->add_option("--formulation", relax_form, "cg or fcp")->check(CLI::IsMember({"cg", "fcp"}));

    auto* mwis = app.add_subcommand("mwis", "Maximum-weight independent set");
    std::string weights;
    std::string weights_file;
    mwis->add_option("input", input, "Instance file")->required();
    auto* w_opt = mwis->add_option("--weights", weights, "Comma-separated vertex weights (default all 1)");
    auto* wf_opt = mwis->add_option("--weights-file", weights_file, "File of whitespace-separated weights");
    w_opt->excludes(wf_opt);

    auto* stacks = app.add_subcommand("stacks", "Minimum number of stacks of bounded height");
    int height = 0;
    std::string plan;
    stacks->add_option("input", input, "Instance file")->required();
    stacks->add_option("-H,--height", height, "Maximum stack height")->required();
    stacks->add_option("--plan", plan, "Write one line per stack here, bottom to top");

    auto* gen = app.add_subcommand("gen", "Random instances");
    int gen_n = 0;
    std::uint64_t seed = 0;
    std::size_t count = 1;
    std::string out_dir;
    gen->add_option("-n", gen_n, "Vertex count")->required()->check(CLI::PositiveNumber);
    gen->add_option("--seed", seed, "Seed");
    gen->add_option("--count", count, "Number of instances")->check(CLI::PositiveNumber);
    gen->add_option("--output-dir", out_dir, "Write inst_<k>.txt files here");

    auto* exp = app.add_subcommand("export", "Write a model as LP or MPS text");
    std::string format = "lp";
    std::string formulation = "cg";
    bool exp_relax = false;
    int exp_height = 1;
    std::string output;
    std::string sidecar;
    exp->add_option("input", input, "Instance file")->required();
    exp->add_option("--format", format, "lp or mps")->check(CLI::IsMember({"lp", "mps"}));
    exp->add_option("--formulation", formulation, "cg, cl, as or cgh")->check(CLI::IsMember({"cg", "cl", "as", "cgh"}));
    exp->add_flag("--relax", exp_relax, "Continuous relaxation");
    auto* height_opt = exp->add_option("-H,--height", exp_height, "Stack height for cgh");
    exp->add_option("-o,--output", output, "Output file (default stdout)");
    exp->add_option("--sidecar", sidecar, "Write the variable map as JSON here");

    auto* bench = app.add_subcommand("bench", "Random-instance statistics as CSV");
    std::vector<int> bench_n{5, 10, 30, 50};
    std::size_t samples = 100;
    unsigned threads = 1;
    std::string bench_out;
    bench->add_option("--n", bench_n, "Vertex counts")->delimiter(',')->check(CLI::PositiveNumber);
    bench->add_option("--samples", samples, "Instances per vertex count")->check(CLI::PositiveNumber);
    bench->add_option("--seed", seed, "Seed");
    bench->add_option("--threads", threads, "Worker threads (0 = all cores)");
    bench->add_option("-o,--output", bench_out, "CSV file (default stdout)");

    auto* verify = app.add_subcommand("verify", "Cross-check solvers against brute-force oracles");
    int n_max = 10;
    std::size_t trials = 50;
    verify->add_option("--n-max", n_max, "Largest instance size")->check(CLI::Range(1, 12));
    verify->add_option("--trials", trials, "Number of random instances");
    verify->add_option("--seed", seed, "Seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }
    if (*exp && formulation != "cgh" && height_opt->count() > 0) {
        std::cerr << "--height applies only to --formulation cgh\n";
        return kUsage;
    }

    try {
        if (*solve) return cmd_solve(g, input, certificate, dimacs);
        if (*relax) return cmd_relax(g, input, relax_form);
        if (*mwis) return cmd_mwis(g, input, weights, weights_file);
        if (*stacks) return cmd_stacks(g, input, height, plan);
        if (*gen) return cmd_gen(g, gen_n, seed, count, out_dir);
        if (*exp) return cmd_export(g, input, format, formulation, exp_relax, exp_height, output, sidecar);
        if (*bench) return cmd_bench(g, bench_n, samples, seed, threads, bench_out);
        if (*verify) return cmd_verify(g, n_max, trials, seed);
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        return exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kSolver;
    }
    return kUsage;
}
