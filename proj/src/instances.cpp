#include "circol/instances.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

namespace circol {

std::uint64_t SplitMix64::below(std::uint64_t bound) noexcept {
    // reject the top sliver so every residue is equally likely
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
        const std::uint64_t r = next();
        if (r < limit) return r % bound;
    }
}

std::uint64_t instance_seed(std::uint64_t seed, std::size_t k) {
    SplitMix64 rng(seed);
    std::uint64_t out = rng.next();
    for (std::size_t i = 0; i < k; ++i) out = rng.next();
    return out;
}

IntervalRepresentation generate_one(int n, std::uint64_t seed) {
    if (n < 1) throw Error(ErrorCode::Empty, "instance size must be at least 1");
    std::vector<std::int64_t> seq(static_cast<std::size_t>(2 * n));
    std::iota(seq.begin(), seq.end(), 1);
    SplitMix64 rng(seed);
    for (std::size_t i = seq.size() - 1; i > 0; --i) {
        std::swap(seq[i], seq[static_cast<std::size_t>(rng.below(i + 1))]);
    }
    return from_sequence(seq);
}

std::vector<IntervalRepresentation> generate(const GeneratorConfig& config) {
    std::vector<IntervalRepresentation> out;
    out.reserve(config.count);
    for (std::size_t k = 0; k < config.count; ++k) out.push_back(generate_one(config.n, instance_seed(config.seed, k)));
    return out;
}

IntervalRepresentation from_sequence(std::span<const std::int64_t> sequence) {
    if (sequence.size() % 2 != 0) {
        throw Error(ErrorCode::ParseError, "endpoint sequence has odd length " + std::to_string(sequence.size()));
    }
    std::vector<std::pair<std::int64_t, std::int64_t>> raw;
    for (std::size_t k = 0; k + 1 < sequence.size(); k += 2) raw.emplace_back(sequence[k], sequence[k + 1]);
    return IntervalRepresentation::normalize(raw);
}

namespace {

// Tomita-style search with a greedy coloring bound.
class CliqueSearch {
public:
    explicit CliqueSearch(const CircleGraph& g) : g_(g) {}

    int run() {
        std::vector<int> order(static_cast<std::size_t>(g_.size()));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g_.degree(a) > g_.degree(b); });
        expand(order, 0);
        return best_;
    }

private:
    void expand(const std::vector<int>& cand, int size) {
        std::vector<int> verts;
        std::vector<int> bound;
        color_sort(cand, verts, bound);
        for (std::size_t k = verts.size(); k-- > 0;) {
            if (size + bound[k] <= best_) return;
            const int v = verts[k];
            std::vector<int> next;
            for (std::size_t t = 0; t < k; ++t) {
                if (g_.adjacent(v, verts[t])) next.push_back(verts[t]);
            }
            if (next.empty()) {
                best_ = std::max(best_, size + 1);
            } else {
                expand(next, size + 1);
            }
        }
    }

    void color_sort(const std::vector<int>& cand, std::vector<int>& verts, std::vector<int>& bound) const {
        std::vector<std::vector<int>> classes;
        for (int v : cand) {
            std::size_t c = 0;
            for (; c < classes.size(); ++c) {
                const auto& cls = classes[c];
                if (std::none_of(cls.begin(), cls.end(), [&](int u) { return g_.adjacent(u, v); })) break;
            }
            if (c == classes.size()) classes.emplace_back();
            classes[c].push_back(v);
        }
        for (std::size_t c = 0; c < classes.size(); ++c) {
            for (int v : classes[c]) {
                verts.push_back(v);
                bound.push_back(static_cast<int>(c) + 1);
            }
        }
    }

    const CircleGraph& g_;
    int best_ = 0;
};

std::string strip_comment(const std::string& line) {
    const auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

bool blank(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

} // namespace

int max_clique(const CircleGraph& graph) {
    if (graph.size() == 0) return 0;
    return CliqueSearch(graph).run();
}

IntervalRepresentation read_instance(std::istream& in) {
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& what) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": " + what);
    };
    auto next_line = [&](std::string& out) {
        while (std::getline(in, line)) {
            ++lineno;
            out = strip_comment(line);
            if (!blank(out)) return true;
        }
        return false;
    };

    std::string content;
    if (!next_line(content)) throw Error(ErrorCode::ParseError, "missing vertex count");
    long long n = 0;
    {
        std::istringstream ss(content);
        std::string extra;
        if (!(ss >> n) || (ss >> extra)) fail("expected a single vertex count");
    }
    if (n == 0) throw Error(ErrorCode::Empty, "instance has no intervals");
    if (n < 0) fail("vertex count must be positive");

    std::vector<std::pair<std::int64_t, std::int64_t>> raw;
    raw.reserve(static_cast<std::size_t>(n));
    while (static_cast<long long>(raw.size()) < n) {
        if (!next_line(content)) {
            throw Error(ErrorCode::ParseError,
                        "expected " + std::to_string(n) + " intervals, found " + std::to_string(raw.size()));
        }
        std::istringstream ss(content);
        std::int64_t l = 0;
        std::int64_t r = 0;
        std::string extra;
        if (!(ss >> l >> r) || (ss >> extra)) fail("expected two integer endpoints");
        raw.emplace_back(l, r);
    }
    if (next_line(content)) fail("unexpected content after the last interval");
    return IntervalRepresentation::normalize(raw);
}

IntervalRepresentation read_instance_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    return read_instance(in);
}

void write_instance(std::ostream& out, const IntervalRepresentation& rep) {
    out << rep.size() << '\n';
    for (const auto& iv : rep.intervals()) out << iv.left << ' ' << iv.right << '\n';
}

void write_dimacs(std::ostream& out, const CircleGraph& graph) {
    out << "p edge " << graph.size() << ' ' << graph.edge_count() << '\n';
    for (const Edge& e : graph.edges()) out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
}

void write_certificate(std::ostream& out, const Coloring& coloring, std::span<const int> parent) {
    for (std::size_t v = 0; v < coloring.colors.size(); ++v) {
        const int p = v < parent.size() ? parent[v] : kRoot;
        out << v + 1 << ' ' << coloring.colors[v] << ' ' << (p == kRoot ? 0 : p + 1) << '\n';
    }
}

void write_stack_plan(std::ostream& out, const StackPlan& plan) {
    for (const auto& stack : plan.stacks) {
        for (std::size_t k = 0; k < stack.size(); ++k) out << (k ? " " : "") << stack[k] + 1;
        out << '\n';
    }
}

namespace {

struct Sample {
    bool ok = false;
    std::size_t edges = 0;
    double seconds = 0.0;
    int omega = 0;
    int chi = 0;
    double chi_f = 0.0;
};

Sample run_sample(const IntervalRepresentation& rep, const SolveOptions& options) {
    Sample s;
    const CircleGraph graph = build_graph(rep);
    s.edges = graph.edge_count();
    try {
        const auto t0 = std::chrono::steady_clock::now();
        const SolveReport report = solve_chromatic(rep, options);
        s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        s.chi = report.chromatic_number;
        s.chi_f = report.fractional_chromatic;
        s.omega = max_clique(graph);
        s.ok = true;
    } catch (const Error&) {
        s.ok = false;
    }
    return s;
}

} // namespace

std::vector<ExperimentRow> run_experiment(std::span<const int> n_values, std::size_t samples, std::uint64_t seed,
                                          const ExperimentOptions& options) {
    std::vector<ExperimentRow> rows;
    for (int n : n_values) {
        const auto instances = generate({n, seed, samples});
        std::vector<Sample> results(instances.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t k = next++; k < instances.size(); k = next++) {
                results[k] = run_sample(instances[k], options.solve);
            }
        };
        const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(samples)));
        if (threads == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }

        ExperimentRow row;
        row.n = n;
        row.samples = samples;
        std::size_t good = 0;
        for (const Sample& s : results) {
            if (!s.ok) {
                ++row.failures;
                continue;
            }
            ++good;
            row.mean_edges += static_cast<double>(s.edges);
            row.mean_solve_time += s.seconds;
            if (s.omega == s.chi) ++row.count_omega_eq_chi;
            if (std::abs(s.chi - s.chi_f) <= 1e-6) ++row.count_chi_f_eq_chi;
            row.max_chi_minus_chi_f = std::max(row.max_chi_minus_chi_f, s.chi - s.chi_f);
        }
        if (good > 0) {
            row.mean_edges /= static_cast<double>(good);
            row.mean_solve_time /= static_cast<double>(good);
        }
        rows.push_back(row);
    }
    return rows;
}

void write_experiment_csv(std::ostream& out, std::span<const ExperimentRow> rows, bool with_time) {
    out << "|V|,|E|,Ours,# ω = χ,# χ_f = χ,max. χ − χ_f\n";
    auto fixed = [](double v, int digits) {
        std::ostringstream ss;
        ss.setf(std::ios::fixed);
        ss.precision(digits);
        ss << (std::abs(v) < 0.5 * std::pow(10.0, -digits) ? 0.0 : v);
        return ss.str();
    };
    for (const auto& r : rows) {
        out << r.n << ',' << fixed(r.mean_edges, 2) << ',' << (with_time ? fixed(r.mean_solve_time, 3) : "-") << ','
            << r.count_omega_eq_chi << ',' << r.count_chi_f_eq_chi << ',' << fixed(r.max_chi_minus_chi_f, 1) << '\n';
    }
}

} // namespace circol
