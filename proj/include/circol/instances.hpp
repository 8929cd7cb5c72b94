#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "circol/bnb.hpp"
#include "circol/core.hpp"

namespace circol {

// SplitMix64 (Steele, Lea, Flood 2014). Seed 1234567 yields
// 6457827717110365317, 3203168211198807973, 9817491932198370423, ...
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, bound) by rejection; bound > 0.
    std::uint64_t below(std::uint64_t bound) noexcept;

private:
    std::uint64_t state_;
};

// Seed of the k-th instance in a run: the (k+1)-th output of SplitMix64(seed).
std::uint64_t instance_seed(std::uint64_t seed, std::size_t k);

struct GeneratorConfig {
    int n = 1;
    std::uint64_t seed = 0;
    std::size_t count = 1;
};

// Shuffles 1..2n and pairs consecutive numbers into intervals.
IntervalRepresentation generate_one(int n, std::uint64_t seed);
// Instance k is generate_one(n, instance_seed(seed, k)).
std::vector<IntervalRepresentation> generate(const GeneratorConfig& config);
// Consecutive pairs of a shuffled endpoint sequence.
IntervalRepresentation from_sequence(std::span<const std::int64_t> sequence);

// Exact clique number.
int max_clique(const CircleGraph& graph);

// Instance text: "n" then n lines "l r"; '#' starts a comment line.
// Malformed input throws Error{ParseError}, unreadable files Error{IoError}.
IntervalRepresentation read_instance(std::istream& in);
IntervalRepresentation read_instance_file(const std::filesystem::path& path);
void write_instance(std::ostream& out, const IntervalRepresentation& rep);

void write_dimacs(std::ostream& out, const CircleGraph& graph);
// "vertex color parent" per line, 1-based, parent 0 for the root.
void write_certificate(std::ostream& out, const Coloring& coloring, std::span<const int> parent);
// One line per stack, 1-based vertices bottom-to-top.
void write_stack_plan(std::ostream& out, const StackPlan& plan);

struct ExperimentRow {
    int n = 0;
    std::size_t samples = 0;
    double mean_edges = 0.0;
    double mean_solve_time = 0.0; // seconds
    std::size_t count_omega_eq_chi = 0;
    std::size_t count_chi_f_eq_chi = 0;
    double max_chi_minus_chi_f = 0.0;
    std::size_t failures = 0; // solver errors; excluded from the means
};

struct ExperimentOptions {
    SolveOptions solve;
    unsigned threads = 1;
};

// Instances for each n come from generate({n, seed, samples}); results are
// merged in index order whatever the thread count.
std::vector<ExperimentRow> run_experiment(std::span<const int> n_values, std::size_t samples, std::uint64_t seed,
                                          const ExperimentOptions& options = {});

// Experiment table columns; the time column is printed as "-" when with_time is false.
void write_experiment_csv(std::ostream& out, std::span<const ExperimentRow> rows, bool with_time = true);

} // namespace circol
