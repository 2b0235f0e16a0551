#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "apsel/common.hpp"
#include "apsel/suite.hpp"

namespace apsel::optim {

enum class AlgorithmId : int {
    es11 = 0,         // (1+1)-ES with 1/5th-success step control
    diag_es = 1,      // (mu, lambda)-ES with per-coordinate self-adaptation
    de = 2,           // rand/1/bin differential evolution
    nelder_mead = 3,  // restarting downhill simplex
};
inline constexpr int kNumAlgorithms = 4;

const char* algorithm_name(AlgorithmId id);
AlgorithmId algorithm_from_name(const std::string& name);
std::vector<AlgorithmId> all_algorithms();

struct RunTrajectory {
    int function_id = 0;
    int algorithm_id = 0;
    int run_index = 0;
    std::uint64_t seed = 0;
    std::vector<double> best_so_far;  // nonincreasing, entry i = best after i+1 evals
};

// Consumes exactly `budget` evaluations of f; deterministic in (algorithm, f, budget, seed).
RunTrajectory run(AlgorithmId algorithm, const suite::GeneratedFunction& f, std::int64_t budget,
                  std::uint64_t seed);

// n_runs independent trajectories per (algorithm, function); seeds derived as
// seed_mix(base_seed, function_id, algorithm_id, run_index). Output sorted by
// (function_id, algorithm_id, run_index) regardless of worker count.
std::vector<RunTrajectory> run_batch(std::span<const AlgorithmId> algorithms,
                                     std::span<const suite::GeneratedFunction> functions,
                                     std::int64_t budget, int n_runs, std::uint64_t base_seed,
                                     int workers = 0);

std::uint64_t derive_run_seed(std::uint64_t base_seed, int function_id, int algorithm_id,
                              int run_index);

}  // namespace apsel::optim
