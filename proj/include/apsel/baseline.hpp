#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "apsel/portfolio.hpp"

namespace apsel::baseline {

// Full-budget singleton portfolio for one algorithm.
portfolio::Portfolio singleton(int algorithm_id, std::int64_t total_budget);

// perf of {(alg, T)} on a single function.
double singleton_perf(int function_id, int algorithm_id, std::int64_t total_budget,
                      const eaf::EafTable& table);

// Algorithm with the best mean singleton perf over the training set; ties go
// to the lowest algorithm id.
int single_best_solver(std::span<const int> train_function_ids, const eaf::EafTable& table,
                       std::int64_t total_budget, std::span<const int> algorithm_ids);

// Per-function best singleton algorithm, same tie rule.
std::map<int, int> virtual_best_solver(std::span<const int> function_ids,
                                       const eaf::EafTable& table, std::int64_t total_budget,
                                       std::span<const int> algorithm_ids);

struct SbpStarResult {
    portfolio::Portfolio best;
    double best_train_perf = 0.0;
    int best_sample_index = 0;
    std::vector<double> candidate_train_perfs;
};

// Resampled single-best-portfolio approximation: n_samples subsets of size
// subset_size, greedy build on each with uniform weights, winner by full-train
// perf (first sampled wins ties).
SbpStarResult sbp_star(std::span<const int> train_function_ids, const eaf::EafTable& table,
                       std::int64_t total_budget, const eaf::BudgetGrid& budgets,
                       std::span<const int> algorithm_ids, int n_samples, int subset_size,
                       std::uint64_t seed, double penalty_coeff);

struct VbpChoice {
    std::size_t pool_index = 0;
    double perf = 0.0;
};

// Per-function argmax over an explicit candidate pool; first pool entry wins ties.
std::map<int, VbpChoice> virtual_best_portfolio(
    std::span<const int> function_ids, const eaf::EafTable& table,
    const std::map<int, std::vector<portfolio::Portfolio>>& pools);

}  // namespace apsel::baseline
