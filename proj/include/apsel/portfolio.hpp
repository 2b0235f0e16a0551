#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "apsel/common.hpp"
#include "apsel/eaf.hpp"

namespace apsel::portfolio {

struct PortfolioPair {
    int algorithm_id = 0;
    std::int64_t budget = 0;

    friend bool operator==(const PortfolioPair&, const PortfolioPair&) = default;
};

// Multiset of algorithm-budget pairs; identical pairs may repeat. Stored in
// insertion order, which the perf product follows.
struct Portfolio {
    std::vector<PortfolioPair> pairs;

    std::int64_t total_budget() const {
        std::int64_t t = 0;
        for (const auto& p : pairs) t += p.budget;
        return t;
    }
    bool empty() const { return pairs.empty(); }

    friend bool operator==(const Portfolio&, const Portfolio&) = default;
};

// Normalizes to sum 1; rejects negative entries and zero-sum vectors.
std::vector<double> normalize_weights(std::span<const double> weights);

// perf(F, MS, w) = sum_i w_i * (1/|E|) * sum_eps (1 - prod_{(a,b) in MS} (1 - af_{f_i,a}(b,eps)))
// with w normalized to sum 1. Empty portfolio evaluates to 0.
double perf(std::span<const int> function_ids, const Portfolio& pf,
            std::span<const double> weights, const eaf::EafTable& table);

// Greedy objective for extending `current` by `candidate`.
double score(std::span<const int> function_ids, const Portfolio& current,
             const PortfolioPair& candidate, std::span<const double> weights,
             std::int64_t total_budget, double penalty_coeff, const eaf::EafTable& table);

// Iteratively appends the score-maximizing pair until the remaining budget
// cannot fit the smallest grid budget. Ties break toward the smaller budget,
// then the lower algorithm id.
Portfolio greedy_build(std::span<const int> function_ids, std::span<const double> weights,
                       std::int64_t total_budget, const eaf::BudgetGrid& budgets,
                       std::span<const int> algorithm_ids, double penalty_coeff,
                       const eaf::EafTable& table);

}  // namespace apsel::portfolio
