#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "apsel/common.hpp"
#include "apsel/optim.hpp"

namespace apsel::eaf {

struct BudgetGrid {
    std::vector<std::int64_t> budgets;  // strictly increasing, equally spaced, last = total

    static BudgetGrid equally_spaced(std::int64_t total_budget, int count);

    std::int64_t total() const { return budgets.back(); }
    std::int64_t spacing() const { return budgets[0]; }
    std::size_t size() const { return budgets.size(); }

    // Row index of a budget that must be a grid member.
    std::size_t index_of(std::int64_t budget) const;
};

struct TargetGrid {
    std::vector<double> thresholds;  // positive, descending: loosest target first

    // 51 log-spaced thresholds from 1e2 down to 1e-8.
    static TargetGrid log_default();
    static TargetGrid log_spaced(double log10_max, double log10_min, int count);

    std::size_t size() const { return thresholds.size(); }
};

struct EafMatrix {
    int function_id = 0;
    int algorithm_id = 0;
    int n_runs = 0;
    std::size_t n_budgets = 0;
    std::size_t n_targets = 0;
    std::vector<double> values;  // row-major [budget][target], entries in [0,1]

    double at(std::size_t bi, std::size_t ti) const { return values[bi * n_targets + ti]; }
    double& at(std::size_t bi, std::size_t ti) { return values[bi * n_targets + ti]; }
};

// values[b][eps] = #(runs with best_so_far[b] <= eps) / n_runs.
EafMatrix compute_eaf(std::span<const optim::RunTrajectory> trajectories, const BudgetGrid& budgets,
                      const TargetGrid& targets);

// In-memory EAF lookup shared by the portfolio machinery. The read hook, when
// set, observes every (function, algorithm) access; used by the leakage audit.
class EafTable {
  public:
    EafTable(BudgetGrid budgets, TargetGrid targets)
        : budgets_(std::move(budgets)), targets_(std::move(targets)) {}

    const BudgetGrid& budgets() const { return budgets_; }
    const TargetGrid& targets() const { return targets_; }

    void put(EafMatrix m);
    bool has(int function_id, int algorithm_id) const;
    const EafMatrix& get(int function_id, int algorithm_id) const;

    std::vector<std::pair<int, int>> keys() const;

    void set_read_hook(std::function<void(int, int)> hook) { read_hook_ = std::move(hook); }

  private:
    BudgetGrid budgets_;
    TargetGrid targets_;
    std::map<std::pair<int, int>, EafMatrix> matrices_;
    std::function<void(int, int)> read_hook_;
};

}  // namespace apsel::eaf
