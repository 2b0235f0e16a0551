#include "apsel/eaf.hpp"

#include <cmath>
#include <string>

namespace apsel::eaf {

BudgetGrid BudgetGrid::equally_spaced(std::int64_t total_budget, int count) {
    if (count < 2) throw ConfigError("BudgetGrid: need at least 2 budgets");
    if (total_budget < count || total_budget % count != 0)
        throw ConfigError("BudgetGrid: total budget must be a positive multiple of count");
    BudgetGrid g;
    const std::int64_t step = total_budget / count;
    g.budgets.reserve(static_cast<std::size_t>(count));
    for (int i = 1; i <= count; ++i) g.budgets.push_back(step * i);
    return g;
}

std::size_t BudgetGrid::index_of(std::int64_t budget) const {
    const std::int64_t step = spacing();
    if (budget < step || budget > total() || budget % step != 0)
        throw UsageError("BudgetGrid: budget " + std::to_string(budget) + " is not a grid member");
    return static_cast<std::size_t>(budget / step) - 1;
}

TargetGrid TargetGrid::log_default() { return log_spaced(2.0, -8.0, 51); }

TargetGrid TargetGrid::log_spaced(double log10_max, double log10_min, int count) {
    if (count < 2) throw ConfigError("TargetGrid: need at least 2 thresholds");
    if (!(log10_max > log10_min)) throw ConfigError("TargetGrid: max must exceed min");
    TargetGrid g;
    g.thresholds.reserve(static_cast<std::size_t>(count));
    const double step = (log10_max - log10_min) / double(count - 1);
    for (int i = 0; i < count; ++i) g.thresholds.push_back(std::pow(10.0, log10_max - step * i));
    return g;
}

EafMatrix compute_eaf(std::span<const optim::RunTrajectory> trajectories, const BudgetGrid& budgets,
                      const TargetGrid& targets) {
    if (trajectories.empty()) throw UsageError("compute_eaf: empty trajectory set");
    const std::size_t need = static_cast<std::size_t>(budgets.total());
    for (const auto& t : trajectories)
        if (t.best_so_far.size() < need)
            throw DataError("compute_eaf: trajectory shorter than max budget (function " +
                            std::to_string(t.function_id) + ", algorithm " +
                            std::to_string(t.algorithm_id) + ")");

    EafMatrix m;
    m.function_id = trajectories.front().function_id;
    m.algorithm_id = trajectories.front().algorithm_id;
    m.n_runs = static_cast<int>(trajectories.size());
    m.n_budgets = budgets.size();
    m.n_targets = targets.size();
    m.values.assign(m.n_budgets * m.n_targets, 0.0);

    for (std::size_t bi = 0; bi < m.n_budgets; ++bi) {
        // best_so_far is 1-indexed by evaluation count
        const std::size_t pos = static_cast<std::size_t>(budgets.budgets[bi]) - 1;
        for (const auto& t : trajectories) {
            const double gap = t.best_so_far[pos];
            for (std::size_t ti = 0; ti < m.n_targets; ++ti)
                if (gap <= targets.thresholds[ti]) m.at(bi, ti) += 1.0;
        }
        for (std::size_t ti = 0; ti < m.n_targets; ++ti) m.at(bi, ti) /= double(m.n_runs);
    }
    return m;
}

void EafTable::put(EafMatrix m) {
    if (m.n_budgets != budgets_.size() || m.n_targets != targets_.size())
        throw UsageError("EafTable::put: matrix shape does not match grids");
    matrices_[{m.function_id, m.algorithm_id}] = std::move(m);
}

bool EafTable::has(int function_id, int algorithm_id) const {
    return matrices_.count({function_id, algorithm_id}) > 0;
}

const EafMatrix& EafTable::get(int function_id, int algorithm_id) const {
    if (read_hook_) read_hook_(function_id, algorithm_id);
    auto it = matrices_.find({function_id, algorithm_id});
    if (it == matrices_.end())
        throw DataError("EafTable: no EAF matrix for function " + std::to_string(function_id) +
                        ", algorithm " + std::to_string(algorithm_id) +
                        " (did the run stage complete?)");
    return it->second;
}

std::vector<std::pair<int, int>> EafTable::keys() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(matrices_.size());
    for (const auto& [k, v] : matrices_) out.push_back(k);
    return out;
}

}  // namespace apsel::eaf
