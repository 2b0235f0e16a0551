#include "apsel/baseline.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace apsel::baseline {

portfolio::Portfolio singleton(int algorithm_id, std::int64_t total_budget) {
    portfolio::Portfolio p;
    p.pairs.push_back({algorithm_id, total_budget});
    return p;
}

double singleton_perf(int function_id, int algorithm_id, std::int64_t total_budget,
                      const eaf::EafTable& table) {
    const int fid[] = {function_id};
    const double w[] = {1.0};
    return portfolio::perf(fid, singleton(algorithm_id, total_budget), w, table);
}

int single_best_solver(std::span<const int> train_function_ids, const eaf::EafTable& table,
                       std::int64_t total_budget, std::span<const int> algorithm_ids) {
    if (train_function_ids.empty()) throw UsageError("single_best_solver: empty function set");
    if (algorithm_ids.empty()) throw UsageError("single_best_solver: empty algorithm set");
    std::vector<int> algs(algorithm_ids.begin(), algorithm_ids.end());
    std::sort(algs.begin(), algs.end());

    int best_alg = algs.front();
    double best_mean = -1.0;
    for (int alg : algs) {
        double sum = 0.0;
        for (int fid : train_function_ids) sum += singleton_perf(fid, alg, total_budget, table);
        const double mean = sum / double(train_function_ids.size());
        if (mean > best_mean) {
            best_mean = mean;
            best_alg = alg;
        }
    }
    return best_alg;
}

std::map<int, int> virtual_best_solver(std::span<const int> function_ids,
                                       const eaf::EafTable& table, std::int64_t total_budget,
                                       std::span<const int> algorithm_ids) {
    if (algorithm_ids.empty()) throw UsageError("virtual_best_solver: empty algorithm set");
    std::vector<int> algs(algorithm_ids.begin(), algorithm_ids.end());
    std::sort(algs.begin(), algs.end());

    std::map<int, int> out;
    for (int fid : function_ids) {
        int best_alg = algs.front();
        double best = -1.0;
        for (int alg : algs) {
            const double p = singleton_perf(fid, alg, total_budget, table);
            if (p > best) {
                best = p;
                best_alg = alg;
            }
        }
        out[fid] = best_alg;
    }
    return out;
}

SbpStarResult sbp_star(std::span<const int> train_function_ids, const eaf::EafTable& table,
                       std::int64_t total_budget, const eaf::BudgetGrid& budgets,
                       std::span<const int> algorithm_ids, int n_samples, int subset_size,
                       std::uint64_t seed, double penalty_coeff) {
    if (n_samples < 1) throw ConfigError("sbp_star: n_samples must be >= 1");
    if (subset_size < 1 || static_cast<std::size_t>(subset_size) > train_function_ids.size())
        throw ConfigError("sbp_star: subset size " + std::to_string(subset_size) +
                          " exceeds training set of " + std::to_string(train_function_ids.size()));

    const std::vector<int> train(train_function_ids.begin(), train_function_ids.end());
    const std::vector<double> full_w(train.size(), 1.0);

    Rng rng(seed_mix({seed, seed_tag::sbp}));
    SbpStarResult result;
    result.candidate_train_perfs.reserve(static_cast<std::size_t>(n_samples));
    for (int s = 0; s < n_samples; ++s) {
        auto subset = rng.sample_without_replacement(train, static_cast<std::size_t>(subset_size));
        std::sort(subset.begin(), subset.end());
        const std::vector<double> sub_w(subset.size(), 1.0);
        auto candidate = portfolio::greedy_build(subset, sub_w, total_budget, budgets,
                                                 algorithm_ids, penalty_coeff, table);
        const double train_perf = portfolio::perf(train, candidate, full_w, table);
        result.candidate_train_perfs.push_back(train_perf);
        if (s == 0 || train_perf > result.best_train_perf) {
            result.best = std::move(candidate);
            result.best_train_perf = train_perf;
            result.best_sample_index = s;
        }
    }
    return result;
}

std::map<int, VbpChoice> virtual_best_portfolio(
    std::span<const int> function_ids, const eaf::EafTable& table,
    const std::map<int, std::vector<portfolio::Portfolio>>& pools) {
    std::map<int, VbpChoice> out;
    for (int fid : function_ids) {
        auto it = pools.find(fid);
        if (it == pools.end() || it->second.empty())
            throw UsageError("virtual_best_portfolio: empty candidate pool for function " +
                             std::to_string(fid));
        const int fids[] = {fid};
        const double w[] = {1.0};
        VbpChoice choice;
        for (std::size_t c = 0; c < it->second.size(); ++c) {
            const double p = portfolio::perf(fids, it->second[c], w, table);
            if (c == 0 || p > choice.perf) {
                choice.pool_index = c;
                choice.perf = p;
            }
        }
        out[fid] = choice;
    }
    return out;
}

}  // namespace apsel::baseline
