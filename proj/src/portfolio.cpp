#include "apsel/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace apsel::portfolio {

std::vector<double> normalize_weights(std::span<const double> weights) {
    if (weights.empty()) throw UsageError("normalize_weights: empty weight vector");
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0 || !std::isfinite(w)) throw UsageError("normalize_weights: weights must be finite and nonnegative");
        sum += w;
    }
    if (sum <= 0.0) throw UsageError("normalize_weights: weights sum to zero");
    std::vector<double> out(weights.begin(), weights.end());
    for (double& w : out) w /= sum;
    return out;
}

double perf(std::span<const int> function_ids, const Portfolio& pf,
            std::span<const double> weights, const eaf::EafTable& table) {
    if (function_ids.size() != weights.size())
        throw UsageError("perf: function list and weight vector differ in length");
    if (pf.empty()) return 0.0;
    const auto w = normalize_weights(weights);
    const std::size_t ne = table.targets().size();

    double total = 0.0;
    std::vector<double> miss(ne);
    for (std::size_t i = 0; i < function_ids.size(); ++i) {
        miss.assign(ne, 1.0);
        for (const auto& pair : pf.pairs) {
            const auto& m = table.get(function_ids[i], pair.algorithm_id);
            const std::size_t bi = table.budgets().index_of(pair.budget);
            for (std::size_t ti = 0; ti < ne; ++ti) miss[ti] *= 1.0 - m.at(bi, ti);
        }
        double fn_sum = 0.0;
        for (std::size_t ti = 0; ti < ne; ++ti) fn_sum += 1.0 - miss[ti];
        total += w[i] * (fn_sum / double(ne));
    }
    return total;
}

double score(std::span<const int> function_ids, const Portfolio& current,
             const PortfolioPair& candidate, std::span<const double> weights,
             std::int64_t total_budget, double penalty_coeff, const eaf::EafTable& table) {
    Portfolio extended = current;
    extended.pairs.push_back(candidate);
    const double ratio = double(candidate.budget) / double(total_budget);
    return perf(function_ids, extended, weights, table) - penalty_coeff * ratio * ratio;
}

Portfolio greedy_build(std::span<const int> function_ids, std::span<const double> weights,
                       std::int64_t total_budget, const eaf::BudgetGrid& budgets,
                       std::span<const int> algorithm_ids, double penalty_coeff,
                       const eaf::EafTable& table) {
    if (algorithm_ids.empty()) throw UsageError("greedy_build: empty algorithm set");
    if (total_budget < 1 || total_budget % budgets.spacing() != 0)
        throw ConfigError("greedy_build: total budget must be a positive multiple of the grid spacing");
    const auto w = normalize_weights(weights);

    std::vector<int> algs(algorithm_ids.begin(), algorithm_ids.end());
    std::sort(algs.begin(), algs.end());

    const std::size_t nf = function_ids.size();
    const std::size_t ne = table.targets().size();

    // miss[i][t]: product of (1 - af) over the pairs accepted so far, kept in
    // acceptance order so candidate scores match a from-scratch perf bit for bit.
    std::vector<std::vector<double>> miss(nf, std::vector<double>(ne, 1.0));

    Portfolio result;
    std::int64_t remaining = total_budget;
    const std::int64_t min_budget = budgets.budgets.front();

    while (remaining >= min_budget) {
        bool found = false;
        double best_score = 0.0;
        PortfolioPair best_pair;

        for (std::int64_t b : budgets.budgets) {
            if (b > remaining) break;
            const double ratio = double(b) / double(total_budget);
            const double penalty = penalty_coeff * ratio * ratio;
            const std::size_t bi = table.budgets().index_of(b);
            for (int alg : algs) {
                double perf_ext = 0.0;
                for (std::size_t i = 0; i < nf; ++i) {
                    const auto& m = table.get(function_ids[i], alg);
                    double fn_sum = 0.0;
                    for (std::size_t ti = 0; ti < ne; ++ti)
                        fn_sum += 1.0 - miss[i][ti] * (1.0 - m.at(bi, ti));
                    perf_ext += w[i] * (fn_sum / double(ne));
                }
                const double s = perf_ext - penalty;
                // candidates scanned in tie-rule order (budget asc, alg asc),
                // so strict improvement implements the documented tie break
                if (!found || s > best_score) {
                    found = true;
                    best_score = s;
                    best_pair = {alg, b};
                }
            }
        }
        if (!found) break;

        result.pairs.push_back(best_pair);
        remaining -= best_pair.budget;
        const std::size_t bi = table.budgets().index_of(best_pair.budget);
        for (std::size_t i = 0; i < nf; ++i) {
            const auto& m = table.get(function_ids[i], best_pair.algorithm_id);
            for (std::size_t ti = 0; ti < ne; ++ti) miss[i][ti] *= 1.0 - m.at(bi, ti);
        }
    }
    return result;
}

}  // namespace apsel::portfolio
