#include "apsel/selector.hpp"

namespace apsel::selector {

const char* chosen_name(Chosen c) { return c == Chosen::local ? "local" : "global"; }

const char* quadrant_name(Quadrant q) {
    switch (q) {
        case Quadrant::LL: return "LL";
        case Quadrant::LG: return "LG";
        case Quadrant::GL: return "GL";
        case Quadrant::GG: return "GG";
    }
    return "??";
}

portfolio::Portfolio build_ksbp_star(const similarity::Neighborhood& nb,
                                     similarity::WeightScheme scheme, const eaf::EafTable& table,
                                     std::int64_t total_budget, const eaf::BudgetGrid& budgets,
                                     std::span<const int> algorithm_ids, double penalty_coeff) {
    const auto weights = similarity::scheme_weights(scheme, nb);
    return portfolio::greedy_build(nb.neighbor_ids, weights, total_budget, budgets, algorithm_ids,
                                   penalty_coeff, table);
}

SelectionOutcome select_portfolio(int target_function_id, const portfolio::Portfolio& ksbp_star,
                                  const portfolio::Portfolio& sbp_star,
                                  const similarity::Neighborhood& nb,
                                  similarity::WeightScheme scheme, const eaf::EafTable& table) {
    SelectionOutcome out;
    out.target_function_id = target_function_id;
    out.neighborhood = nb;
    out.ksbp_star = ksbp_star;
    out.sbp_star = sbp_star;
    const auto weights = similarity::scheme_weights(scheme, nb);
    out.local_perf_ksbp = portfolio::perf(nb.neighbor_ids, ksbp_star, weights, table);
    out.local_perf_sbp = portfolio::perf(nb.neighbor_ids, sbp_star, weights, table);
    // ties go to the global portfolio
    out.chosen = out.local_perf_ksbp > out.local_perf_sbp ? Chosen::local : Chosen::global;
    return out;
}

void attach_diagnostics(SelectionOutcome& outcome, const eaf::EafTable& table) {
    const int fid[] = {outcome.target_function_id};
    const double w[] = {1.0};
    outcome.final_perf_ksbp = portfolio::perf(fid, outcome.ksbp_star, w, table);
    outcome.final_perf_sbp = portfolio::perf(fid, outcome.sbp_star, w, table);
    const bool local_won = outcome.chosen == Chosen::local;
    const bool final_local = outcome.final_perf_ksbp > outcome.final_perf_sbp;
    outcome.quadrant = local_won ? (final_local ? Quadrant::LL : Quadrant::LG)
                                 : (final_local ? Quadrant::GL : Quadrant::GG);
    outcome.has_diagnostics = true;
}

SelectionOutcome select_final(int target_function_id, const portfolio::Portfolio& ksbp_star,
                              const portfolio::Portfolio& sbp_star,
                              const similarity::Neighborhood& nb, similarity::WeightScheme scheme,
                              const eaf::EafTable& table) {
    SelectionOutcome out =
        select_portfolio(target_function_id, ksbp_star, sbp_star, nb, scheme, table);
    attach_diagnostics(out, table);
    return out;
}

std::array<double, 4> quadrant_summary(std::span<const SelectionOutcome> outcomes) {
    if (outcomes.empty()) throw UsageError("quadrant_summary: no outcomes");
    std::array<double, 4> counts{0.0, 0.0, 0.0, 0.0};
    for (const auto& o : outcomes) counts[static_cast<std::size_t>(o.quadrant)] += 1.0;
    for (double& c : counts) c /= double(outcomes.size());
    return counts;
}

}  // namespace apsel::selector
