#pragma once

#include <array>
#include <span>
#include <vector>

#include "apsel/portfolio.hpp"
#include "apsel/similarity.hpp"

namespace apsel::selector {

enum class Chosen : int { local = 0, global = 1 };
// Quadrant letters: local-comparison winner then target-comparison winner
// (L = the kNN portfolio, G = the global SBP*). Ties count as G.
enum class Quadrant : int { LL = 0, LG = 1, GL = 2, GG = 3 };

const char* chosen_name(Chosen c);
const char* quadrant_name(Quadrant q);

struct SelectionOutcome {
    int target_function_id = 0;
    similarity::Neighborhood neighborhood;
    portfolio::Portfolio ksbp_star;
    portfolio::Portfolio sbp_star;
    double local_perf_ksbp = 0.0;
    double local_perf_sbp = 0.0;
    Chosen chosen = Chosen::global;
    bool has_diagnostics = false;
    double final_perf_ksbp = 0.0;
    double final_perf_sbp = 0.0;
    Quadrant quadrant = Quadrant::GG;
};

// Greedy build restricted to the neighborhood, weighted by the scheme.
portfolio::Portfolio build_ksbp_star(const similarity::Neighborhood& nb,
                                     similarity::WeightScheme scheme, const eaf::EafTable& table,
                                     std::int64_t total_budget, const eaf::BudgetGrid& budgets,
                                     std::span<const int> algorithm_ids, double penalty_coeff);

// Selection phase only: compares both portfolios on the weighted neighborhood.
// Never touches the target function's EAF data.
SelectionOutcome select_portfolio(int target_function_id, const portfolio::Portfolio& ksbp_star,
                                  const portfolio::Portfolio& sbp_star,
                                  const similarity::Neighborhood& nb,
                                  similarity::WeightScheme scheme, const eaf::EafTable& table);

// Diagnostic phase: evaluates both portfolios on the target (unit weight) and
// fills the quadrant. Reporting only; requires target EAF data.
void attach_diagnostics(SelectionOutcome& outcome, const eaf::EafTable& table);

// select_portfolio followed by attach_diagnostics.
SelectionOutcome select_final(int target_function_id, const portfolio::Portfolio& ksbp_star,
                              const portfolio::Portfolio& sbp_star,
                              const similarity::Neighborhood& nb, similarity::WeightScheme scheme,
                              const eaf::EafTable& table);

// Fractions of LL, LG, GL, GG over the outcomes; sums to 1.
std::array<double, 4> quadrant_summary(std::span<const SelectionOutcome> outcomes);

}  // namespace apsel::selector
