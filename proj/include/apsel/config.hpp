#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "apsel/common.hpp"

namespace apsel::cli {

// Pipeline configuration. Desk-scale defaults keep a full run in the minutes
// range; --paper-scale switches to the full-size experiment layout.
struct Config {
    std::uint64_t master_seed = 1;
    std::vector<int> dimensions = {2};
    std::vector<int> allowed_dimensions = {2, 5, 10};
    int n_functions = 80;
    double train_fraction = 0.75;
    std::int64_t budget_per_dimension = 200;  // T = budget_per_dimension * d
    int n_runs = 10;
    int budget_grid_count = 50;
    int target_grid_count = 51;
    double target_log10_max = 2.0;
    double target_log10_min = -8.0;
    std::vector<int> k_values = {1, 2, 3, 5, 7, 10};
    int k_default = 10;
    std::vector<std::string> weight_schemes = {"eq", "soft", "diff", "log"};
    std::string default_scheme = "eq";
    int sbp_samples = 50;
    int sbp_subset_size = 10;
    double penalty_coeff = 0.1;
    int ela_samples_per_dimension = 50;
    int workers = 0;  // 0 = hardware concurrency
    std::string store_path = "apsel_store";

    std::int64_t total_budget(int dimension) const { return budget_per_dimension * dimension; }

    void apply_paper_scale();
    void validate() const;

    // Canonical JSON (sorted keys, fixed field set) and its hash; the hash is
    // what manifests record to refuse mismatched reuse. store_path and workers
    // do not affect results and stay out of the hash.
    std::string canonical_json() const;
    std::string hash() const;

    static Config from_json_text(const std::string& text);
    static Config load(const std::string& path);
    std::string to_json_text() const;
};

}  // namespace apsel::cli
