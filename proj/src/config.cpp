#include "apsel/config.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "apsel/similarity.hpp"
#include "apsel/store.hpp"

namespace apsel::cli {

using nlohmann::json;

void Config::apply_paper_scale() {
    dimensions = {2, 5, 10};
    n_functions = 1000;
    train_fraction = 0.9;
    budget_per_dimension = 2000;
}

void Config::validate() const {
    for (int d : dimensions)
        if (std::find(allowed_dimensions.begin(), allowed_dimensions.end(), d) ==
            allowed_dimensions.end())
            throw ConfigError("dimension " + std::to_string(d) +
                              " is not in the configured dimension list");
    if (dimensions.empty()) throw ConfigError("no dimensions configured");
    if (n_functions < 2) throw ConfigError("n_functions must be >= 2");
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw ConfigError("train_fraction must be in (0, 1)");
    if (n_runs < 1) throw ConfigError("n_runs must be >= 1");
    if (budget_grid_count < 2) throw ConfigError("budget_grid_count must be >= 2");
    if (target_grid_count < 2) throw ConfigError("target_grid_count must be >= 2");
    if (!(target_log10_max > target_log10_min))
        throw ConfigError("target_log10_max must exceed target_log10_min");
    for (int d : dimensions)
        if (total_budget(d) % budget_grid_count != 0)
            throw ConfigError("total budget " + std::to_string(total_budget(d)) +
                              " must be a multiple of budget_grid_count");
    const int n_train = static_cast<int>(n_functions * train_fraction);
    if (sbp_subset_size < 1 || sbp_subset_size > n_train)
        throw ConfigError("sbp_subset_size must fit inside the training set");
    if (sbp_samples < 1) throw ConfigError("sbp_samples must be >= 1");
    if (k_values.empty()) throw ConfigError("k_values must be nonempty");
    for (int k : k_values)
        if (k < 1 || k >= n_train)
            throw ConfigError("k = " + std::to_string(k) + " out of range for " +
                              std::to_string(n_train) + " training functions");
    if (std::find(k_values.begin(), k_values.end(), k_default) == k_values.end())
        throw ConfigError("k_default must be one of k_values");
    for (const auto& s : weight_schemes) similarity::weight_scheme_from_name(s);
    similarity::weight_scheme_from_name(default_scheme);
    if (std::find(weight_schemes.begin(), weight_schemes.end(), default_scheme) ==
        weight_schemes.end())
        throw ConfigError("default_scheme must be one of weight_schemes");
    if (penalty_coeff < 0.0) throw ConfigError("penalty_coeff must be nonnegative");
    if (ela_samples_per_dimension < 10)
        throw ConfigError("ela_samples_per_dimension must be >= 10");
}

namespace {

json config_to_json(const Config& c, bool include_local) {
    json j{{"master_seed", c.master_seed},
           {"dimensions", c.dimensions},
           {"allowed_dimensions", c.allowed_dimensions},
           {"n_functions", c.n_functions},
           {"train_fraction", c.train_fraction},
           {"budget_per_dimension", c.budget_per_dimension},
           {"n_runs", c.n_runs},
           {"budget_grid_count", c.budget_grid_count},
           {"target_grid_count", c.target_grid_count},
           {"target_log10_max", c.target_log10_max},
           {"target_log10_min", c.target_log10_min},
           {"k_values", c.k_values},
           {"k_default", c.k_default},
           {"weight_schemes", c.weight_schemes},
           {"default_scheme", c.default_scheme},
           {"sbp_samples", c.sbp_samples},
           {"sbp_subset_size", c.sbp_subset_size},
           {"penalty_coeff", c.penalty_coeff},
           {"ela_samples_per_dimension", c.ela_samples_per_dimension}};
    if (include_local) {
        j["workers"] = c.workers;
        j["store_path"] = c.store_path;
    }
    return j;
}

template <typename T>
void read_if_present(const json& j, const char* key, T& out) {
    if (auto it = j.find(key); it != j.end()) {
        try {
            out = it->get<T>();
        } catch (const json::exception&) {
            throw ConfigError(std::string("config key '") + key + "' has the wrong type");
        }
    }
}

}  // namespace

std::string Config::canonical_json() const {
    // nlohmann::json objects iterate in sorted key order, so dump() is canonical
    return config_to_json(*this, false).dump();
}

std::string Config::hash() const { return store::config_hash_hex(canonical_json()); }

Config Config::from_json_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ConfigError("config is not valid JSON");
    if (!j.is_object()) throw ConfigError("config root must be an object");
    Config c;
    read_if_present(j, "master_seed", c.master_seed);
    read_if_present(j, "dimensions", c.dimensions);
    read_if_present(j, "allowed_dimensions", c.allowed_dimensions);
    read_if_present(j, "n_functions", c.n_functions);
    read_if_present(j, "train_fraction", c.train_fraction);
    read_if_present(j, "budget_per_dimension", c.budget_per_dimension);
    read_if_present(j, "n_runs", c.n_runs);
    read_if_present(j, "budget_grid_count", c.budget_grid_count);
    read_if_present(j, "target_grid_count", c.target_grid_count);
    read_if_present(j, "target_log10_max", c.target_log10_max);
    read_if_present(j, "target_log10_min", c.target_log10_min);
    read_if_present(j, "k_values", c.k_values);
    read_if_present(j, "k_default", c.k_default);
    read_if_present(j, "weight_schemes", c.weight_schemes);
    read_if_present(j, "default_scheme", c.default_scheme);
    read_if_present(j, "sbp_samples", c.sbp_samples);
    read_if_present(j, "sbp_subset_size", c.sbp_subset_size);
    read_if_present(j, "penalty_coeff", c.penalty_coeff);
    read_if_present(j, "ela_samples_per_dimension", c.ela_samples_per_dimension);
    read_if_present(j, "workers", c.workers);
    read_if_present(j, "store_path", c.store_path);
    for (const auto& [key, value] : j.items()) {
        static const char* known[] = {
            "master_seed",      "dimensions",        "allowed_dimensions",
            "n_functions",      "train_fraction",    "budget_per_dimension",
            "n_runs",           "budget_grid_count", "target_grid_count",
            "target_log10_max", "target_log10_min",  "k_values",
            "k_default",        "weight_schemes",    "default_scheme",
            "sbp_samples",      "sbp_subset_size",   "penalty_coeff",
            "ela_samples_per_dimension", "workers",  "store_path"};
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char* k) { return key == k; }) == std::end(known))
            throw ConfigError("unknown config key: " + key);
    }
    return c;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string Config::to_json_text() const { return config_to_json(*this, true).dump(2) + "\n"; }

}  // namespace apsel::cli
