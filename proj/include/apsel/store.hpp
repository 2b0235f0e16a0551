#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apsel/common.hpp"
#include "apsel/eaf.hpp"
#include "apsel/features.hpp"
#include "apsel/optim.hpp"
#include "apsel/portfolio.hpp"
#include "apsel/suite.hpp"

namespace apsel::store {

inline constexpr int kFormatVersion = 1;

struct Manifest {
    int format_version = kFormatVersion;
    int dimension = 0;
    std::uint64_t master_seed = 0;
    std::int64_t total_budget = 0;
    int budget_grid_count = 0;
    std::vector<double> targets;
    int n_runs = 0;
    std::vector<int> algorithm_ids;
    std::string config_hash;

    eaf::BudgetGrid budget_grid() const;
    eaf::TargetGrid target_grid() const;
};

struct PortfolioRecord {
    portfolio::Portfolio pf;
    std::string method;
    std::string function_set;     // free-form provenance: which set it was built on
    std::vector<double> weights;  // weights used during construction
};

// Directory-backed experiment store:
//   root/manifest.json, suite.json, traj/, eaf/, features/, portfolios/, reports/
// Numeric payloads round-trip bit exactly (little-endian float64, trajectories
// run-length compressed over their constant tails).
class ExperimentStore {
  public:
    static ExperimentStore create(const std::filesystem::path& root, Manifest manifest);
    // Validates format_version; expected_config_hash, when given, must match.
    static ExperimentStore open(const std::filesystem::path& root,
                                const std::string& expected_config_hash = {});
    static bool exists(const std::filesystem::path& root);

    const Manifest& manifest() const { return manifest_; }
    const std::filesystem::path& root() const { return root_; }

    void put_suite(const suite::Suite& s) const;
    suite::Suite get_suite() const;
    bool has_suite() const;

    void put_trajectories(int function_id, int algorithm_id,
                          std::span<const optim::RunTrajectory> runs) const;
    std::vector<optim::RunTrajectory> get_trajectories(int function_id, int algorithm_id) const;
    bool has_trajectories(int function_id, int algorithm_id) const;

    void put_eaf(const eaf::EafMatrix& m) const;
    eaf::EafMatrix get_eaf(int function_id, int algorithm_id) const;
    bool has_eaf(int function_id, int algorithm_id) const;
    // All persisted matrices loaded into a lookup table over the manifest grids.
    eaf::EafTable load_eaf_table() const;

    void put_features(features::FeatureKind kind, std::span<const features::FeatureVector> vectors,
                      std::span<const std::string> names) const;
    std::vector<features::FeatureVector> get_features(features::FeatureKind kind) const;
    bool has_features(features::FeatureKind kind) const;

    void put_standardizer(features::FeatureKind kind, const features::Standardizer& s) const;
    features::Standardizer get_standardizer(features::FeatureKind kind) const;

    void put_portfolio(const std::string& name, const PortfolioRecord& record) const;
    PortfolioRecord get_portfolio(const std::string& name) const;
    bool has_portfolio(const std::string& name) const;

    std::filesystem::path reports_dir() const { return root_ / "reports"; }
    void write_report_text(const std::string& filename, const std::string& content) const;

  private:
    ExperimentStore() = default;

    std::filesystem::path root_;
    Manifest manifest_;
};

// Canonical FNV-1a hash of a config's JSON form; stored in the manifest so a
// store can refuse reuse under a different configuration.
std::string config_hash_hex(const std::string& canonical_json);

}  // namespace apsel::store
