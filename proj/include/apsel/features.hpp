#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "apsel/common.hpp"
#include "apsel/eaf.hpp"
#include "apsel/suite.hpp"

namespace apsel::features {

enum class FeatureKind : int { ela = 0, latent_perf = 1 };

const char* feature_kind_name(FeatureKind kind);
FeatureKind feature_kind_from_name(const std::string& name);

struct FeatureVector {
    int function_id = 0;
    FeatureKind kind = FeatureKind::ela;
    std::vector<double> values;
};

// Names of the ELA-lite descriptors, in emission order (dimension independent).
std::vector<std::string> ela_feature_names();
std::vector<std::string> latent_feature_names(std::span<const int> algorithm_ids);

// Samples n_samples uniform points in the search domain and computes the
// ELA-lite descriptor set. Deterministic in (f, seed, n_samples).
FeatureVector extract_ela(const suite::GeneratedFunction& f, int n_samples, std::uint64_t seed);

// Descriptor computation on explicit samples; test hook and the actual kernel
// behind extract_ela. X is row-major n x d.
FeatureVector ela_from_samples(int function_id, std::span<const double> x_rows, int dimension,
                               std::span<const double> y);

// Performance-based latent oracle: per algorithm, the mean attainment over all
// targets at the final budget.
FeatureVector extract_latent_perf(int function_id, const eaf::EafTable& table,
                                  std::span<const int> algorithm_ids);

struct Standardizer {
    std::vector<double> mean;
    std::vector<double> inv_std;  // 0 for features with degenerate train spread

    FeatureVector transform(const FeatureVector& v) const;
};

// Per-feature zero-mean/unit-variance transform, population statistics, fit on
// the training set only. Features with train std < 1e-12 map to constant 0.
Standardizer fit_standardizer(std::span<const FeatureVector> train_vectors);

}  // namespace apsel::features
