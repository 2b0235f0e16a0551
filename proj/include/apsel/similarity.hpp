#pragma once

#include <span>
#include <string>
#include <vector>

#include "apsel/common.hpp"
#include "apsel/features.hpp"

namespace apsel::similarity {

// Zero-norm inputs (possible after degenerate standardization) give 0.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

struct Neighborhood {
    int target_function_id = 0;
    std::vector<int> neighbor_ids;       // k train ids, similarity descending
    std::vector<double> similarities;    // d_1 >= ... >= d_k
    double boundary_similarity = 0.0;    // d_{k+1}, the closest excluded function
};

// Top-k training functions by cosine similarity; ties break toward the lower
// function id. Requires k < |train| so d_{k+1} is defined.
Neighborhood knn(const features::FeatureVector& target,
                 std::span<const features::FeatureVector> train_vectors, int k);

enum class WeightScheme : int { eq = 0, soft = 1, diff = 2, log = 3 };

const char* weight_scheme_name(WeightScheme scheme);
WeightScheme weight_scheme_from_name(const std::string& name);

// Raw weights per scheme (eq: 1, soft: e^{d_i}, diff: d_i - d_{k+1},
// log: ln((k+1)/2) - ln(i) clamped at 0), normalized to sum 1. An all-zero raw
// vector falls back to equal weights.
std::vector<double> scheme_weights(WeightScheme scheme, const Neighborhood& nb);

}  // namespace apsel::similarity
