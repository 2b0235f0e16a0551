#include "apsel/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace apsel::similarity {

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw UsageError("cosine_similarity: length mismatch");
    if (a.empty()) throw UsageError("cosine_similarity: empty vectors");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

Neighborhood knn(const features::FeatureVector& target,
                 std::span<const features::FeatureVector> train_vectors, int k) {
    if (k < 1) throw ConfigError("knn: k must be >= 1");
    if (static_cast<std::size_t>(k) >= train_vectors.size())
        throw ConfigError("knn: k must be smaller than the training set (boundary similarity undefined)");

    std::vector<std::pair<double, int>> scored;  // (similarity, function_id)
    scored.reserve(train_vectors.size());
    for (const auto& tv : train_vectors)
        scored.emplace_back(cosine_similarity(target.values, tv.values), tv.function_id);
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });

    Neighborhood nb;
    nb.target_function_id = target.function_id;
    nb.neighbor_ids.reserve(static_cast<std::size_t>(k));
    nb.similarities.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        nb.similarities.push_back(scored[static_cast<std::size_t>(i)].first);
        nb.neighbor_ids.push_back(scored[static_cast<std::size_t>(i)].second);
    }
    nb.boundary_similarity = scored[static_cast<std::size_t>(k)].first;
    return nb;
}

const char* weight_scheme_name(WeightScheme scheme) {
    switch (scheme) {
        case WeightScheme::eq: return "eq";
        case WeightScheme::soft: return "soft";
        case WeightScheme::diff: return "diff";
        case WeightScheme::log: return "log";
    }
    return "unknown";
}

WeightScheme weight_scheme_from_name(const std::string& name) {
    if (name == "eq") return WeightScheme::eq;
    if (name == "soft") return WeightScheme::soft;
    if (name == "diff") return WeightScheme::diff;
    if (name == "log") return WeightScheme::log;
    throw ConfigError("unknown weight scheme: " + name);
}

std::vector<double> scheme_weights(WeightScheme scheme, const Neighborhood& nb) {
    const std::size_t k = nb.neighbor_ids.size();
    if (k == 0) throw UsageError("scheme_weights: empty neighborhood");
    std::vector<double> raw(k, 1.0);
    switch (scheme) {
        case WeightScheme::eq:
            break;
        case WeightScheme::soft:
            for (std::size_t i = 0; i < k; ++i) raw[i] = std::exp(nb.similarities[i]);
            break;
        case WeightScheme::diff:
            for (std::size_t i = 0; i < k; ++i) raw[i] = nb.similarities[i] - nb.boundary_similarity;
            break;
        case WeightScheme::log:
            // CMA-ES rank weights; ranks past (k+1)/2 clamp to zero
            for (std::size_t i = 0; i < k; ++i)
                raw[i] = std::max(0.0, std::log((double(k) + 1.0) / 2.0) - std::log(double(i) + 1.0));
            break;
    }
    double sum = std::accumulate(raw.begin(), raw.end(), 0.0);
    if (sum <= 0.0) {
        raw.assign(k, 1.0);  // degenerate (all-tied diff, or k = 1 log): equal weights
        sum = double(k);
    }
    for (double& w : raw) w /= sum;
    return raw;
}

}  // namespace apsel::similarity
