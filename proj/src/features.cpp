#include "apsel/features.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace apsel::features {

const char* feature_kind_name(FeatureKind kind) {
    return kind == FeatureKind::ela ? "ela" : "latent_perf";
}

FeatureKind feature_kind_from_name(const std::string& name) {
    if (name == "ela") return FeatureKind::ela;
    if (name == "latent_perf") return FeatureKind::latent_perf;
    throw ConfigError("unknown feature kind: " + name);
}

std::vector<std::string> ela_feature_names() {
    return {"y_skewness",     "y_kurtosis",     "lin_r2",  "quad_r2",       "lin_coef_ratio",
            "quad_cond",      "disp_ratio_q10", "disp_ratio_q25", "fdc",   "levelset_mmce"};
}

std::vector<std::string> latent_feature_names(std::span<const int> algorithm_ids) {
    std::vector<std::string> names;
    names.reserve(algorithm_ids.size());
    for (int aid : algorithm_ids)
        names.push_back("final_att_" + std::string(optim::algorithm_name(static_cast<optim::AlgorithmId>(aid))));
    return names;
}

namespace {

// max/min magnitude ratio with the near-singular denominator treated as
// degenerate (ratio 0), keeping every feature finite.
double magnitude_ratio(std::span<const double> coefs) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double c : coefs) {
        const double a = std::abs(c);
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    if (hi == 0.0 || lo < hi * 1e-15) return 0.0;
    return hi / lo;
}

double r_squared(const Eigen::VectorXd& y, const Eigen::VectorXd& fitted) {
    const double mean = y.mean();
    const double ss_tot = (y.array() - mean).square().sum();
    if (ss_tot < 1e-300) return 0.0;
    const double ss_res = (y - fitted).squaredNorm();
    return 1.0 - ss_res / ss_tot;
}

double mean_pairwise_distance(std::span<const double> x_rows, int d, std::span<const std::size_t> idx) {
    if (idx.size() < 2) return 0.0;
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            double s = 0.0;
            for (int j = 0; j < d; ++j) {
                const double diff = x_rows[idx[a] * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)] -
                                    x_rows[idx[b] * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)];
                s += diff * diff;
            }
            sum += std::sqrt(s);
            ++count;
        }
    return sum / double(count);
}

}  // namespace

FeatureVector extract_ela(const suite::GeneratedFunction& f, int n_samples, std::uint64_t seed) {
    const int d = f.dimension();
    if (n_samples < 10 * d) throw ConfigError("extract_ela: need at least 10*d samples");
    Rng rng(seed);
    std::vector<double> x_rows(static_cast<std::size_t>(n_samples) * static_cast<std::size_t>(d));
    std::vector<double> y(static_cast<std::size_t>(n_samples));
    std::vector<double> point(static_cast<std::size_t>(d));
    for (int i = 0; i < n_samples; ++i) {
        for (int j = 0; j < d; ++j) {
            const double v = rng.uniform(suite::kDomainLo, suite::kDomainHi);
            point[static_cast<std::size_t>(j)] = v;
            x_rows[static_cast<std::size_t>(i) * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)] = v;
        }
        y[static_cast<std::size_t>(i)] = f.evaluate(point);
    }
    return ela_from_samples(f.id(), x_rows, d, y);
}

FeatureVector ela_from_samples(int function_id, std::span<const double> x_rows, int dimension,
                               std::span<const double> y) {
    const std::size_t n = y.size();
    const int d = dimension;
    if (n < 4) throw UsageError("ela_from_samples: need at least 4 samples");
    if (x_rows.size() != n * static_cast<std::size_t>(d))
        throw UsageError("ela_from_samples: sample matrix shape mismatch");

    FeatureVector out;
    out.function_id = function_id;
    out.kind = FeatureKind::ela;

    const double y_mean = std::accumulate(y.begin(), y.end(), 0.0) / double(n);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : y) {
        const double c = v - y_mean;
        m2 += c * c;
        m3 += c * c * c;
        m4 += c * c * c * c;
    }
    m2 /= double(n);
    m3 /= double(n);
    m4 /= double(n);
    const bool degenerate = m2 < 1e-300;

    // degenerate samples (all y equal): moments/fits/correlations 0, distance
    // ratios 1, per the documented degenerate-value table
    const double skewness = degenerate ? 0.0 : m3 / std::pow(m2, 1.5);
    const double kurtosis = degenerate ? 0.0 : m4 / (m2 * m2) - 3.0;

    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> X(
        x_rows.data(), static_cast<Eigen::Index>(n), d);
    Eigen::Map<const Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(n));

    double lin_r2 = 0.0, quad_r2 = 0.0, lin_ratio = 0.0, quad_cond = 0.0;
    if (!degenerate) {
        Eigen::MatrixXd lin(n, d + 1);
        lin.col(0).setOnes();
        lin.rightCols(d) = X;
        Eigen::VectorXd beta = (lin.transpose() * lin).ldlt().solve(lin.transpose() * yv);
        lin_r2 = r_squared(yv, lin * beta);
        std::vector<double> slopes(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) slopes[static_cast<std::size_t>(j)] = beta(j + 1);
        lin_ratio = magnitude_ratio(slopes);

        Eigen::MatrixXd quad(n, 2 * d + 1);
        quad.col(0).setOnes();
        quad.middleCols(1, d) = X;
        quad.rightCols(d) = X.array().square();
        Eigen::VectorXd gamma = (quad.transpose() * quad).ldlt().solve(quad.transpose() * yv);
        quad_r2 = r_squared(yv, quad * gamma);
        std::vector<double> curvature(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) curvature[static_cast<std::size_t>(j)] = gamma(d + 1 + j);
        quad_cond = magnitude_ratio(curvature);
    }

    // order by fitness, stable on sample index
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return y[a] < y[b]; });

    double disp_q10 = 1.0, disp_q25 = 1.0;
    if (!degenerate) {
        const double all_dist = mean_pairwise_distance(x_rows, d, order);
        auto disp = [&](double q) {
            const std::size_t m = std::max<std::size_t>(2, static_cast<std::size_t>(double(n) * q));
            const double best = mean_pairwise_distance(x_rows, d, std::span<const std::size_t>(order.data(), m));
            return all_dist < 1e-300 ? 1.0 : best / all_dist;
        };
        disp_q10 = disp(0.10);
        disp_q25 = disp(0.25);
    }

    double fdc = 0.0;
    if (!degenerate) {
        const std::size_t best_idx = order.front();
        std::vector<double> dist(n);
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = 0; j < d; ++j) {
                const double diff = x_rows[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)] -
                                    x_rows[best_idx * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)];
                s += diff * diff;
            }
            dist[i] = std::sqrt(s);
        }
        const double dist_mean = std::accumulate(dist.begin(), dist.end(), 0.0) / double(n);
        double cov = 0.0, var_d = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cov += (y[i] - y_mean) * (dist[i] - dist_mean);
            var_d += (dist[i] - dist_mean) * (dist[i] - dist_mean);
        }
        if (var_d > 1e-300) fdc = cov / std::sqrt(m2 * double(n) * var_d);
    }

    // levelset proxy: split at the median, classify by nearest class centroid,
    // report the misclassified fraction
    double levelset = 0.0;
    if (!degenerate) {
        const double median = y[order[n / 2]];
        std::vector<bool> below(n);
        std::size_t n_below = 0;
        for (std::size_t i = 0; i < n; ++i) {
            below[i] = y[i] < median;
            n_below += below[i] ? 1 : 0;
        }
        if (n_below > 0 && n_below < n) {
            std::vector<double> c0(static_cast<std::size_t>(d), 0.0), c1(static_cast<std::size_t>(d), 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                auto& c = below[i] ? c0 : c1;
                for (int j = 0; j < d; ++j)
                    c[static_cast<std::size_t>(j)] += x_rows[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)];
            }
            for (int j = 0; j < d; ++j) {
                c0[static_cast<std::size_t>(j)] /= double(n_below);
                c1[static_cast<std::size_t>(j)] /= double(n - n_below);
            }
            std::size_t wrong = 0;
            for (std::size_t i = 0; i < n; ++i) {
                double d0 = 0.0, d1 = 0.0;
                for (int j = 0; j < d; ++j) {
                    const double xv = x_rows[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)];
                    d0 += (xv - c0[static_cast<std::size_t>(j)]) * (xv - c0[static_cast<std::size_t>(j)]);
                    d1 += (xv - c1[static_cast<std::size_t>(j)]) * (xv - c1[static_cast<std::size_t>(j)]);
                }
                const bool pred_below = d0 <= d1;
                wrong += pred_below != below[i] ? 1 : 0;
            }
            levelset = double(wrong) / double(n);
        }
    }

    out.values = {skewness, kurtosis, lin_r2, quad_r2, lin_ratio, quad_cond, disp_q10, disp_q25, fdc, levelset};
    return out;
}

FeatureVector extract_latent_perf(int function_id, const eaf::EafTable& table,
                                  std::span<const int> algorithm_ids) {
    FeatureVector out;
    out.function_id = function_id;
    out.kind = FeatureKind::latent_perf;
    const std::size_t last_row = table.budgets().size() - 1;
    const std::size_t ne = table.targets().size();
    out.values.reserve(algorithm_ids.size());
    for (int aid : algorithm_ids) {
        const auto& m = table.get(function_id, aid);
        double s = 0.0;
        for (std::size_t ti = 0; ti < ne; ++ti) s += m.at(last_row, ti);
        out.values.push_back(s / double(ne));
    }
    return out;
}

FeatureVector Standardizer::transform(const FeatureVector& v) const {
    if (v.values.size() != mean.size())
        throw UsageError("Standardizer::transform: feature length mismatch");
    FeatureVector out = v;
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = (out.values[i] - mean[i]) * inv_std[i];
    return out;
}

Standardizer fit_standardizer(std::span<const FeatureVector> train_vectors) {
    if (train_vectors.size() < 2) throw UsageError("fit_standardizer: need at least 2 vectors");
    const std::size_t nf = train_vectors.front().values.size();
    for (const auto& v : train_vectors)
        if (v.values.size() != nf) throw UsageError("fit_standardizer: inconsistent feature lengths");

    Standardizer s;
    s.mean.assign(nf, 0.0);
    s.inv_std.assign(nf, 0.0);
    const double n = double(train_vectors.size());
    for (const auto& v : train_vectors)
        for (std::size_t i = 0; i < nf; ++i) s.mean[i] += v.values[i];
    for (double& m : s.mean) m /= n;
    for (std::size_t i = 0; i < nf; ++i) {
        double var = 0.0;
        for (const auto& v : train_vectors) {
            const double c = v.values[i] - s.mean[i];
            var += c * c;
        }
        const double sd = std::sqrt(var / n);
        s.inv_std[i] = sd < 1e-12 ? 0.0 : 1.0 / sd;
    }
    return s;
}

}  // namespace apsel::features
