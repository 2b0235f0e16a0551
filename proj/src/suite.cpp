#include "apsel/suite.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace apsel::suite {

const char* base_function_name(BaseFunctionId id) {
    switch (id) {
        case BaseFunctionId::sphere: return "sphere";
        case BaseFunctionId::ellipsoid: return "ellipsoid";
        case BaseFunctionId::rastrigin: return "rastrigin";
        case BaseFunctionId::rosenbrock_rotated: return "rosenbrock_rotated";
        case BaseFunctionId::attractive_sector: return "attractive_sector";
        case BaseFunctionId::different_powers: return "different_powers";
        case BaseFunctionId::schaffer: return "schaffer";
        case BaseFunctionId::bent_cigar: return "bent_cigar";
    }
    return "unknown";
}

namespace {

constexpr double kPi = 3.14159265358979323846;

double sphere(std::span<const double> z) {
    double s = 0.0;
    for (double v : z) s += v * v;
    return s;
}

double ellipsoid(std::span<const double> z) {
    const std::size_t d = z.size();
    if (d == 1) return z[0] * z[0];
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        const double c = std::pow(1e6, double(i) / double(d - 1));
        s += c * z[i] * z[i];
    }
    return s;
}

double rastrigin(std::span<const double> z) {
    const double d = static_cast<double>(z.size());
    double sq = 0.0, cs = 0.0;
    for (double v : z) {
        sq += v * v;
        cs += std::cos(2.0 * kPi * v);
    }
    return 10.0 * (d - cs) + sq;
}

double rosenbrock(std::span<const double> z) {
    const std::size_t d = z.size();
    if (d == 1) return z[0] * z[0];
    // optimum shifted to z = 0 via u = z + 1
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < d; ++i) {
        const double ui = z[i] + 1.0;
        const double un = z[i + 1] + 1.0;
        const double a = ui * ui - un;
        s += 100.0 * a * a + z[i] * z[i];
    }
    return s;
}

double attractive_sector(std::span<const double> z) {
    double s = 0.0;
    for (double v : z) {
        const double c = v > 0.0 ? 100.0 : 1.0;
        s += c * v * c * v;
    }
    return s;
}

double different_powers(std::span<const double> z) {
    const std::size_t d = z.size();
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        const double p = d == 1 ? 2.0 : 2.0 + 4.0 * double(i) / double(d - 1);
        s += std::pow(std::abs(z[i]), p);
    }
    return s;
}

double schaffer(std::span<const double> z) {
    const std::size_t d = z.size();
    auto term = [](double si) {
        const double r = std::sqrt(si);
        const double t = std::sin(50.0 * std::pow(si, 0.1));
        return r * (1.0 + t * t);
    };
    if (d == 1) {
        const double t = term(std::abs(z[0]));
        return t * t;
    }
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < d; ++i) {
        const double si = std::sqrt(z[i] * z[i] + z[i + 1] * z[i + 1]);
        s += term(si);
    }
    s /= double(d - 1);
    return s * s;
}

double bent_cigar(std::span<const double> z) {
    double s = z[0] * z[0];
    for (std::size_t i = 1; i < z.size(); ++i) s += 1e6 * z[i] * z[i];
    return s;
}

// Random orthogonal matrix: QR of a Gaussian draw, sign-fixed on diag(R).
std::vector<double> random_rotation(int d, Rng& rng) {
    Eigen::MatrixXd g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = rng.gauss();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j)
        if (r(j, j) < 0.0) q.col(j) *= -1.0;
    std::vector<double> out(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out[static_cast<std::size_t>(i) * d + j] = q(i, j);
    return out;
}

}  // namespace

double base_eval(BaseFunctionId id, std::span<const double> z) {
    if (z.empty()) throw UsageError("base_eval: empty vector");
    switch (id) {
        case BaseFunctionId::sphere: return sphere(z);
        case BaseFunctionId::ellipsoid: return ellipsoid(z);
        case BaseFunctionId::rastrigin: return rastrigin(z);
        case BaseFunctionId::rosenbrock_rotated: return rosenbrock(z);
        case BaseFunctionId::attractive_sector: return attractive_sector(z);
        case BaseFunctionId::different_powers: return different_powers(z);
        case BaseFunctionId::schaffer: return schaffer(z);
        case BaseFunctionId::bent_cigar: return bent_cigar(z);
    }
    throw UsageError("base_eval: invalid id");
}

GeneratedFunction GeneratedFunction::from_seed(int id, int dimension, std::uint64_t seed) {
    if (dimension < 1) throw ConfigError("GeneratedFunction: dimension must be >= 1");
    GeneratedFunction f;
    f.id_ = id;
    f.dimension_ = dimension;
    f.seed_ = seed;

    Rng rng(seed_mix({seed, 0xA1}));
    const int k_active = 2 + static_cast<int>(rng.uniform_index(4));  // {2..5}
    std::vector<int> comps(kNumBaseFunctions);
    std::iota(comps.begin(), comps.end(), 0);
    comps = rng.sample_without_replacement(std::move(comps), static_cast<std::size_t>(k_active));

    f.weights_.assign(kNumBaseFunctions, 0.0);
    double total = 0.0;
    std::vector<double> raw(static_cast<std::size_t>(k_active));
    for (double& w : raw) {
        w = rng.uniform();
        total += w;
    }
    if (total < 1e-300) {
        raw.assign(raw.size(), 1.0);
        total = double(k_active);
    }
    for (int j = 0; j < k_active; ++j) f.weights_[static_cast<std::size_t>(comps[j])] = raw[j] / total;

    f.x_opt_.resize(static_cast<std::size_t>(dimension));
    for (double& v : f.x_opt_) v = rng.uniform(kOptimumLo, kOptimumHi);

    f.build_rotations();
    return f;
}

GeneratedFunction GeneratedFunction::from_record(int id, int dimension, std::uint64_t seed,
                                                 std::vector<double> weights,
                                                 std::vector<double> x_opt) {
    if (weights.size() != kNumBaseFunctions)
        throw FormatError("GeneratedFunction record: expected 8 weights");
    if (x_opt.size() != static_cast<std::size_t>(dimension))
        throw FormatError("GeneratedFunction record: x_opt length mismatch");
    GeneratedFunction f;
    f.id_ = id;
    f.dimension_ = dimension;
    f.seed_ = seed;
    f.weights_ = std::move(weights);
    f.x_opt_ = std::move(x_opt);
    f.build_rotations();
    return f;
}

GeneratedFunction GeneratedFunction::with_weights(int id, int dimension, std::uint64_t seed,
                                                  std::vector<double> weights,
                                                  std::vector<double> x_opt) {
    return from_record(id, dimension, seed, std::move(weights), std::move(x_opt));
}

void GeneratedFunction::build_rotations() {
    // One stream per component, independent of the weight/x_opt draws, so
    // functions restored from a record get identical matrices.
    rot_.assign(kNumBaseFunctions, {});
    for (int j = 0; j < kNumBaseFunctions; ++j) {
        if (weights_[static_cast<std::size_t>(j)] == 0.0) continue;
        Rng rng(seed_mix({seed_, 0xA2, static_cast<std::uint64_t>(j)}));
        rot_[static_cast<std::size_t>(j)] = random_rotation(dimension_, rng);
    }
}

double GeneratedFunction::evaluate(std::span<const double> x) const {
    if (x.size() != static_cast<std::size_t>(dimension_))
        throw UsageError("GeneratedFunction::evaluate: dimension mismatch");
    const int d = dimension_;
    std::vector<double> shifted(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) shifted[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] - x_opt_[static_cast<std::size_t>(i)];
    std::vector<double> z(static_cast<std::size_t>(d));
    double value = 0.0;
    for (int j = 0; j < kNumBaseFunctions; ++j) {
        const double w = weights_[static_cast<std::size_t>(j)];
        if (w == 0.0) continue;
        const auto& r = rot_[static_cast<std::size_t>(j)];
        for (int i = 0; i < d; ++i) {
            double s = 0.0;
            for (int k = 0; k < d; ++k)
                s += r[static_cast<std::size_t>(i) * d + k] * shifted[static_cast<std::size_t>(k)];
            z[static_cast<std::size_t>(i)] = s;
        }
        value += w * std::log1p(base_eval(static_cast<BaseFunctionId>(j), z));
    }
    return std::max(0.0, value);
}

Suite generate_suite(const SuiteSpec& spec) {
    if (spec.dimension < 1) throw ConfigError("generate_suite: dimension must be >= 1");
    if (spec.n_functions < 2) throw ConfigError("generate_suite: n_functions must be >= 2");
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
        throw ConfigError("generate_suite: train_fraction must be in (0, 1)");

    Suite suite;
    suite.spec = spec;
    suite.functions.reserve(static_cast<std::size_t>(spec.n_functions));
    for (int id = 0; id < spec.n_functions; ++id) {
        const std::uint64_t fseed = seed_mix({spec.master_seed, seed_tag::suite,
                                              static_cast<std::uint64_t>(spec.dimension),
                                              static_cast<std::uint64_t>(id)});
        suite.functions.push_back(GeneratedFunction::from_seed(id, spec.dimension, fseed));
    }

    // Deterministic shuffled split; first floor(n * fraction) ids train.
    std::vector<int> ids(static_cast<std::size_t>(spec.n_functions));
    std::iota(ids.begin(), ids.end(), 0);
    Rng rng(seed_mix({spec.master_seed, seed_tag::split, static_cast<std::uint64_t>(spec.dimension)}));
    ids = rng.sample_without_replacement(std::move(ids), ids.size());
    const auto n_train = static_cast<std::size_t>(spec.n_functions * spec.train_fraction);
    suite.train_ids.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n_train));
    suite.test_ids.assign(ids.begin() + static_cast<std::ptrdiff_t>(n_train), ids.end());
    std::sort(suite.train_ids.begin(), suite.train_ids.end());
    std::sort(suite.test_ids.begin(), suite.test_ids.end());
    return suite;
}

}  // namespace apsel::suite
