#include "apsel/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace apsel::optim {

const char* algorithm_name(AlgorithmId id) {
    switch (id) {
        case AlgorithmId::es11: return "es11";
        case AlgorithmId::diag_es: return "diag_es";
        case AlgorithmId::de: return "de";
        case AlgorithmId::nelder_mead: return "nelder_mead";
    }
    return "unknown";
}

AlgorithmId algorithm_from_name(const std::string& name) {
    for (AlgorithmId id : all_algorithms())
        if (name == algorithm_name(id)) return id;
    throw ConfigError("unknown algorithm: " + name);
}

std::vector<AlgorithmId> all_algorithms() {
    return {AlgorithmId::es11, AlgorithmId::diag_es, AlgorithmId::de, AlgorithmId::nelder_mead};
}

namespace {

// Counts every evaluation and records the running minimum. Optimizers must
// check done() before asking for another evaluation.
class Recorder {
  public:
    Recorder(const suite::GeneratedFunction& f, std::int64_t budget)
        : f_(f), budget_(budget) {
        traj_.reserve(static_cast<std::size_t>(budget));
    }

    bool done() const { return static_cast<std::int64_t>(traj_.size()) >= budget_; }

    double eval(std::span<const double> x) {
        if (done()) throw UsageError("Recorder: budget exhausted");
        const double v = f_.evaluate(x);
        best_ = std::min(best_, v);
        traj_.push_back(best_);
        return v;
    }

    double best() const { return best_; }
    std::vector<double> take() { return std::move(traj_); }

  private:
    const suite::GeneratedFunction& f_;
    std::int64_t budget_;
    double best_ = std::numeric_limits<double>::infinity();
    std::vector<double> traj_;
};

void clamp_to_domain(std::vector<double>& x) {
    for (double& v : x) v = std::clamp(v, suite::kDomainLo, suite::kDomainHi);
}

std::vector<double> random_point(int d, Rng& rng) {
    std::vector<double> x(static_cast<std::size_t>(d));
    for (double& v : x) v = rng.uniform(suite::kDomainLo, suite::kDomainHi);
    return x;
}

void run_es11(Recorder& rec, int d, Rng& rng) {
    const double up = std::exp(0.8 / std::sqrt(double(d) + 1.0));
    const double down = std::exp(-0.2 / std::sqrt(double(d) + 1.0));
    std::vector<double> x = random_point(d, rng);
    if (rec.done()) return;
    double fx = rec.eval(x);
    double sigma = 2.0;
    std::vector<double> y(static_cast<std::size_t>(d));
    while (!rec.done()) {
        for (int i = 0; i < d; ++i) y[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + sigma * rng.gauss();
        clamp_to_domain(y);
        const double fy = rec.eval(y);
        if (fy <= fx) {
            x = y;
            fx = fy;
            sigma *= up;
        } else {
            sigma *= down;
        }
        sigma = std::clamp(sigma, 1e-12, 5.0);
    }
}

void run_diag_es(Recorder& rec, int d, Rng& rng) {
    const int lambda = 4 + static_cast<int>(std::floor(3.0 * std::log(double(d))));
    const int mu = std::max(1, lambda / 2);
    const double tau_global = 1.0 / std::sqrt(2.0 * double(d));
    const double tau_coord = 1.0 / std::sqrt(2.0 * std::sqrt(double(d)));

    std::vector<double> mean = random_point(d, rng);
    std::vector<double> step(static_cast<std::size_t>(d), 2.0);

    struct Offspring {
        std::vector<double> x, s;
        double fx;
    };
    std::vector<Offspring> pop(static_cast<std::size_t>(lambda));

    while (!rec.done()) {
        int produced = 0;
        for (int o = 0; o < lambda && !rec.done(); ++o) {
            auto& off = pop[static_cast<std::size_t>(o)];
            off.s.resize(static_cast<std::size_t>(d));
            off.x.resize(static_cast<std::size_t>(d));
            const double g = tau_global * rng.gauss();
            for (int i = 0; i < d; ++i) {
                double s = step[static_cast<std::size_t>(i)] * std::exp(g + tau_coord * rng.gauss());
                s = std::clamp(s, 1e-12, 5.0);
                off.s[static_cast<std::size_t>(i)] = s;
                off.x[static_cast<std::size_t>(i)] = mean[static_cast<std::size_t>(i)] + s * rng.gauss();
            }
            clamp_to_domain(off.x);
            off.fx = rec.eval(off.x);
            ++produced;
        }
        if (produced < lambda) break;  // partial generation at budget end
        std::vector<int> order(static_cast<std::size_t>(lambda));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return pop[static_cast<std::size_t>(a)].fx < pop[static_cast<std::size_t>(b)].fx; });
        for (int i = 0; i < d; ++i) {
            double mx = 0.0, ms = 0.0;
            for (int r = 0; r < mu; ++r) {
                const auto& off = pop[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])];
                mx += off.x[static_cast<std::size_t>(i)];
                ms += off.s[static_cast<std::size_t>(i)];
            }
            mean[static_cast<std::size_t>(i)] = mx / double(mu);
            step[static_cast<std::size_t>(i)] = ms / double(mu);
        }
    }
}

void run_de(Recorder& rec, int d, Rng& rng) {
    const int np = 10 * d;
    const double scale = 0.5;
    const double cr = 0.9;

    std::vector<std::vector<double>> pop(static_cast<std::size_t>(np));
    std::vector<double> fit(static_cast<std::size_t>(np), std::numeric_limits<double>::infinity());
    for (int i = 0; i < np && !rec.done(); ++i) {
        pop[static_cast<std::size_t>(i)] = random_point(d, rng);
        fit[static_cast<std::size_t>(i)] = rec.eval(pop[static_cast<std::size_t>(i)]);
    }

    std::vector<double> trial(static_cast<std::size_t>(d));
    while (!rec.done()) {
        for (int i = 0; i < np && !rec.done(); ++i) {
            int r1, r2, r3;
            do { r1 = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(np))); } while (r1 == i);
            do { r2 = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(np))); } while (r2 == i || r2 == r1);
            do { r3 = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(np))); } while (r3 == i || r3 == r1 || r3 == r2);
            const int jrand = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(d)));
            for (int j = 0; j < d; ++j) {
                const bool cross = rng.uniform() < cr || j == jrand;
                trial[static_cast<std::size_t>(j)] =
                    cross ? pop[static_cast<std::size_t>(r1)][static_cast<std::size_t>(j)] +
                                scale * (pop[static_cast<std::size_t>(r2)][static_cast<std::size_t>(j)] -
                                         pop[static_cast<std::size_t>(r3)][static_cast<std::size_t>(j)])
                          : pop[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            }
            clamp_to_domain(trial);
            const double ft = rec.eval(trial);
            if (ft <= fit[static_cast<std::size_t>(i)]) {
                pop[static_cast<std::size_t>(i)] = trial;
                fit[static_cast<std::size_t>(i)] = ft;
            }
        }
    }
}

void run_nelder_mead(Recorder& rec, int d, Rng& rng) {
    const double alpha = 1.0, gamma = 2.0, rho = 0.5, shrink = 0.5;
    const std::size_t n = static_cast<std::size_t>(d) + 1;

    std::vector<std::vector<double>> vx;
    std::vector<double> vf;

    auto init_simplex = [&] {
        vx.clear();
        vf.clear();
        std::vector<double> x0 = random_point(d, rng);
        vx.push_back(x0);
        for (int i = 0; i < d; ++i) {
            std::vector<double> xi = x0;
            xi[static_cast<std::size_t>(i)] += 1.0;
            clamp_to_domain(xi);
            vx.push_back(xi);
        }
        for (const auto& v : vx) {
            if (rec.done()) return false;
            vf.push_back(rec.eval(v));
        }
        return vf.size() == n;
    };

    auto diameter = [&] {
        double dd = 0.0;
        for (std::size_t a = 0; a < vx.size(); ++a)
            for (std::size_t b = a + 1; b < vx.size(); ++b) {
                double s = 0.0;
                for (int i = 0; i < d; ++i) {
                    const double diff = vx[a][static_cast<std::size_t>(i)] - vx[b][static_cast<std::size_t>(i)];
                    s += diff * diff;
                }
                dd = std::max(dd, s);
            }
        return std::sqrt(dd);
    };

    if (!init_simplex()) return;
    while (!rec.done()) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vf[a] < vf[b]; });
        {
            std::vector<std::vector<double>> nx(n);
            std::vector<double> nf(n);
            for (std::size_t i = 0; i < n; ++i) {
                nx[i] = vx[order[i]];
                nf[i] = vf[order[i]];
            }
            vx = std::move(nx);
            vf = std::move(nf);
        }
        if (diameter() < 1e-12) {
            if (!init_simplex()) return;  // fresh restart with budget remaining
            continue;
        }
        std::vector<double> centroid(static_cast<std::size_t>(d), 0.0);
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (int j = 0; j < d; ++j) centroid[static_cast<std::size_t>(j)] += vx[i][static_cast<std::size_t>(j)];
        for (double& c : centroid) c /= double(d);

        auto mix = [&](double coef) {
            std::vector<double> p(static_cast<std::size_t>(d));
            for (int j = 0; j < d; ++j)
                p[static_cast<std::size_t>(j)] = centroid[static_cast<std::size_t>(j)] +
                                                 coef * (vx[n - 1][static_cast<std::size_t>(j)] - centroid[static_cast<std::size_t>(j)]);
            clamp_to_domain(p);
            return p;
        };

        const auto xr = mix(-alpha);
        if (rec.done()) return;
        const double fr = rec.eval(xr);
        if (fr < vf[0]) {
            const auto xe = mix(-alpha * gamma);
            if (rec.done()) return;
            const double fe = rec.eval(xe);
            if (fe < fr) {
                vx[n - 1] = xe;
                vf[n - 1] = fe;
            } else {
                vx[n - 1] = xr;
                vf[n - 1] = fr;
            }
        } else if (fr < vf[n - 2]) {
            vx[n - 1] = xr;
            vf[n - 1] = fr;
        } else {
            const bool outside = fr < vf[n - 1];
            const auto xc = mix(outside ? -rho : rho);
            if (rec.done()) return;
            const double fc = rec.eval(xc);
            if (fc < std::min(fr, vf[n - 1])) {
                vx[n - 1] = xc;
                vf[n - 1] = fc;
            } else {
                for (std::size_t i = 1; i < n; ++i) {
                    for (int j = 0; j < d; ++j)
                        vx[i][static_cast<std::size_t>(j)] =
                            vx[0][static_cast<std::size_t>(j)] +
                            shrink * (vx[i][static_cast<std::size_t>(j)] - vx[0][static_cast<std::size_t>(j)]);
                    if (rec.done()) return;
                    vf[i] = rec.eval(vx[i]);
                }
            }
        }
    }
}

}  // namespace

std::uint64_t derive_run_seed(std::uint64_t base_seed, int function_id, int algorithm_id,
                              int run_index) {
    return seed_mix({base_seed, seed_tag::runs, static_cast<std::uint64_t>(function_id),
                     static_cast<std::uint64_t>(algorithm_id), static_cast<std::uint64_t>(run_index)});
}

RunTrajectory run(AlgorithmId algorithm, const suite::GeneratedFunction& f, std::int64_t budget,
                  std::uint64_t seed) {
    if (budget < 1) throw ConfigError("run: budget must be >= 1");
    Recorder rec(f, budget);
    Rng rng(seed);
    switch (algorithm) {
        case AlgorithmId::es11: run_es11(rec, f.dimension(), rng); break;
        case AlgorithmId::diag_es: run_diag_es(rec, f.dimension(), rng); break;
        case AlgorithmId::de: run_de(rec, f.dimension(), rng); break;
        case AlgorithmId::nelder_mead: run_nelder_mead(rec, f.dimension(), rng); break;
    }
    // Fixed-budget contract: drain whatever the strategy left unused.
    if (!rec.done()) {
        while (!rec.done()) rec.eval(random_point(f.dimension(), rng));
    }
    RunTrajectory t;
    t.function_id = f.id();
    t.algorithm_id = static_cast<int>(algorithm);
    t.seed = seed;
    t.best_so_far = rec.take();
    return t;
}

std::vector<RunTrajectory> run_batch(std::span<const AlgorithmId> algorithms,
                                     std::span<const suite::GeneratedFunction> functions,
                                     std::int64_t budget, int n_runs, std::uint64_t base_seed,
                                     int workers) {
    if (n_runs < 1) throw ConfigError("run_batch: n_runs must be >= 1");
    struct Item {
        const suite::GeneratedFunction* f;
        AlgorithmId alg;
        int run_index;
    };
    std::vector<Item> items;
    items.reserve(functions.size() * algorithms.size() * static_cast<std::size_t>(n_runs));
    for (const auto& f : functions)
        for (AlgorithmId alg : algorithms)
            for (int r = 0; r < n_runs; ++r) items.push_back({&f, alg, r});

    std::vector<RunTrajectory> out(items.size());
    parallel_for(items.size(), workers, [&](std::size_t i) {
        const Item& it = items[i];
        const std::uint64_t seed =
            derive_run_seed(base_seed, it.f->id(), static_cast<int>(it.alg), it.run_index);
        out[i] = run(it.alg, *it.f, budget, seed);
        out[i].run_index = it.run_index;
    });
    return out;
}

}  // namespace apsel::optim
