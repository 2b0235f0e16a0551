#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "apsel/common.hpp"

namespace apsel::suite {

inline constexpr double kDomainLo = -5.0;
inline constexpr double kDomainHi = 5.0;
inline constexpr double kOptimumLo = -4.0;
inline constexpr double kOptimumHi = 4.0;

enum class BaseFunctionId : int {
    sphere = 0,
    ellipsoid = 1,
    rastrigin = 2,
    rosenbrock_rotated = 3,
    attractive_sector = 4,
    different_powers = 5,
    schaffer = 6,
    bent_cigar = 7,
};
inline constexpr int kNumBaseFunctions = 8;

const char* base_function_name(BaseFunctionId id);

// Raw component value at z (already shifted/rotated). Zero exactly at z = 0,
// nonnegative and finite everywhere on the search domain.
double base_eval(BaseFunctionId id, std::span<const double> z);

/// A generated benchmark instance: a weighted log(1+.) combination of rotated
/// base components sharing one optimum x_opt, so f(x_opt) = 0 by construction.
class GeneratedFunction {
  public:
    // Derives weights, x_opt and rotations deterministically from (id, dimension, seed).
    static GeneratedFunction from_seed(int id, int dimension, std::uint64_t seed);

    // Rebuild from persisted fields; rotations are regenerated from the seed.
    static GeneratedFunction from_record(int id, int dimension, std::uint64_t seed,
                                         std::vector<double> weights,
                                         std::vector<double> x_opt);

    // Test hook: explicit weights over the 8 components, rotations from seed.
    static GeneratedFunction with_weights(int id, int dimension, std::uint64_t seed,
                                          std::vector<double> weights,
                                          std::vector<double> x_opt);

    double evaluate(std::span<const double> x) const;

    int id() const { return id_; }
    int dimension() const { return dimension_; }
    std::uint64_t seed() const { return seed_; }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<double>& x_opt() const { return x_opt_; }
    double f_opt() const { return 0.0; }

  private:
    GeneratedFunction() = default;
    void build_rotations();

    int id_ = 0;
    int dimension_ = 0;
    std::uint64_t seed_ = 0;
    std::vector<double> weights_;           // size 8, nonnegative, sums to 1
    std::vector<double> x_opt_;             // in [-4, 4]^d
    std::vector<std::vector<double>> rot_;  // row-major d*d per active component, empty if inactive
};

struct SuiteSpec {
    int dimension = 2;
    int n_functions = 80;
    double train_fraction = 0.75;
    std::uint64_t master_seed = 1;
};

struct Suite {
    SuiteSpec spec;
    std::vector<GeneratedFunction> functions;  // indexed by id
    std::vector<int> train_ids;
    std::vector<int> test_ids;
};

Suite generate_suite(const SuiteSpec& spec);

}  // namespace apsel::suite
