#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace apsel {

// Error taxonomy, mapped to CLI exit codes: config -> 2, data -> 3, format -> 4.
// Usage errors are API misuse (bad arguments) and map to 2 as well.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// splitmix64 step; used both as a mixer and to derive independent seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic seed derivation: fold every part through splitmix64.
// All randomness in the project flows from one master seed through this.
inline std::uint64_t seed_mix(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x6a09e667f3bcc909ULL;
    for (std::uint64_t p : parts) {
        h ^= splitmix64(p);
        (void)splitmix64(h);
        h = splitmix64(h);
    }
    return h;
}

// Stream tags so distinct pipeline stages never share a derived seed.
namespace seed_tag {
inline constexpr std::uint64_t suite = 0x01;
inline constexpr std::uint64_t split = 0x02;
inline constexpr std::uint64_t runs = 0x03;
inline constexpr std::uint64_t features = 0x04;
inline constexpr std::uint64_t sbp = 0x05;
}  // namespace seed_tag

// mt19937_64 with hand-rolled output transforms. The standard engine is
// bit-exact across implementations; the standard distributions are not,
// so we do our own uniform/gauss draws.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // unbiased integer in [0, n)
    std::uint64_t uniform_index(std::uint64_t n) {
        if (n == 0) throw UsageError("uniform_index: n must be positive");
        const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % n;
        std::uint64_t r;
        do {
            r = eng_();
        } while (r >= limit);
        return r % n;
    }

    // standard normal via polar Box-Muller, spare cached
    double gauss() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    // first k slots of a Fisher-Yates shuffle; returns k distinct picks from items
    template <typename T>
    std::vector<T> sample_without_replacement(std::vector<T> items, std::size_t k) {
        if (k > items.size()) throw UsageError("sample_without_replacement: k exceeds pool");
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(uniform_index(items.size() - i));
            std::swap(items[i], items[j]);
        }
        items.resize(k);
        return items;
    }

    std::uint64_t raw() { return eng_(); }

  private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Index-based parallel map. Work item i writes only to its own slot, so the
// result is identical for any worker count, including 0 (= hardware choice).
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body);

std::string format_sig6(double v);  // 6 significant digits, CSV float convention

}  // namespace apsel
