/*
   Copyright 2026 The hpscan Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/


#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace hpscan {

// Seeded generator whose output does not depend on the standard library's
// distribution implementations, so corpora and folds match across toolchains.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_{seed} {}

    std::uint64_t next() { return engine_(); }

    // [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Unbiased integer in [0, n); n > 0.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit{-n % n};
        for (;;) {
            const auto r{next()};
            if (r >= limit) return r % n;
        }
    }

    // Inclusive range.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool chance(double p) { return uniform() < p; }

    // Box-Muller; one value per call.
    double normal(double mean = 0.0, double sd = 1.0) {
        double u{uniform()};
        while (u <= 0.0) u = uniform();
        const double v{uniform()};
        return mean + sd * std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * 3.141592653589793 * v);
    }

    double lognormal(double mu, double sigma) { return std::exp(normal(mu, sigma)); }

    // Index drawn proportionally to non-negative weights.
    std::size_t pick(std::span<const double> weights) {
        double total{0};
        for (const double w : weights) total += w;
        double r{uniform() * total};
        for (std::size_t i{0}; i < weights.size(); ++i) {
            if (r < weights[i]) return i;
            r -= weights[i];
        }
        return weights.size() - 1;
    }

    // Fisher-Yates.
    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i{items.size()}; i > 1; --i) {
            const auto j{static_cast<std::size_t>(below(i))};
            std::swap(items[i - 1], items[j]);
        }
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace hpscan
