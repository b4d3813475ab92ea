#pragma once

// Seeded random inputs for property tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pcy/catalog.hpp"
#include "pcy/cost_engine.hpp"

namespace pcy::testing {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin() { return integer(0, 1) == 1; }

    PurifierSpec spec(int index = 0) {
        PurifierSpec s;
        s.id = "unit-" + std::to_string(index);
        s.brand = "Brand" + std::to_string(integer(0, 9));
        s.model = "M" + std::to_string(index);
        s.initial_cost_usd = uniform(0.0, 3000.0);
        s.cadr_cfm = uniform(1.0, 1200.0);
        s.rated_watts = uniform(1.0, 400.0);
        if (coin())
            s.filter_plan = PeriodicFilter{uniform(0.0, 300.0), uniform(30.0, 730.0)};
        else
            s.filter_plan = AnnualizedFilter{uniform(0.0, 400.0)};
        return s;
    }

    CostContext context(InitialCostMode mode) {
        CostContext c;
        c.rate_usd_per_kwh = uniform(0.05, 0.6);
        c.t_operate_days = uniform(0.0, 365.0);
        c.params.initial_cost_mode = mode;
        return c;
    }

    std::vector<double> values(std::size_t n, double lo, double hi) {
        std::vector<double> v(n);
        for (auto& x : v) x = uniform(lo, hi);
        return v;
    }

    std::string bytes(std::size_t max_len) {
        std::string s(static_cast<std::size_t>(integer(0, static_cast<int>(max_len))), '\0');
        for (auto& c : s) c = static_cast<char>(integer(0, 255));
        return s;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace pcy::testing
