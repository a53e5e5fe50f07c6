#pragma once

#include <random>

#include "qjp/operator_core.hpp"

namespace qjp {

inline constexpr std::uint64_t kDefaultSeed = 42;

// Deterministic source of random states and observables; everything flows
// from one explicitly seeded engine.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

    double uniform(double lo, double hi);
    double normal();
    Complex complex_normal();

    PureState state(int dim);
    Matrix hermitian(int dim);
    std::vector<double> real_function(int n, double lo, double hi);

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

} // namespace qjp
