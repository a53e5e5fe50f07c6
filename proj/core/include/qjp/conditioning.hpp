#pragma once

#include <vector>

#include "qjp/measurement.hpp"
#include "qjp/operator_core.hpp"
#include "qjp/qjp_dist.hpp"

namespace qjp {

// Complex-valued conditional function on the spectrum of the conditioning
// observable, with per-outcome definedness (undefined where the outcome
// carries vanishing probability).
struct ConditionalFunction {
    struct Entry {
        double b;
        Complex value;
        bool defined;
    };
    std::vector<Entry> entries;
    Complex alpha;

    const Entry& at(double b) const;
};

ConditionalFunction cond_quasi_expectation(Complex alpha, const SpectralDecomposition& A,
                                           const SpectralDecomposition& B,
                                           const PureState& phi);

Complex weak_value(const Matrix& A, const PureState& phi_i, const PureState& phi_f);

Complex two_state_value(Complex alpha, const Matrix& A, const PureState& phi_i,
                        const PureState& phi_f);

Complex conditional_average_from_qjp(const QuasiProbTable& table, double b);

PureState construct_post_selection(const Matrix& A, const PureState& phi, Complex target);

double amplification_bound(const CompositeState& cs, MeterObservable X);

} // namespace qjp
