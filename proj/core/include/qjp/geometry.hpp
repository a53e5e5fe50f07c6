#pragma once

#include "qjp/conditioning.hpp"
#include "qjp/operator_core.hpp"

namespace qjp {

// State-induced sesquilinear form on operators; positive for parameters in
// [-1, 1], which is the only window admitted here.
class OperatorInnerProduct {
public:
    OperatorInnerProduct(const PureState& psi, double alpha);

    const PureState& psi() const { return psi_; }
    double alpha() const { return alpha_; }

private:
    PureState psi_;
    double alpha_;
};

struct PythagorasReport {
    double lhs;     // squared distance from A to the proxy function of B
    double rhs_sum; // squared projection residual plus squared in-algebra leg
    double gap;
};

Complex inner_product(const OperatorInnerProduct& ip, const Matrix& Y, const Matrix& X);

double op_norm_squared(const OperatorInnerProduct& ip, const Matrix& X);

Complex quantum_covariance(Complex alpha, const Matrix& A, const Matrix& B,
                           const PureState& psi);

ConditionalFunction project_onto_algebra(double alpha, const Matrix& A,
                                         const SpectralDecomposition& B,
                                         const PureState& psi);

// Assemble sum f(b) Pi_b from per-outcome coefficients (entries aligned with
// B.eigenvalues; undefined entries contribute zero).
Matrix function_of_B(const SpectralDecomposition& B, const ConditionalFunction& f);

PythagorasReport pythagorean_residual(double alpha, const Matrix& A,
                                      const SpectralDecomposition& B, const PureState& psi,
                                      const std::vector<double>& f_values);

} // namespace qjp
