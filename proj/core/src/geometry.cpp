#include "qjp/geometry.hpp"

#include <cmath>

namespace qjp {

OperatorInnerProduct::OperatorInnerProduct(const PureState& psi, double alpha)
    : psi_(psi), alpha_(alpha) {
    if (!(alpha >= -1.0 && alpha <= 1.0))
        throw ValidationError("inner-product parameter must lie in [-1, 1]");
}

Complex inner_product(const OperatorInnerProduct& ip, const Matrix& Y, const Matrix& X) {
    if (Y.rows() != ip.psi().dim() || X.rows() != ip.psi().dim())
        throw DimMismatch("operator and state dimensions differ");
    const Vector& v = ip.psi().amplitudes();
    Complex first = (Y * v).dot(X * v);
    Complex second = (X.adjoint() * v).dot(Y.adjoint() * v);
    return (1.0 + ip.alpha()) / 2.0 * first + (1.0 - ip.alpha()) / 2.0 * second;
}

double op_norm_squared(const OperatorInnerProduct& ip, const Matrix& X) {
    Complex val = inner_product(ip, X, X);
    if (val.real() < -1e-12)
        throw Error("squared norm came out negative beyond tolerance");
    return std::max(val.real(), 0.0);
}

Complex quantum_covariance(Complex alpha, const Matrix& A, const Matrix& B,
                           const PureState& psi) {
    if (A.rows() != psi.dim() || B.rows() != psi.dim())
        throw DimMismatch("operator and state dimensions differ");
    const Vector& v = psi.amplitudes();
    Complex ab = v.dot(A * (B * v));
    Complex ba = v.dot(B * (A * v));
    double ea = v.dot(A * v).real();
    double eb = v.dot(B * v).real();
    Complex cov_s = (ab + ba) / 2.0 - ea * eb;
    Complex cov_a = (ab - ba) / Complex(0.0, 2.0);
    return cov_s + alpha * Complex(0.0, 1.0) * cov_a;
}

ConditionalFunction project_onto_algebra(double alpha, const Matrix& A,
                                         const SpectralDecomposition& B,
                                         const PureState& psi) {
    if (A.rows() != psi.dim() || B.dim() != psi.dim())
        throw DimMismatch("operator and state dimensions differ");
    if (!(alpha >= -1.0 && alpha <= 1.0))
        throw ValidationError("projection parameter must lie in [-1, 1]");
    ConditionalFunction out;
    out.alpha = alpha;
    const Vector& v = psi.amplitudes();
    for (std::size_t i = 0; i < B.eigenvalues.size(); ++i) {
        double pb = (B.projectors[i] * v).squaredNorm();
        ConditionalFunction::Entry entry{B.eigenvalues[i], 0.0, false};
        if (pb >= kProbFloor) {
            Complex r = v.dot(B.projectors[i] * (A * v)) / pb;
            entry.value = (1.0 + alpha) / 2.0 * r + (1.0 - alpha) / 2.0 * std::conj(r);
            entry.defined = true;
        }
        out.entries.push_back(entry);
    }
    return out;
}

Matrix function_of_B(const SpectralDecomposition& B, const ConditionalFunction& f) {
    Matrix acc = Matrix::Zero(B.dim(), B.dim());
    for (std::size_t i = 0; i < B.eigenvalues.size(); ++i) {
        const auto& entry = f.entries[i];
        if (entry.defined)
            acc += entry.value * B.projectors[i];
    }
    return acc;
}

PythagorasReport pythagorean_residual(double alpha, const Matrix& A,
                                      const SpectralDecomposition& B, const PureState& psi,
                                      const std::vector<double>& f_values) {
    if (f_values.size() != B.eigenvalues.size())
        throw DimMismatch("proxy function must assign a value to every outcome");
    OperatorInnerProduct ip(psi, alpha);
    ConditionalFunction proj = project_onto_algebra(alpha, A, B, psi);
    Matrix p = function_of_B(B, proj);

    Matrix fb = Matrix::Zero(B.dim(), B.dim());
    for (std::size_t i = 0; i < B.eigenvalues.size(); ++i)
        fb += f_values[i] * B.projectors[i];

    double lhs = op_norm_squared(ip, A - fb);
    double residual = op_norm_squared(ip, A - p);
    double leg = op_norm_squared(ip, p - fb);
    double rhs = residual + leg;
    return {lhs, rhs, std::abs(lhs - rhs)};
}

} // namespace qjp
