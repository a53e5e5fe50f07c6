#include "qjp/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qjp {

Matrix SpectralDecomposition::reconstruct() const {
    Matrix acc = Matrix::Zero(dim(), dim());
    for (std::size_t i = 0; i < eigenvalues.size(); ++i)
        acc += eigenvalues[i] * projectors[i];
    return acc;
}

static void check_hermitian(const Matrix& m) {
    if (m.rows() != m.cols())
        throw NotHermitian("matrix is not square");
    if (m.rows() < 1)
        throw NotHermitian("matrix is empty");
    if (m.rows() > kMaxDim)
        throw DimensionLimit("dimension exceeds supported maximum of 256");
    double scale = m.cwiseAbs().maxCoeff();
    double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (dev > 1e-12 * std::max(scale, 1.0))
        throw NotHermitian("matrix deviates from its conjugate transpose");
}

double default_eig_tol(const Matrix& op) {
    return 1e-9 * (1.0 + operator_norm(op));
}

SpectralDecomposition spectral_decompose(const Matrix& op, double eig_tol) {
    check_hermitian(op);
    if (!(eig_tol > 0.0))
        throw Error("eig_tol must be positive");

    Eigen::SelfAdjointEigenSolver<Matrix> solver(op);
    if (solver.info() != Eigen::Success)
        throw Error("eigensolver failed to converge");
    const Eigen::VectorXd& evals = solver.eigenvalues(); // increasing
    const Matrix& evecs = solver.eigenvectors();

    SpectralDecomposition out;
    const int n = static_cast<int>(evals.size());
    int i = 0;
    while (i < n) {
        int j = i;
        while (j + 1 < n && evals[j + 1] - evals[j] <= eig_tol) ++j;
        // Merge the cluster [i, j]: weight-averaged eigenvalue, summed projector.
        double lambda = 0.0;
        Matrix proj = Matrix::Zero(op.rows(), op.cols());
        for (int k = i; k <= j; ++k) {
            lambda += evals[k];
            proj += evecs.col(k) * evecs.col(k).adjoint();
        }
        lambda /= (j - i + 1);
        out.eigenvalues.push_back(lambda);
        out.projectors.push_back(std::move(proj));
        i = j + 1;
    }
    return out;
}

SpectralDecomposition spectral_decompose(const HermitianOperator& op, double eig_tol) {
    return spectral_decompose(op.entries(), eig_tol);
}

HermitianOperator::HermitianOperator(const Matrix& entries)
    : entries_((entries + entries.adjoint()) / 2.0) {
    check_hermitian(entries);
    decomp_ = spectral_decompose(entries_, default_eig_tol(entries_));
}

PureState::PureState(const Vector& amplitudes) : amplitudes_(amplitudes) {
    if (amplitudes_.size() < 1)
        throw DimMismatch("state vector is empty");
    if (amplitudes_.size() > kMaxDim)
        throw DimensionLimit("dimension exceeds supported maximum of 256");
    double norm = amplitudes_.norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw Error("state vector has vanishing or non-finite norm");
    amplitudes_ /= norm;
}

Matrix apply_function(const SpectralDecomposition& decomp,
                      const std::function<Complex(double)>& f) {
    Matrix acc = Matrix::Zero(decomp.dim(), decomp.dim());
    for (std::size_t i = 0; i < decomp.eigenvalues.size(); ++i)
        acc += f(decomp.eigenvalues[i]) * decomp.projectors[i];
    return acc;
}

double expectation(const Matrix& op, const PureState& state) {
    if (op.rows() != state.dim())
        throw DimMismatch("operator and state dimensions differ");
    Complex val = state.amplitudes().dot(op * state.amplitudes());
    if (std::abs(val.imag()) > 1e-12 * std::max(1.0, std::abs(val.real())))
        throw Error("expectation has non-negligible imaginary part");
    return val.real();
}

double expectation(const HermitianOperator& op, const PureState& state) {
    return expectation(op.entries(), state);
}

ProbTable born_probabilities(const SpectralDecomposition& decomp, const PureState& state) {
    if (decomp.dim() != state.dim())
        throw DimMismatch("decomposition and state dimensions differ");
    ProbTable table;
    for (std::size_t i = 0; i < decomp.eigenvalues.size(); ++i) {
        double w = (decomp.projectors[i] * state.amplitudes()).squaredNorm();
        table.atoms.emplace_back(decomp.eigenvalues[i], w);
    }
    return table;
}

double operator_norm(const Matrix& op) {
    if (op.rows() != op.cols())
        throw DimMismatch("operator_norm requires a square matrix");
    Eigen::JacobiSVD<Matrix> svd(op);
    return svd.singularValues()(0);
}

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

} // namespace qjp
