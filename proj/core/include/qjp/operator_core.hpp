#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "qjp/errors.hpp"

namespace qjp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr int kMaxDim = 256;

// Spectral resolution of a Hermitian matrix: distinct eigenvalues in strictly
// increasing order, each paired with its orthogonal projector.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    std::vector<Matrix> projectors;

    int dim() const { return projectors.empty() ? 0 : static_cast<int>(projectors.front().rows()); }
    int n_eigenvalues() const { return static_cast<int>(eigenvalues.size()); }
    Matrix reconstruct() const;
};

// Dense Hermitian matrix with an eagerly computed, cached decomposition.
class HermitianOperator {
public:
    explicit HermitianOperator(const Matrix& entries);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const Matrix& entries() const { return entries_; }
    const SpectralDecomposition& decomposition() const { return decomp_; }

private:
    Matrix entries_;
    SpectralDecomposition decomp_;
};

class PureState {
public:
    explicit PureState(const Vector& amplitudes);

    int dim() const { return static_cast<int>(amplitudes_.size()); }
    const Vector& amplitudes() const { return amplitudes_; }

private:
    Vector amplitudes_; // normalized to unit Euclidean norm
};

struct ProbTable {
    std::vector<std::pair<double, double>> atoms; // (outcome, weight), outcomes increasing
};

double default_eig_tol(const Matrix& op);
SpectralDecomposition spectral_decompose(const Matrix& op, double eig_tol);
SpectralDecomposition spectral_decompose(const HermitianOperator& op, double eig_tol);

Matrix apply_function(const SpectralDecomposition& decomp,
                      const std::function<Complex(double)>& f);

double expectation(const Matrix& op, const PureState& state);
double expectation(const HermitianOperator& op, const PureState& state);

ProbTable born_probabilities(const SpectralDecomposition& decomp, const PureState& state);

double operator_norm(const Matrix& op);

// Common fixed matrices.
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

} // namespace qjp
