#include "qjp/conditioning.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace qjp {

const ConditionalFunction::Entry& ConditionalFunction::at(double b) const {
    for (const auto& e : entries)
        if (std::abs(e.b - b) <= 1e-9 * (1.0 + std::abs(b)))
            return e;
    throw ValidationError("outcome is not in the spectrum of the conditioning observable");
}

ConditionalFunction cond_quasi_expectation(Complex alpha, const SpectralDecomposition& A,
                                           const SpectralDecomposition& B,
                                           const PureState& phi) {
    if (A.dim() != phi.dim() || B.dim() != phi.dim())
        throw DimMismatch("operator and state dimensions differ");
    Matrix amat = A.reconstruct();
    ConditionalFunction out;
    out.alpha = alpha;
    for (std::size_t i = 0; i < B.eigenvalues.size(); ++i) {
        double pb = (B.projectors[i] * phi.amplitudes()).squaredNorm();
        ConditionalFunction::Entry entry{B.eigenvalues[i], 0.0, false};
        if (pb >= kProbFloor) {
            Complex r = phi.amplitudes().dot(B.projectors[i] * (amat * phi.amplitudes())) / pb;
            entry.value = (1.0 + alpha) / 2.0 * r + (1.0 - alpha) / 2.0 * std::conj(r);
            entry.defined = true;
        }
        out.entries.push_back(entry);
    }
    return out;
}

Complex weak_value(const Matrix& A, const PureState& phi_i, const PureState& phi_f) {
    if (A.rows() != phi_i.dim() || phi_i.dim() != phi_f.dim())
        throw DimMismatch("operator and state dimensions differ");
    Complex overlap = phi_f.amplitudes().dot(phi_i.amplitudes());
    if (std::norm(overlap) < kProbFloor)
        throw OrthogonalSelection("pre- and post-selection are orthogonal");
    return phi_f.amplitudes().dot(A * phi_i.amplitudes()) / overlap;
}

Complex two_state_value(Complex alpha, const Matrix& A, const PureState& phi_i,
                        const PureState& phi_f) {
    Complex aw = weak_value(A, phi_i, phi_f);
    return (1.0 + alpha) / 2.0 * aw + (1.0 - alpha) / 2.0 * std::conj(aw);
}

Complex conditional_average_from_qjp(const QuasiProbTable& table, double b) {
    Complex num = 0.0, den = 0.0;
    bool seen = false;
    for (const auto& atom : table.atoms) {
        if (std::abs(atom.b - b) <= 1e-9 * (1.0 + std::abs(b))) {
            num += atom.a * atom.w;
            den += atom.w;
            seen = true;
        }
    }
    if (!seen)
        throw ValidationError("outcome is not present in the table");
    if (std::abs(den) < kProbFloor)
        throw IndefiniteConditioning("conditioning outcome carries vanishing weight");
    return num / den;
}

PureState construct_post_selection(const Matrix& A, const PureState& phi, Complex target) {
    if (A.rows() != phi.dim())
        throw DimMismatch("operator and state dimensions differ");
    double nrm_a = operator_norm(A);
    Matrix centred = A - (A.trace() / static_cast<double>(A.rows())) * Matrix::Identity(A.rows(), A.cols());
    if (operator_norm(centred) <= 1e-12 * (1.0 + nrm_a))
        throw TrivialOperator("operator is a multiple of the identity");

    double mean = expectation(A, phi);
    Vector chi = A * phi.amplitudes() - mean * phi.amplitudes();
    double spread = chi.norm();
    if (spread <= 1e-10)
        throw EigenvectorInput("state is an eigenvector of the operator");
    chi /= spread;

    Complex cprime = (target - mean) / spread;
    if (std::abs(cprime) < 1e-12)
        cprime = 1e-12; // target equals the expectation; any small value works
    Vector out = phi.amplitudes() / std::conj(cprime) + chi;
    return PureState(out);
}

double amplification_bound(const CompositeState& cs, MeterObservable X) {
    Matrix gram = branch_overlap_matrix(cs, X, true);
    Matrix mat = branch_overlap_matrix(cs, X, false);
    gram = (gram + gram.adjoint()) / 2.0;
    mat = (mat + mat.adjoint()) / 2.0;

    // Restrict to the numerically independent part of the branch span, then
    // solve the generalized Hermitian eigenproblem in that orthonormal basis.
    Eigen::SelfAdjointEigenSolver<Matrix> gsolve(gram);
    const Eigen::VectorXd& lam = gsolve.eigenvalues();
    double lmax = lam.maxCoeff();
    std::vector<int> keep;
    for (int i = 0; i < lam.size(); ++i)
        if (lam[i] > 1e-12 * lmax)
            keep.push_back(i);
    Matrix basis(gram.rows(), keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i)
        basis.col(i) = gsolve.eigenvectors().col(keep[i]) / std::sqrt(lam[keep[i]]);
    Matrix reduced = basis.adjoint() * mat * basis;
    Eigen::SelfAdjointEigenSolver<Matrix> msolve(reduced);
    return msolve.eigenvalues().cwiseAbs().maxCoeff();
}

} // namespace qjp
