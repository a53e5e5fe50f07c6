#pragma once

#include <array>
#include <vector>

#include "qjp/operator_core.hpp"

namespace qjp {

enum class QjpFamily { additive, convolutive, kd, custom };

struct QjpAtom {
    Complex a; // outcome of the first observable; may leave the real axis
    double b;  // outcome of the second observable
    Complex w; // quasi-probability weight
};

struct QuasiProbTable {
    std::vector<QjpAtom> atoms;
    QjpFamily family = QjpFamily::custom;
    Complex alpha = 0.0;
    std::uint64_t state_fingerprint = 0;

    Complex total_weight() const;
};

// Outcome-plane action attached to a family parameter: maps the auxiliary
// outcome pair (a1', a2') to the complex outcome a1 + i a2.
struct AlphaTransform {
    Complex alpha;

    Eigen::Matrix2d matrix() const;
    bool invertible() const { return alpha.imag() != 0.0; }
    Complex apply(double a1p, double a2p) const;
};

struct QjpMarginals {
    ProbTable a_marginal;
    ProbTable b_marginal;
    std::array<std::array<Complex, 4>, 4> moment; // moment[m][n] = sum b^m a^n w
};

Complex char_function(QjpFamily family, Complex alpha,
                      const SpectralDecomposition& A, const SpectralDecomposition& B,
                      const PureState& phi, Complex s, double t);

QuasiProbTable qjp_additive(Complex alpha, const SpectralDecomposition& A,
                            const SpectralDecomposition& B, const PureState& phi);

QuasiProbTable qjp_kirkwood_dirac(const SpectralDecomposition& A,
                                  const SpectralDecomposition& B, const PureState& phi);

QuasiProbTable qjp_convolutive(Complex alpha, const SpectralDecomposition& A,
                               const SpectralDecomposition& B, const PureState& phi);

QuasiProbTable transform_alpha(const QuasiProbTable& table, Complex alpha_new);

QuasiProbTable conjugate(const QuasiProbTable& table);

QjpMarginals marginals_and_moments(const QuasiProbTable& table);

// Atomic Fourier sum: sum of w * exp(-i(<s, a> + t b)) with the real pairing
// <s, a> = Re(s) Re(a) + Im(s) Im(a).
Complex fourier_sum(const QuasiProbTable& table, Complex s, double t);

std::uint64_t state_fingerprint(const PureState& phi);

} // namespace qjp
