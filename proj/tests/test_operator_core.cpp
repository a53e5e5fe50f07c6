#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qjp/operator_core.hpp"
#include "qjp/random.hpp"

using namespace qjp;

namespace {

Vector ket(std::initializer_list<Complex> amps) {
    Vector v(static_cast<int>(amps.size()));
    int i = 0;
    for (Complex a : amps)
        v[i++] = a;
    return v;
}

} // namespace

TEST_CASE("pauli-z decomposition lists increasing eigenvalues with rank-1 projectors") {
    SpectralDecomposition d = spectral_decompose(pauli_z(), 1e-9);
    REQUIRE(d.eigenvalues.size() == 2);
    CHECK(d.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(d.eigenvalues[1] == doctest::Approx(1.0));
    Matrix p_minus = Matrix::Zero(2, 2), p_plus = Matrix::Zero(2, 2);
    p_minus(1, 1) = 1.0;
    p_plus(0, 0) = 1.0;
    CHECK((d.projectors[0] - p_minus).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((d.projectors[1] - p_plus).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("degenerate spectrum merges into one projector") {
    SpectralDecomposition d = spectral_decompose(Matrix::Identity(2, 2), 1e-9);
    REQUIRE(d.eigenvalues.size() == 1);
    CHECK(d.eigenvalues[0] == doctest::Approx(1.0));
    CHECK((d.projectors[0] - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("random hermitian operators reconstruct from their decomposition") {
    RandomSource rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix h = rng.hermitian(4);
        SpectralDecomposition d = spectral_decompose(h, default_eig_tol(h));
        CHECK(operator_norm(d.reconstruct() - h) < 1e-10 * (1.0 + operator_norm(h)));

        // Projector algebra: orthogonal idempotents resolving the identity.
        Matrix sum = Matrix::Zero(4, 4);
        for (std::size_t i = 0; i < d.projectors.size(); ++i) {
            const Matrix& p = d.projectors[i];
            CHECK(operator_norm(p * p - p) < 1e-10);
            CHECK(operator_norm(p - p.adjoint()) < 1e-10);
            for (std::size_t j = 0; j < d.projectors.size(); ++j)
                if (i != j)
                    CHECK(operator_norm(p * d.projectors[j]) < 1e-10);
            sum += p;
        }
        CHECK(operator_norm(sum - Matrix::Identity(4, 4)) < 1e-10);
    }
}

TEST_CASE("near-degenerate eigenvalues merge under the tolerance") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0 + 1e-12;
    SpectralDecomposition d = spectral_decompose(m, 1e-9);
    CHECK(d.eigenvalues.size() == 1);
}

TEST_CASE("functional calculus") {
    SpectralDecomposition d = spectral_decompose(pauli_z(), 1e-9);
    SUBCASE("identity function returns the operator") {
        Matrix m = apply_function(d, [](double a) { return Complex(a, 0.0); });
        CHECK((m - pauli_z()).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("quarter-cycle phase on the spectrum") {
        constexpr double pi = std::numbers::pi;
        Matrix m = apply_function(d, [&](double a) { return std::exp(Complex(0.0, -pi * a / 2.0)); });
        // 2x2 oracle: the matrix is diagonal, so exponentiation acts entrywise.
        CHECK(std::abs(m(0, 0) - Complex(0.0, -1.0)) < 1e-12);
        CHECK(std::abs(m(1, 1) - Complex(0.0, 1.0)) < 1e-12);
        CHECK(std::abs(m(0, 1)) < 1e-12);
    }
    SUBCASE("constant one gives the identity") {
        Matrix m = apply_function(d, [](double) { return Complex(1.0, 0.0); });
        CHECK((m - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("spectral phases are unitary up to long times") {
        RandomSource rng(3);
        Matrix h = rng.hermitian(5);
        SpectralDecomposition dh = spectral_decompose(h, default_eig_tol(h));
        for (double t : {-100.0, -1.0, 0.5, 100.0}) {
            Matrix u = apply_function(dh, [&](double a) { return std::exp(Complex(0.0, -t * a)); });
            CHECK(operator_norm(u * u.adjoint() - Matrix::Identity(5, 5)) < 1e-10);
        }
    }
}

TEST_CASE("expectation values") {
    CHECK(expectation(pauli_z(), PureState(ket({1.0, 0.0}))) == doctest::Approx(1.0));
    CHECK(expectation(pauli_z(), PureState(ket({1.0, 1.0}))) == doctest::Approx(0.0));
    // 2x2 arithmetic oracle: <phi| sigma_x |phi> = 2 Re(conj(a) b) with
    // a = 1/sqrt(2), b = i/sqrt(2), which vanishes.
    CHECK(expectation(pauli_x(), PureState(ket({1.0, Complex(0.0, 1.0)}))) ==
          doctest::Approx(0.0));
    CHECK_THROWS_AS(expectation(pauli_x(), PureState(ket({1.0, 0.0, 0.0}))), DimMismatch);
}

TEST_CASE("born probabilities") {
    SpectralDecomposition z = spectral_decompose(pauli_z(), 1e-9);
    SpectralDecomposition x = spectral_decompose(pauli_x(), 1e-9);
    PureState e0(ket({1.0, 0.0}));

    ProbTable t = born_probabilities(z, e0);
    REQUIRE(t.atoms.size() == 2);
    CHECK(t.atoms[0].second == doctest::Approx(0.0)); // outcome -1, weight 0 retained
    CHECK(t.atoms[1].second == doctest::Approx(1.0));

    // Direct projection oracle: |<+|0>|^2 = |<-|0>|^2 = 1/2.
    ProbTable tx = born_probabilities(x, e0);
    CHECK(tx.atoms[0].second == doctest::Approx(0.5));
    CHECK(tx.atoms[1].second == doctest::Approx(0.5));

    RandomSource rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix h = rng.hermitian(6);
        SpectralDecomposition d = spectral_decompose(h, default_eig_tol(h));
        ProbTable tr = born_probabilities(d, rng.state(6));
        double sum = 0.0;
        for (const auto& [a, w] : tr.atoms) {
            CHECK(w >= 0.0);
            sum += w;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("operator norm") {
    CHECK(operator_norm(pauli_z()) == doctest::Approx(1.0));
    CHECK(operator_norm(2.0 * Matrix::Identity(3, 3)) == doctest::Approx(2.0));
}

TEST_CASE("construction guards") {
    Matrix bad(2, 2);
    bad << 0, 1, 2, 0;
    CHECK_THROWS_AS(spectral_decompose(bad, 1e-9), NotHermitian);
    CHECK_THROWS_AS(HermitianOperator{bad}, NotHermitian);
    CHECK_THROWS_AS(spectral_decompose(Matrix::Identity(300, 300), 1e-9), DimensionLimit);
    CHECK_THROWS_AS(PureState(ket({0.0, 0.0})), Error);
}
