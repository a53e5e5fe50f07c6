#include <doctest.h>

#include <cmath>

#include "qjp/conditioning.hpp"
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

const SpectralDecomposition kZ = spectral_decompose(pauli_z(), 1e-9);
const SpectralDecomposition kX = spectral_decompose(pauli_x(), 1e-9);

} // namespace

TEST_CASE("conditional quasi-expectation") {
    SUBCASE("an eigenvector gives the eigenvalue at every defined outcome") {
        PureState e0(ket({1.0, 0.0}));
        for (Complex alpha : {Complex(0.0), Complex(1.0), Complex(0.0, 1.0)}) {
            ConditionalFunction f = cond_quasi_expectation(alpha, kZ, kX, e0);
            for (const auto& e : f.entries) {
                REQUIRE(e.defined);
                CHECK(std::abs(e.value - 1.0) < 1e-12);
            }
        }
    }
    SUBCASE("conditioning on the observable itself is the identity function") {
        RandomSource rng(53);
        PureState phi = rng.state(2);
        ConditionalFunction f = cond_quasi_expectation(Complex(0.0, 1.0), kZ, kZ, phi);
        for (const auto& e : f.entries)
            if (e.defined)
                CHECK(std::abs(e.value - e.b) < 1e-12);
    }
    SUBCASE("the symmetric point is real-valued") {
        RandomSource rng(59);
        PureState phi = rng.state(3);
        Matrix a = rng.hermitian(3), b = rng.hermitian(3);
        ConditionalFunction f = cond_quasi_expectation(
            0.0, spectral_decompose(a, default_eig_tol(a)),
            spectral_decompose(b, default_eig_tol(b)), phi);
        for (const auto& e : f.entries)
            if (e.defined)
                CHECK(std::abs(e.value.imag()) < 1e-12);
    }
    SUBCASE("zero-probability outcomes are undefined") {
        PureState e0(ket({1.0, 0.0}));
        ConditionalFunction f = cond_quasi_expectation(1.0, kX, kZ, e0);
        CHECK(f.at(1.0).defined);
        CHECK_FALSE(f.at(-1.0).defined);
        CHECK_THROWS_AS(f.at(0.5), ValidationError);
    }
    SUBCASE("total-expectation law") {
        RandomSource rng(61);
        for (int trial = 0; trial < 5; ++trial) {
            PureState phi = rng.state(3);
            Matrix am = rng.hermitian(3), bm = rng.hermitian(3);
            SpectralDecomposition a = spectral_decompose(am, default_eig_tol(am));
            SpectralDecomposition b = spectral_decompose(bm, default_eig_tol(bm));
            ProbTable pb = born_probabilities(b, phi);
            double ea = expectation(am, phi);
            for (Complex alpha : {Complex(0.0), Complex(1.0), Complex(-1.0),
                                  Complex(0.0, 1.0), Complex(0.3, 0.7)}) {
                ConditionalFunction f = cond_quasi_expectation(alpha, a, b, phi);
                Complex total = 0.0;
                for (std::size_t i = 0; i < f.entries.size(); ++i)
                    if (f.entries[i].defined)
                        total += pb.atoms[i].second * f.entries[i].value;
                CHECK(std::abs(total - ea) < 1e-10);
            }
        }
    }
}

TEST_CASE("weak values") {
    PureState plus(ket({1.0, 1.0}));
    PureState e0(ket({1.0, 0.0}));
    PureState e1(ket({0.0, 1.0}));

    CHECK(std::abs(weak_value(Matrix::Identity(2, 2), e0, plus) - 1.0) < 1e-12);
    // Arithmetic oracle: <f|sigma_z|i>/<f|i> = 1 for i = |0>, f = |+>.
    CHECK(std::abs(weak_value(pauli_z(), e0, plus) - 1.0) < 1e-12);

    SUBCASE("a purely imaginary weak value") {
        PureState phi_f(ket({1.0, Complex(0.0, 1.0)}));
        Complex aw = weak_value(pauli_z(), plus, phi_f);
        CHECK(std::abs(aw - Complex(0.0, 1.0)) < 1e-12);
    }
    SUBCASE("orthogonal selections are rejected") {
        CHECK_THROWS_AS(weak_value(pauli_z(), e0, e1), OrthogonalSelection);
    }
    SUBCASE("anomalously large values outside the spectrum") {
        PureState near(ket({1.0, -0.999}));
        Complex aw = weak_value(pauli_z(), plus, near);
        CHECK(std::abs(aw) > 100.0);
    }
}

TEST_CASE("two-state values interpolate the weak value and its conjugate") {
    RandomSource rng(67);
    PureState phi_i = rng.state(3);
    PureState phi_f = rng.state(3);
    Matrix a = rng.hermitian(3);
    Complex aw = weak_value(a, phi_i, phi_f);

    CHECK(std::abs(two_state_value(1.0, a, phi_i, phi_f) - aw) < 1e-12);
    CHECK(std::abs(two_state_value(-1.0, a, phi_i, phi_f) - std::conj(aw)) < 1e-12);
    CHECK(std::abs(two_state_value(0.0, a, phi_i, phi_f) - aw.real()) < 1e-12);
    for (Complex alpha : {Complex(0.0, 1.0), Complex(0.3, 0.7)}) {
        Complex expected = aw.real() + alpha * Complex(0.0, 1.0) * aw.imag();
        CHECK(std::abs(two_state_value(alpha, a, phi_i, phi_f) - expected) < 1e-12);
    }
}

TEST_CASE("conditional averages from quasi-probability tables") {
    RandomSource rng(71);
    PureState phi = rng.state(2);
    PureState plus(ket({1.0, 1.0}));

    SUBCASE("bra-ket table conditioned on a rank-1 outcome gives the weak value") {
        QuasiProbTable kd = qjp_kirkwood_dirac(kZ, kX, phi);
        Complex aw = weak_value(pauli_z(), phi, plus);
        CHECK(std::abs(conditional_average_from_qjp(kd, 1.0) - aw) < 1e-10);
    }
    SUBCASE("matches the direct conditional construction across parameters") {
        for (Complex alpha : {Complex(0.0), Complex(0.0, 1.0), Complex(0.3, 0.7)}) {
            QuasiProbTable t = qjp_additive(alpha, kZ, kX, phi);
            ConditionalFunction f = cond_quasi_expectation(alpha, kZ, kX, phi);
            for (const auto& e : f.entries)
                if (e.defined)
                    CHECK(std::abs(conditional_average_from_qjp(t, e.b) - e.value) < 1e-10);
        }
    }
    SUBCASE("guards") {
        PureState e0(ket({1.0, 0.0}));
        QuasiProbTable t = qjp_additive(1.0, kX, kZ, e0);
        CHECK_THROWS_AS(conditional_average_from_qjp(t, -1.0), IndefiniteConditioning);
        CHECK_THROWS_AS(conditional_average_from_qjp(t, 0.5), ValidationError);
    }
}

TEST_CASE("post-selection synthesis hits a prescribed weak value") {
    RandomSource rng(73);
    Matrix a = rng.hermitian(4);
    PureState phi = rng.state(4);

    SUBCASE("complex target far outside the spectrum") {
        Complex target(10.0, 5.0);
        PureState phi_f = construct_post_selection(a, phi, target);
        CHECK(std::abs(weak_value(a, phi, phi_f) - target) < 1e-9);
    }
    SUBCASE("zero target") {
        PureState phi_f = construct_post_selection(a, phi, 0.0);
        CHECK(std::abs(weak_value(a, phi, phi_f)) < 1e-9);
    }
    SUBCASE("target at the expectation value") {
        Complex mean = expectation(a, phi);
        PureState phi_f = construct_post_selection(a, phi, mean);
        CHECK(std::abs(weak_value(a, phi, phi_f) - mean) < 1e-9);
    }
    SUBCASE("eigenvectors have no free direction") {
        CHECK_THROWS_AS(construct_post_selection(pauli_z(), PureState(ket({1.0, 0.0})), 5.0),
                        EigenvectorInput);
    }
    SUBCASE("identity multiples pin the weak value") {
        CHECK_THROWS_AS(construct_post_selection(2.0 * Matrix::Identity(4, 4), phi, 5.0),
                        TrivialOperator);
    }
}
