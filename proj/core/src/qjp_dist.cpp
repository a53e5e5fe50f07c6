#include "qjp/qjp_dist.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace qjp {

namespace {

Matrix evolution(const SpectralDecomposition& D, double s) {
    return apply_function(D, [s](double a) { return std::exp(Complex(0.0, -s * a)); });
}

double pairing(Complex s, Complex beta) {
    return s.real() * beta.real() + s.imag() * beta.imag();
}

Vector rank1_vector(const Matrix& proj) {
    int best = 0;
    for (int c = 1; c < proj.cols(); ++c)
        if (proj.col(c).norm() > proj.col(best).norm())
            best = c;
    return proj.col(best).normalized();
}

void require_rank1(const SpectralDecomposition& B) {
    for (const auto& p : B.projectors)
        if (std::abs(p.trace().real() - 1.0) > 1e-8)
            throw DegenerateConditioning("construction requires a non-degenerate conditioning observable");
}

void sort_and_merge(std::vector<QjpAtom>& atoms) {
    std::sort(atoms.begin(), atoms.end(), [](const QjpAtom& l, const QjpAtom& r) {
        if (l.b != r.b) return l.b < r.b;
        if (l.a.real() != r.a.real()) return l.a.real() < r.a.real();
        return l.a.imag() < r.a.imag();
    });
    std::vector<QjpAtom> merged;
    for (const auto& atom : atoms) {
        if (!merged.empty() && merged.back().b == atom.b &&
            std::abs(merged.back().a - atom.a) <= 1e-10) {
            merged.back().w += atom.w;
        } else {
            merged.push_back(atom);
        }
    }
    atoms = std::move(merged);
}

} // namespace

Complex QuasiProbTable::total_weight() const {
    Complex acc = 0.0;
    for (const auto& atom : atoms) acc += atom.w;
    return acc;
}

Eigen::Matrix2d AlphaTransform::matrix() const {
    Eigen::Matrix2d t;
    t << (1.0 - alpha.real()) / 2.0, (1.0 + alpha.real()) / 2.0,
         -alpha.imag() / 2.0, alpha.imag() / 2.0;
    return t;
}

Complex AlphaTransform::apply(double a1p, double a2p) const {
    Eigen::Vector2d v = matrix() * Eigen::Vector2d(a1p, a2p);
    return Complex(v[0], v[1]);
}

std::uint64_t state_fingerprint(const PureState& phi) {
    // FNV-1a over the raw amplitude bytes; identification only.
    std::uint64_t h = 1469598103934665603ull;
    for (int i = 0; i < phi.dim(); ++i) {
        double parts[2] = {phi.amplitudes()[i].real(), phi.amplitudes()[i].imag()};
        unsigned char bytes[sizeof parts];
        std::memcpy(bytes, parts, sizeof parts);
        for (unsigned char byte : bytes) {
            h ^= byte;
            h *= 1099511628211ull;
        }
    }
    return h;
}

Complex char_function(QjpFamily family, Complex alpha,
                      const SpectralDecomposition& A, const SpectralDecomposition& B,
                      const PureState& phi, Complex s, double t) {
    if (A.dim() != phi.dim() || B.dim() != phi.dim())
        throw DimMismatch("operator and state dimensions differ");
    const Vector& v = phi.amplitudes();
    Matrix ub = evolution(B, t);
    if (family == QjpFamily::additive || family == QjpFamily::kd) {
        if (family == QjpFamily::kd) alpha = 1.0;
        if (s.imag() != 0.0)
            throw ValidationError("ordered-product family takes a real first frequency");
        Matrix ua = evolution(A, s.real());
        Complex first = v.dot(ub * (ua * v));
        Complex second = v.dot(ua * (ub * v));
        return (1.0 + alpha) / 2.0 * first + (1.0 - alpha) / 2.0 * second;
    }
    if (family == QjpFamily::convolutive) {
        Matrix left = evolution(A, pairing(s, (1.0 - alpha) / 2.0));
        Matrix right = evolution(A, pairing(s, (1.0 + alpha) / 2.0));
        return v.dot(left * (ub * (right * v)));
    }
    throw ValidationError("unsupported family for characteristic function");
}

QuasiProbTable qjp_additive(Complex alpha, const SpectralDecomposition& A,
                            const SpectralDecomposition& B, const PureState& phi) {
    if (A.dim() != phi.dim() || B.dim() != phi.dim())
        throw DimMismatch("operator and state dimensions differ");
    const Vector& v = phi.amplitudes();
    QuasiProbTable table;
    table.family = QjpFamily::additive;
    table.alpha = alpha;
    table.state_fingerprint = state_fingerprint(phi);
    for (std::size_t bi = 0; bi < B.eigenvalues.size(); ++bi) {
        for (std::size_t ai = 0; ai < A.eigenvalues.size(); ++ai) {
            Complex ordered = v.dot(B.projectors[bi] * (A.projectors[ai] * v));
            Complex reversed = v.dot(A.projectors[ai] * (B.projectors[bi] * v));
            Complex w = (1.0 + alpha) / 2.0 * ordered + (1.0 - alpha) / 2.0 * reversed;
            table.atoms.push_back({Complex(A.eigenvalues[ai], 0.0), B.eigenvalues[bi], w});
        }
    }
    sort_and_merge(table.atoms);
    return table;
}

QuasiProbTable qjp_kirkwood_dirac(const SpectralDecomposition& A,
                                  const SpectralDecomposition& B, const PureState& phi) {
    // The bra-ket weights <phi|b><b|Pi_a|phi>, summed over an eigenbasis of a
    // degenerate slice, coincide with the ordered product at parameter one.
    QuasiProbTable table = qjp_additive(1.0, A, B, phi);
    table.family = QjpFamily::kd;
    return table;
}

QuasiProbTable qjp_convolutive(Complex alpha, const SpectralDecomposition& A,
                               const SpectralDecomposition& B, const PureState& phi) {
    if (A.dim() != phi.dim() || B.dim() != phi.dim())
        throw DimMismatch("operator and state dimensions differ");
    require_rank1(B);
    const Vector& v = phi.amplitudes();
    AlphaTransform t{alpha};
    QuasiProbTable table;
    table.family = QjpFamily::convolutive;
    table.alpha = alpha;
    table.state_fingerprint = state_fingerprint(phi);
    for (std::size_t bi = 0; bi < B.eigenvalues.size(); ++bi) {
        Vector bvec = rank1_vector(B.projectors[bi]);
        Complex overlap = bvec.dot(v);
        if (std::norm(overlap) <= 1e-30) {
            // Zero-mass slice: the construction is free here; carry a single
            // weightless placeholder atom.
            table.atoms.push_back({Complex(0.0, 0.0), B.eigenvalues[bi], Complex(0.0, 0.0)});
            continue;
        }
        std::vector<Complex> nu(A.eigenvalues.size());
        for (std::size_t ai = 0; ai < A.eigenvalues.size(); ++ai)
            nu[ai] = bvec.dot(A.projectors[ai] * v) / overlap;
        double mass = std::norm(overlap);
        for (std::size_t a1 = 0; a1 < nu.size(); ++a1)
            for (std::size_t a2 = 0; a2 < nu.size(); ++a2)
                table.atoms.push_back({t.apply(A.eigenvalues[a1], A.eigenvalues[a2]),
                                       B.eigenvalues[bi],
                                       std::conj(nu[a1]) * nu[a2] * mass});
    }
    sort_and_merge(table.atoms);
    return table;
}

QuasiProbTable transform_alpha(const QuasiProbTable& table, Complex alpha_new) {
    if (table.family != QjpFamily::convolutive)
        throw SingularTransform("parameter transport is defined on the convolutive family");
    AlphaTransform told{table.alpha};
    if (!told.invertible())
        throw SingularTransform("source parameter has no invertible outcome transform");
    Eigen::Matrix2d map = AlphaTransform{alpha_new}.matrix() * told.matrix().inverse();
    QuasiProbTable out = table;
    out.alpha = alpha_new;
    for (auto& atom : out.atoms) {
        Eigen::Vector2d v = map * Eigen::Vector2d(atom.a.real(), atom.a.imag());
        atom.a = Complex(v[0], v[1]);
    }
    sort_and_merge(out.atoms);
    return out;
}

QuasiProbTable conjugate(const QuasiProbTable& table) {
    QuasiProbTable out = table;
    for (auto& atom : out.atoms)
        atom.w = std::conj(atom.w);
    switch (table.family) {
    case QjpFamily::additive:
        out.alpha = -std::conj(table.alpha);
        break;
    case QjpFamily::kd:
        out.family = QjpFamily::additive;
        out.alpha = -1.0;
        break;
    case QjpFamily::convolutive:
        // Conjugation swaps the auxiliary outcome pair, which lands on the
        // same point of the outcome plane under the negated parameter.
        out.alpha = -table.alpha;
        break;
    case QjpFamily::custom:
        break;
    }
    sort_and_merge(out.atoms);
    return out;
}

QjpMarginals marginals_and_moments(const QuasiProbTable& table) {
    QjpMarginals out;

    // Second-observable marginal: weights grouped by b.
    std::vector<std::pair<double, Complex>> bmarg;
    for (const auto& atom : table.atoms) {
        if (!bmarg.empty() && bmarg.back().first == atom.b)
            bmarg.back().second += atom.w;
        else
            bmarg.emplace_back(atom.b, atom.w);
    }
    for (const auto& [b, w] : bmarg) {
        if (std::abs(w.imag()) > 1e-8)
            throw MarginalViolation("second-observable marginal carries imaginary mass");
        out.b_marginal.atoms.emplace_back(b, w.real());
    }

    // First-observable marginal: group by outcome a across b; off-axis atoms
    // must cancel, leaving real outcomes only.
    std::vector<std::pair<Complex, Complex>> amarg;
    for (const auto& atom : table.atoms) {
        bool found = false;
        for (auto& [a, w] : amarg) {
            if (std::abs(a - atom.a) <= 1e-10) {
                w += atom.w;
                found = true;
                break;
            }
        }
        if (!found)
            amarg.emplace_back(atom.a, atom.w);
    }
    std::erase_if(amarg, [](const auto& e) { return std::abs(e.second) <= 1e-10; });
    std::sort(amarg.begin(), amarg.end(),
              [](const auto& l, const auto& r) { return l.first.real() < r.first.real(); });
    for (const auto& [a, w] : amarg) {
        if (std::abs(a.imag()) > 1e-8 || std::abs(w.imag()) > 1e-8)
            throw MarginalViolation("first-observable marginal carries imaginary mass");
        out.a_marginal.atoms.emplace_back(a.real(), w.real());
    }

    for (int m = 0; m <= 3; ++m) {
        for (int n = 0; n <= 3; ++n) {
            Complex acc = 0.0;
            for (const auto& atom : table.atoms)
                acc += std::pow(atom.b, m) * std::pow(atom.a, n) * atom.w;
            out.moment[m][n] = acc;
        }
    }
    return out;
}

Complex fourier_sum(const QuasiProbTable& table, Complex s, double t) {
    Complex acc = 0.0;
    for (const auto& atom : table.atoms) {
        double phase = s.real() * atom.a.real() + s.imag() * atom.a.imag() + t * atom.b;
        acc += atom.w * std::exp(Complex(0.0, -phase));
    }
    return acc;
}

} // namespace qjp
