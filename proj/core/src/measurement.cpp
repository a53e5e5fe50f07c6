#include "qjp/measurement.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace qjp {

namespace {

int spectrum_index(const SpectralDecomposition& B, double b) {
    double scale = 1.0;
    for (double ev : B.eigenvalues) scale = std::max(scale, std::abs(ev));
    for (std::size_t i = 0; i < B.eigenvalues.size(); ++i)
        if (std::abs(B.eigenvalues[i] - b) <= 1e-9 * scale)
            return static_cast<int>(i);
    throw ValidationError("conditioning outcome is not in the spectrum");
}

CVec apply_momentum(const Grid& g, const CVec& samples) {
    CVec hat = fourier_forward(g, samples);
    for (int j = 0; j < g.n_points; ++j)
        hat[j] *= g.p(j);
    return fourier_inverse(g, hat);
}

} // namespace

CompositeState evolve_composite(const SpectralDecomposition& A, const PureState& phi,
                                const GridWavefunction& psi, double g, MeterObservable Y) {
    if (A.dim() != phi.dim())
        throw DimMismatch("target operator and state dimensions differ");
    GridWavefunction base = psi.normalized();
    CompositeState cs{{}, g, Y};
    for (std::size_t n = 0; n < A.eigenvalues.size(); ++n) {
        double a = A.eigenvalues[n];
        Vector target = A.projectors[n] * phi.amplitudes();
        GridWavefunction meter = base;
        if (Y == MeterObservable::momentum) {
            meter = translate(base, g * a);
        } else {
            CVec s = base.samples;
            for (int k = 0; k < base.grid.n_points; ++k)
                s[k] *= std::exp(Complex(0.0, -g * a * base.grid.x(k)));
            meter = GridWavefunction(base.grid, s);
        }
        cs.branches.push_back({std::move(target), std::move(meter), a});
    }
    return cs;
}

Density um_outcome_density(const CompositeState& cs, MeterObservable X) {
    // The projected target vectors are mutually orthogonal, so the reduced
    // meter state is an incoherent mixture of the branch profiles.
    bool first = true;
    Density acc{Grid(16, 1.0), RVec()};
    for (const auto& br : cs.branches) {
        double w = br.target.squaredNorm();
        Density d = (X == MeterObservable::position) ? position_density(br.meter)
                                                     : momentum_density(br.meter);
        if (first) {
            acc = Density{d.grid, RVec::Zero(d.grid.n_points)};
            first = false;
        }
        acc.samples += w * d.samples;
    }
    return acc;
}

double um_expectation(const CompositeState& cs, MeterObservable X) {
    return um_outcome_density(cs, X).mean();
}

Density spectral_convolution(const Density& rho, const ProbTable& spectrum, double g) {
    const Grid& grid = rho.grid;
    CVec values = rho.samples.cast<Complex>();
    CVec hat = fourier_forward(grid, values);
    for (int j = 0; j < grid.n_points; ++j) {
        Complex factor = 0.0;
        for (const auto& [a, w] : spectrum.atoms)
            factor += w * std::exp(Complex(0.0, -g * a * grid.p(j)));
        hat[j] *= factor;
    }
    CVec out = fourier_inverse(grid, hat);
    RVec result(grid.n_points);
    for (int k = 0; k < grid.n_points; ++k)
        result[k] = out[k].real();
    return Density{grid, result};
}

std::vector<std::pair<double, double>>
strong_um_recover(const SpectralDecomposition& A, const PureState& phi,
                  const GridWavefunction& psi, const std::vector<double>& g_list) {
    ProbTable born = born_probabilities(A, phi);
    const auto& evs = A.eigenvalues;
    std::vector<std::pair<double, double>> report;
    for (double g : g_list) {
        if (!(g > 0.0))
            throw ValidationError("recovery requires positive couplings");
        CompositeState cs = evolve_composite(A, phi, psi, g);
        Density rho = um_outcome_density(cs, MeterObservable::position);
        // Bin the outcome density into the g-scaled decision cells around each
        // eigenvalue and compare the recovered masses with the Born weights.
        // The outermost cells are clipped at half the minimal spectral gap so
        // that far-tail mass counts as error rather than silently migrating
        // between symmetric cells.
        double gap = 2.0;
        for (std::size_t n = 1; n < evs.size(); ++n)
            gap = std::min(gap, evs[n] - evs[n - 1]);
        double err = 0.0;
        for (std::size_t n = 0; n < evs.size(); ++n) {
            double lo = (n == 0) ? g * (evs.front() - gap / 2.0)
                                 : g * (evs[n - 1] + evs[n]) / 2.0;
            double hi = (n + 1 == evs.size()) ? g * (evs.back() + gap / 2.0)
                                              : g * (evs[n] + evs[n + 1]) / 2.0;
            double mass = 0.0;
            for (int k = 0; k < rho.grid.n_points; ++k) {
                double x = rho.grid.x(k);
                if (x >= lo && x < hi)
                    mass += rho.samples[k] * rho.grid.dx;
            }
            err += std::abs(mass - born.atoms[n].second);
        }
        report.emplace_back(g, err);
    }
    return report;
}

std::vector<double>
weak_um_moments(const SpectralDecomposition& A, const PureState& phi,
                const GridWavefunction& psi, int n_max, double step) {
    if (n_max < 0 || n_max > 3)
        throw ValidationError("moment order must lie in [0, 3]");
    if (!(step > 0.0))
        throw ValidationError("step must be positive");

    auto G = [&](int m, double g) {
        CompositeState cs = evolve_composite(A, phi, psi, g);
        Density rho = um_outcome_density(cs, MeterObservable::position);
        double acc = 0.0;
        for (int k = 0; k < rho.grid.n_points; ++k)
            acc += std::pow(rho.grid.x(k), m) * rho.samples[k] * rho.grid.dx;
        return acc;
    };

    // m-th derivative of g -> Int x^m rho^g dx at g = 0; the integrand is a
    // degree-m polynomial in g, so the minimal central stencils are exact up
    // to grid noise and one Richardson step controls the residual.
    auto stencil = [&](int m, double s) -> double {
        switch (m) {
        case 1: return (G(1, s) - G(1, -s)) / (2.0 * s);
        case 2: return (G(2, s) - 2.0 * G(2, 0.0) + G(2, -s)) / (s * s);
        case 3: return (G(3, 2.0 * s) - 2.0 * G(3, s) + 2.0 * G(3, -s) - G(3, -2.0 * s))
                        / (2.0 * s * s * s);
        default: return 0.0;
        }
    };

    std::vector<double> moments;
    double factorial = 1.0;
    for (int m = 0; m <= n_max; ++m) {
        if (m == 0) {
            moments.push_back(G(0, 0.0));
            continue;
        }
        factorial *= m;
        double coarse = stencil(m, step);
        double fine = stencil(m, step / 2.0);
        if (std::abs(fine - coarse) > 1e-3)
            throw StepTooLarge("derivative extrapolation residual exceeds 1e-3");
        moments.push_back((4.0 * fine - coarse) / 3.0 / factorial);
    }
    return moments;
}

Matrix branch_overlap_matrix(const CompositeState& cs, MeterObservable X, bool identity) {
    const int n = static_cast<int>(cs.branches.size());
    const Grid& grid = cs.branches.front().meter.grid;
    std::vector<CVec> applied(n);
    for (int i = 0; i < n; ++i) {
        const CVec& s = cs.branches[i].meter.samples;
        if (identity) {
            applied[i] = s;
        } else if (X == MeterObservable::position) {
            applied[i] = s;
            for (int k = 0; k < grid.n_points; ++k)
                applied[i][k] *= grid.x(k);
        } else {
            applied[i] = apply_momentum(grid, s);
        }
    }
    Matrix out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out(i, j) = cs.branches[i].meter.samples.dot(applied[j]) * grid.dx;
    return out;
}

double cm_conditional_expectation(const CompositeState& cs, const SpectralDecomposition& B,
                                  double b, MeterObservable X) {
    int bi = spectrum_index(B, b);
    const Matrix& proj = B.projectors[bi];
    Matrix gram = branch_overlap_matrix(cs, X, true);
    Matrix mat = branch_overlap_matrix(cs, X, false);

    const int n = static_cast<int>(cs.branches.size());
    Complex num = 0.0, den = 0.0;
    for (int m = 0; m < n; ++m) {
        for (int k = 0; k < n; ++k) {
            Complex t = cs.branches[m].target.dot(proj * cs.branches[k].target);
            num += t * mat(m, k);
            den += t * gram(m, k);
        }
    }
    if (den.real() < kProbFloor)
        throw IndefiniteConditioning("conditioning outcome carries vanishing probability");
    return num.real() / den.real();
}

DerivativeCheck cm_weak_derivative_check(const SpectralDecomposition& A,
                                         const SpectralDecomposition& B,
                                         const PureState& phi, const GridWavefunction& psi,
                                         double b, MeterObservable X, double step) {
    auto f = [&](double g) {
        CompositeState cs = evolve_composite(A, phi, psi, g);
        return cm_conditional_expectation(cs, B, b, X);
    };
    auto stencil = [&](double s) {
        return (-f(2.0 * s) + 8.0 * f(s) - 8.0 * f(-s) + f(-2.0 * s)) / (12.0 * s);
    };
    double coarse = stencil(step);
    double fine = stencil(step / 2.0);
    double numeric = (16.0 * fine - coarse) / 15.0;

    int bi = spectrum_index(B, b);
    const Matrix& proj = B.projectors[bi];
    double pb = (proj * phi.amplitudes()).squaredNorm();
    if (pb < kProbFloor)
        throw IndefiniteConditioning("conditioning outcome carries vanishing probability");
    Matrix amat = A.reconstruct();
    Complex ratio = phi.amplitudes().dot(proj * (amat * phi.amplitudes())) / pb;

    MeterStatistics ms = meter_statistics(psi);
    // The coupling acts through the meter momentum; the readout X is position
    // or momentum, so only the (Q,P) and (P,P) covariance pairs occur.
    double cov_a = (X == MeterObservable::position) ? ms.cov_a : 0.0;
    double cov_s = (X == MeterObservable::position) ? ms.cov_s : ms.var_p;
    double analytic = 2.0 * ratio.real() * cov_a + 2.0 * ratio.imag() * cov_s;
    return {numeric, analytic};
}

GridWavefunction conditional_meter_state(const CompositeState& cs,
                                         const SpectralDecomposition& B, double b) {
    int bi = spectrum_index(B, b);
    const Matrix& proj = B.projectors[bi];
    double rank = proj.trace().real();
    if (std::abs(rank - 1.0) > 1e-8)
        throw DegenerateConditioning("conditional meter state requires a rank-1 outcome");

    // Extract the defining unit vector of the rank-1 projector.
    int best = 0;
    for (int c = 1; c < proj.cols(); ++c)
        if (proj.col(c).norm() > proj.col(best).norm())
            best = c;
    Vector bvec = proj.col(best).normalized();

    const Grid& grid = cs.branches.front().meter.grid;
    CVec acc = CVec::Zero(grid.n_points);
    for (const auto& br : cs.branches) {
        Complex c = bvec.dot(br.target);
        acc += c * br.meter.samples;
    }
    double prob = acc.squaredNorm() * grid.dx;
    if (prob < kProbFloor)
        throw IndefiniteConditioning("conditioning outcome carries vanishing probability");
    return GridWavefunction(grid, acc).normalized();
}

GaussianReadout gaussian_cm_analytic(double a1, double a2, Complex c1, Complex c2,
                                     double g, double h) {
    if (!(h > 0.0))
        throw ValidationError("meter width must be positive");
    double scale = std::abs(c1) + std::abs(c2);
    if (std::abs(c1 + c2) <= 1e-14 * std::max(scale, 1.0))
        throw OrthogonalSelection("pre- and post-selection are orthogonal");

    double lm = (a1 + a2) / 2.0;
    double lr = (a2 - a1) / 2.0;
    if (lr == 0.0)
        return {g * lm, 0.0};

    Complex aw = (a1 * c1 + a2 * c2) / (c1 + c2);
    Complex aw0 = aw - lm;
    double a = (std::norm(aw0 / lr) - 1.0) / 2.0;
    double decay = std::exp(-g * g * lr * lr / (h * h));
    double denom = 1.0 + a * (1.0 - decay);
    double mean_x = g * aw0.real() / denom + g * lm;
    double mean_p = (g / (h * h)) * aw0.imag() * decay / denom;
    return {mean_x, mean_p};
}

} // namespace qjp
