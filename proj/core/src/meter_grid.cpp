#include "qjp/meter_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <unsupported/Eigen/FFT>

namespace qjp {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

CVec dft(const CVec& in) {
    Eigen::FFT<double> fft;
    CVec out(in.size());
    fft.fwd(out, in);
    return out;
}

CVec idft(const CVec& in) {
    Eigen::FFT<double> fft;
    CVec out(in.size());
    fft.inv(out, in); // includes the 1/n factor
    return out;
}

// Multiply sample k by (-1)^k; conjugation step of the centred-grid transform.
CVec alternate_signs(const CVec& v) {
    CVec out(v.size());
    for (int k = 0; k < v.size(); ++k)
        out[k] = (k % 2 == 0) ? v[k] : -v[k];
    return out;
}

} // namespace

Grid::Grid(int n, double spacing) : n_points(n), dx(spacing) {
    if (!is_power_of_two(n) || n < 16)
        throw ResolutionError("grid size must be a power of two, at least 16");
    if (!(spacing > 0.0) || !std::isfinite(spacing))
        throw ResolutionError("grid spacing must be positive and finite");
}

double Grid::dp() const { return 2.0 * kPi / length(); }

GridWavefunction::GridWavefunction(const Grid& g, const CVec& s) : grid(g), samples(s) {
    if (static_cast<int>(s.size()) != g.n_points)
        throw DimMismatch("sample count does not match grid size");
}

double GridWavefunction::norm() const {
    return std::sqrt(samples.squaredNorm() * grid.dx);
}

GridWavefunction GridWavefunction::normalized() const {
    double n = norm();
    if (!(n > 0.0) || !std::isfinite(n))
        throw Error("wavefunction has vanishing or non-finite norm");
    return GridWavefunction(grid, samples / n);
}

double Density::integral() const { return samples.sum() * grid.dx; }

double Density::mean() const {
    double acc = 0.0;
    for (int k = 0; k < grid.n_points; ++k)
        acc += grid.x(k) * samples[k];
    return acc * grid.dx;
}

double Density::variance() const {
    double m = mean();
    double acc = 0.0;
    for (int k = 0; k < grid.n_points; ++k) {
        double d = grid.x(k) - m;
        acc += d * d * samples[k];
    }
    return acc * grid.dx;
}

// Unitary transform onto the centred momentum grid p_j = (j - n/2) * 2pi/L.
// The (-1)^k pre/post twiddle shifts both grids to be origin-centred; the
// leftover global phase exp(-i pi n/2) is unity because n/2 is even for every
// admissible power-of-two n >= 16.
CVec fourier_forward(const Grid& grid, const CVec& samples) {
    CVec out = alternate_signs(dft(alternate_signs(samples)));
    out *= grid.dx / std::sqrt(2.0 * kPi);
    return out;
}

CVec fourier_inverse(const Grid& grid, const CVec& samples) {
    CVec out = alternate_signs(idft(alternate_signs(samples)));
    out *= grid.n_points * grid.dp() / std::sqrt(2.0 * kPi);
    return out;
}

GridWavefunction gaussian_state(const Grid& grid, double center, double h) {
    if (!(h >= 4.0 * grid.dx))
        throw ResolutionError("gaussian width must be at least 4 grid spacings");
    if (!(h <= grid.length() / 8.0))
        throw ResolutionError("gaussian width must not exceed an eighth of the grid length");
    CVec samples(grid.n_points);
    double amp = std::pow(kPi * h * h, -0.25);
    for (int k = 0; k < grid.n_points; ++k) {
        double d = grid.x(k) - center;
        samples[k] = amp * std::exp(-d * d / (2.0 * h * h));
    }
    return GridWavefunction(grid, samples).normalized();
}

GridWavefunction translate(const GridWavefunction& psi, double a) {
    const Grid& g = psi.grid;
    if (std::abs(a) >= g.length() / 2.0)
        throw AliasError("translation distance exceeds half the grid length");
    // The shift wraps mass across the periodic boundary; demand that the
    // wrapped region carries negligible probability.
    double tail = 0.0;
    double norm2 = psi.samples.squaredNorm() * g.dx;
    for (int k = 0; k < g.n_points; ++k) {
        double x = g.x(k);
        bool wraps = (a > 0.0) ? (x >= g.length() / 2.0 - a)
                               : (x < -g.length() / 2.0 - a);
        if (wraps)
            tail += std::norm(psi.samples[k]) * g.dx;
    }
    if (tail > 1e-12 * norm2)
        throw AliasError("translation would wrap non-negligible probability mass");

    CVec hat = fourier_forward(g, psi.samples);
    for (int j = 0; j < g.n_points; ++j)
        hat[j] *= std::exp(Complex(0.0, -a * g.p(j)));
    return GridWavefunction(g, fourier_inverse(g, hat));
}

Density position_density(const GridWavefunction& psi) {
    GridWavefunction n = psi.normalized();
    RVec d(n.grid.n_points);
    for (int k = 0; k < n.grid.n_points; ++k)
        d[k] = std::norm(n.samples[k]);
    return Density{n.grid, d};
}

Density momentum_density(const GridWavefunction& psi) {
    GridWavefunction n = psi.normalized();
    CVec hat = fourier_forward(n.grid, n.samples);
    Grid pgrid(n.grid.n_points, n.grid.dp());
    RVec d(pgrid.n_points);
    for (int j = 0; j < pgrid.n_points; ++j)
        d[j] = std::norm(hat[j]);
    return Density{pgrid, d};
}

MeterStatistics meter_statistics(const GridWavefunction& psi) {
    GridWavefunction n = psi.normalized();
    const Grid& g = n.grid;

    Density rho_x = position_density(n);
    Density rho_p = momentum_density(n);
    double ex = rho_x.mean();
    double ep = rho_p.mean();
    double vx = rho_x.variance();
    double vp = rho_p.variance();

    // Mixed moment <x psi, p psi>; momentum applied spectrally.
    CVec hat = fourier_forward(g, n.samples);
    for (int j = 0; j < g.n_points; ++j)
        hat[j] *= g.p(j);
    CVec p_psi = fourier_inverse(g, hat);
    Complex xp = 0.0;
    for (int k = 0; k < g.n_points; ++k)
        xp += std::conj(g.x(k) * n.samples[k]) * p_psi[k];
    xp *= g.dx;

    MeterStatistics s;
    s.mean_x = ex;
    s.mean_p = ep;
    s.var_x = vx;
    s.var_p = vp;
    s.cov_s = xp.real() - ex * ep;
    s.cov_a = xp.imag();
    return s;
}

double WignerTable::total_integral() const {
    double dpw = (p.size() > 1) ? (p[1] - p[0]) : 0.0;
    return values.sum() * grid.dx * dpw;
}

RVec WignerTable::position_marginal() const {
    double dpw = (p.size() > 1) ? (p[1] - p[0]) : 0.0;
    return values.rowwise().sum() * dpw;
}

RVec WignerTable::momentum_marginal() const {
    return values.colwise().sum().transpose() * grid.dx;
}

// W(x, p) = (1/pi) Int psi*(x+u) psi(x-u) exp(2ipu) du, evaluated per x-row by
// an inverse DFT over u. The conjugate frequency 2p lives on the grid's own
// momentum lattice, so p is resolved at half spacing, pi/L.
WignerTable wigner_ville(const GridWavefunction& psi_in) {
    GridWavefunction psi = psi_in.normalized();
    const Grid& g = psi.grid;
    const int n = g.n_points;

    WignerTable table{g, RVec(n), Eigen::MatrixXd(n, n)};
    double dpw = kPi / g.length();
    for (int j = 0; j < n; ++j)
        table.p[j] = (j - n / 2) * dpw;

    double max_imag = 0.0;
    for (int k = 0; k < n; ++k) {
        // Zero-extended correlation: wrapping would alias a ghost image into
        // the opposite edge and double-count the momentum marginal.
        CVec corr = CVec::Zero(n);
        for (int m = 0; m < n; ++m) {
            int shift = m - n / 2;
            int plus = k + shift;
            int minus = k - shift;
            if (plus >= 0 && plus < n && minus >= 0 && minus < n)
                corr[m] = std::conj(psi.samples[plus]) * psi.samples[minus];
        }
        CVec row = alternate_signs(idft(alternate_signs(corr)));
        for (int j = 0; j < n; ++j) {
            Complex w = row[j] * static_cast<double>(n) * g.dx / kPi;
            max_imag = std::max(max_imag, std::abs(w.imag()));
            table.values(k, j) = w.real();
        }
    }
    if (max_imag > 1e-10)
        throw AliasError("phase-space transform produced a non-real result; "
                         "state support too close to the grid boundary");
    return table;
}

GridWavefunction zero_pad(const GridWavefunction& psi, int factor) {
    if (factor < 1 || !is_power_of_two(factor))
        throw ResolutionError("padding factor must be a power of two");
    const Grid& g = psi.grid;
    Grid wide(g.n_points * factor, g.dx);
    CVec samples = CVec::Zero(wide.n_points);
    int offset = (wide.n_points - g.n_points) / 2;
    samples.segment(offset, g.n_points) = psi.samples;
    return GridWavefunction(wide, samples);
}

} // namespace qjp
