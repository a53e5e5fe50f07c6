#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qjp/errors.hpp"

namespace qjp {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Uniform origin-centred periodic grid, x_k = (k - n/2) dx.
struct Grid {
    int n_points;
    double dx;

    Grid(int n, double spacing);

    double length() const { return n_points * dx; }
    double dp() const;
    double x(int k) const { return (k - n_points / 2) * dx; }
    double p(int j) const { return (j - n_points / 2) * dp(); }
    bool operator==(const Grid& other) const {
        return n_points == other.n_points && dx == other.dx;
    }
};

struct GridWavefunction {
    Grid grid;
    CVec samples;

    GridWavefunction(const Grid& g, const CVec& s);

    double norm() const; // discrete L2 norm, sqrt(sum |psi|^2 dx)
    GridWavefunction normalized() const;
};

struct Density {
    Grid grid;
    RVec samples; // with respect to Lebesgue measure; integrates to 1

    double integral() const;
    double mean() const;
    double variance() const;
};

struct WignerTable {
    Grid grid;                 // x-axis
    RVec p;                    // momentum axis (length = grid.n_points)
    Eigen::MatrixXd values;    // values(k, j) = W(x_k, p_j)

    double total_integral() const;
    RVec position_marginal() const; // integral over p
    RVec momentum_marginal() const; // integral over x
};

struct MeterStatistics {
    double mean_x, mean_p;
    double var_x, var_p;
    double cov_s; // symmetrised covariance of position and momentum
    double cov_a; // antisymmetric (commutator) covariance; 1/2 on resolved states
};

// Unitary Fourier transforms between the centred x- and p-grids.
CVec fourier_forward(const Grid& grid, const CVec& samples);
CVec fourier_inverse(const Grid& grid, const CVec& samples);

GridWavefunction gaussian_state(const Grid& grid, double center, double h);
GridWavefunction translate(const GridWavefunction& psi, double a);

Density position_density(const GridWavefunction& psi);
Density momentum_density(const GridWavefunction& psi);

MeterStatistics meter_statistics(const GridWavefunction& psi);

WignerTable wigner_ville(const GridWavefunction& psi);

// Embed the samples in a grid enlarged by an integral factor (same spacing);
// refines the momentum lattice without changing the state.
GridWavefunction zero_pad(const GridWavefunction& psi, int factor);

} // namespace qjp
