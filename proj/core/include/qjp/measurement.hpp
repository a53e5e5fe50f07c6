#pragma once

#include <vector>

#include "qjp/meter_grid.hpp"
#include "qjp/operator_core.hpp"

namespace qjp {

enum class MeterObservable { position, momentum };

// One spectral branch of the post-interaction composite state: the projected
// target vector together with the correspondingly displaced meter profile.
struct CompositeBranch {
    Vector target;          // projection of the initial target state
    GridWavefunction meter; // displaced meter wavefunction
    double eigenvalue;
};

struct CompositeState {
    std::vector<CompositeBranch> branches;
    double g;
    MeterObservable coupled; // the meter observable entering the coupling
};

struct GaussianReadout {
    double mean_x;
    double mean_p;
};

struct DerivativeCheck {
    double numeric;
    double analytic;
};

CompositeState evolve_composite(const SpectralDecomposition& A, const PureState& phi,
                                const GridWavefunction& psi, double g,
                                MeterObservable Y = MeterObservable::momentum);

double um_expectation(const CompositeState& cs, MeterObservable X);
Density um_outcome_density(const CompositeState& cs, MeterObservable X);

// Convolution of a meter density with the g-scaled atomic spectrum, evaluated
// through the frequency domain (exact for band-limited grid data). Serves as
// the independent reference for um_outcome_density.
Density spectral_convolution(const Density& rho, const ProbTable& spectrum, double g);

std::vector<std::pair<double, double>>
strong_um_recover(const SpectralDecomposition& A, const PureState& phi,
                  const GridWavefunction& psi, const std::vector<double>& g_list);

std::vector<double>
weak_um_moments(const SpectralDecomposition& A, const PureState& phi,
                const GridWavefunction& psi, int n_max, double step);

double cm_conditional_expectation(const CompositeState& cs, const SpectralDecomposition& B,
                                  double b, MeterObservable X);

DerivativeCheck cm_weak_derivative_check(const SpectralDecomposition& A,
                                         const SpectralDecomposition& B,
                                         const PureState& phi, const GridWavefunction& psi,
                                         double b, MeterObservable X, double step);

GridWavefunction conditional_meter_state(const CompositeState& cs,
                                         const SpectralDecomposition& B, double b);

GaussianReadout gaussian_cm_analytic(double a1, double a2, Complex c1, Complex c2,
                                     double g, double h);

// Pairwise meter matrix elements <psi_m, X psi_n> over the branch profiles;
// X = identity gives the Gram matrix. Shared with the amplification bound.
Matrix branch_overlap_matrix(const CompositeState& cs, MeterObservable X, bool identity);

inline constexpr double kProbFloor = 1e-12; // operational cutoff for "indefinite"

} // namespace qjp
