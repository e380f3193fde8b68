// thermo.hpp — Gibbs states, partition functions, reduced states, entropies, concurrence

#pragma once

#include "otto/spin_models.hpp"

#include <optional>
#include <vector>

namespace otto {

// Per-level probabilities in label order: p[k] is the weight of ONE state of level k,
// so sum_k multiplicity_k * p[k] = 1. log_p is kept separately so that populations
// which underflow to zero still carry a finite logarithm.
struct Populations {
    std::vector<double> p;
    std::vector<double> log_p;
};

// Softmax over -beta * E with the maximum subtracted. beta == 0 is rejected.
Populations gibbs_populations(const Spectrum& spectrum, double beta);
Populations uniform_populations(const Spectrum& spectrum);

double partition_function_direct(const Spectrum& spectrum, double beta);
double log_partition_function(const Spectrum& spectrum, double beta);

// Closed forms for IsingKSEA and IsingChain; nullopt for families without one.
std::optional<double> partition_function_closed(const SpinModel& model, double h, double beta);

struct ThermalState {
    std::optional<double> beta;  // empty for the infinite-temperature state
    Spectrum spectrum;
    Populations populations;
    Matrix rho;

    int n_sites() const;
};

ThermalState thermal_density_matrix(const SpinModel& model, double h, double beta);
ThermalState infinite_temperature_state(const SpinModel& model, double h);
// T = +/-infinity maps to the infinite-temperature state; T == 0 is rejected.
ThermalState thermal_state_at(const SpinModel& model, double h, double temperature);

// Density matrix sum_k p_k P_k from per-level weights and spectral projectors.
Matrix density_from_populations(const std::vector<Matrix>& projectors, const std::vector<double>& p);

struct ReducedState {
    int site{0};
    Eigen::Matrix2cd rho;  // basis {|1>, |0>}
};

// Trace out every site not listed in `keep`; kept sites retain their relative order.
Matrix partial_trace(const Matrix& rho, int n_sites, const std::vector<int>& keep);
ReducedState reduced_state(const Matrix& rho, int n_sites, int site);
ReducedState reduced_state(const ThermalState& state, int site);

double von_neumann_entropy(const Matrix& rho);
double shannon_entropy(const std::vector<double>& p);
// sum p_i ln(p_i / q_i); terms with p_i = 0 vanish, p_i > 0 with q_i = 0 throws.
double relative_entropy(const std::vector<double>& p, const std::vector<double>& q);

struct Entropies {
    double von_neumann{0.0};
    double shannon{0.0};
    std::optional<double> relative;
};

// S(rho), H(p) and, when q is given, H[p|q].
Entropies entropies(const Matrix& rho, const std::vector<double>& p,
                    const std::optional<std::vector<double>>& q = std::nullopt);

// Wootters concurrence of a 4x4 density matrix. Throws for non-PSD input.
double concurrence(const Matrix& rho);

}  // namespace otto
