// spin_models.hpp — Spin-1/2 working substances: Hamiltonians, analytic spectra, eigenbases
//
// Three families are supported: the two-site Ising chain with a z-component KSEA
// term, the periodic Heisenberg XXX ring (N = 2, 3) and the periodic Ising chain
// (N = 2..6). Level labels follow the closed-form expressions, not energy order,
// so the same label at two field values is the same adiabatically connected level.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string_view>
#include <vector>

namespace otto {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class Family { IsingKSEA, HeisenbergXXX, IsingChain };

// CLI spelling: "ising-ksea", "heisenberg", "ising".
std::string_view family_name(Family family);
Family parse_family(std::string_view name);

struct SpinModel {
    Family family{Family::IsingChain};
    int n_sites{2};
    double J{0.0};   // exchange coupling (HeisenbergXXX, IsingChain)
    double Jz{0.0};  // Ising coupling (IsingKSEA)
    double Gz{0.0};  // KSEA strength (IsingKSEA)

    static SpinModel ising_ksea(double jz, double gz);
    static SpinModel heisenberg(int n, double j);
    static SpinModel ising_chain(int n, double j);

    // Throws std::invalid_argument for unsupported (family, n_sites) or non-finite couplings.
    void validate() const;

    int dimension() const { return 1 << n_sites; }

    // The coupling that multiplies the h-independent part of the spectrum: J, or Jz for KSEA.
    double coupling() const { return family == Family::IsingKSEA ? Jz : J; }
};

struct Level {
    int label{0};
    double energy{0.0};
    int multiplicity{1};
    bool idle{false};  // dE/dh == 0 identically in h
};

struct Spectrum {
    std::vector<Level> levels;
    double field{0.0};

    int dimension() const;
    const Level& level(int label) const;
    // One entry per state (levels expanded by multiplicity), in label order.
    std::vector<double> state_energies() const;
    // Energies sorted ascending, expanded by multiplicity.
    std::vector<double> sorted_energies() const;
};

// Orthonormal eigenvectors, one dim x multiplicity block per level label.
struct EigenBasis {
    std::vector<int> labels;
    std::vector<Matrix> vectors;
};

// E_label = a * h + b * coupling, exact for Ising chains and Heisenberg rings.
struct LinearLevel {
    int label{0};
    double a{0.0};
    double b{0.0};
    int multiplicity{1};
};

namespace pauli {
Matrix identity();
Matrix x();
Matrix y();
Matrix z();
// op acting on `site` of an n-site register (site 0 is the leftmost Kronecker factor).
Matrix on_site(const Matrix& op, int site, int n_sites);
}  // namespace pauli

// Computational basis ordering is {|1...1>, ..., |0...0>}: basis index bit 0 means spin up (sigma_z = +1).
Matrix build_hamiltonian(const SpinModel& model, double h);

Spectrum analytic_spectrum(const SpinModel& model, double h);

// Dense Hermitian solve; levels are energy-sorted and grouped within 1e-9 * max(1, range).
Spectrum brute_force_spectrum(const Matrix& hamiltonian);

double level_field_derivative(const SpinModel& model, double h, int label);

// Throws std::invalid_argument for IsingKSEA with Gz != 0 (spectrum not linear in h), or Gz == 0 with h <= 0.
std::vector<LinearLevel> linear_levels(const SpinModel& model, double h);

EigenBasis ksea_eigenbasis(double jz, double gz, double h);
EigenBasis eigenbasis(const SpinModel& model, double h);

// Spectral projectors in label order.
std::vector<Matrix> level_projectors(const SpinModel& model, double h);

}  // namespace otto
