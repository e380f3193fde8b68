// thermo.cpp — Gibbs states, partition functions, reduced states, entropies, concurrence

#include "otto/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace otto {

namespace {

void require_beta(double beta) {
    if (beta == 0.0 || !std::isfinite(beta)) {
        throw std::invalid_argument("beta must be finite and non-zero (use the infinite-temperature state)");
    }
}

// Basis index of the full register from the bits of the kept and traced subsystems.
int compose_index(int keep_bits, int traced_bits, const std::vector<int>& keep,
                  const std::vector<int>& traced, int n_sites) {
    int index = 0;
    const int nk = static_cast<int>(keep.size());
    const int nt = static_cast<int>(traced.size());
    for (int k = 0; k < nk; ++k) {
        const int bit = (keep_bits >> (nk - 1 - k)) & 1;
        index |= bit << (n_sites - 1 - keep[k]);
    }
    for (int t = 0; t < nt; ++t) {
        const int bit = (traced_bits >> (nt - 1 - t)) & 1;
        index |= bit << (n_sites - 1 - traced[t]);
    }
    return index;
}

void require_psd(const Matrix& rho, const char* what) {
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-10) throw std::invalid_argument(std::string(what) + ": matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-10) {
        throw std::invalid_argument(std::string(what) + ": matrix is not positive semidefinite");
    }
}

}  // namespace

double log_partition_function(const Spectrum& spectrum, double beta) {
    require_beta(beta);
    double top = -std::numeric_limits<double>::infinity();
    for (const auto& l : spectrum.levels) top = std::max(top, -beta * l.energy);
    double sum = 0.0;
    for (const auto& l : spectrum.levels) sum += l.multiplicity * std::exp(-beta * l.energy - top);
    return top + std::log(sum);
}

double partition_function_direct(const Spectrum& spectrum, double beta) {
    return std::exp(log_partition_function(spectrum, beta));
}

Populations gibbs_populations(const Spectrum& spectrum, double beta) {
    const double log_z = log_partition_function(spectrum, beta);
    Populations out;
    for (const auto& l : spectrum.levels) {
        const double lp = -beta * l.energy - log_z;
        out.log_p.push_back(lp);
        out.p.push_back(std::exp(lp));
    }
    return out;
}

Populations uniform_populations(const Spectrum& spectrum) {
    const double d = spectrum.dimension();
    Populations out;
    out.p.assign(spectrum.levels.size(), 1.0 / d);
    out.log_p.assign(spectrum.levels.size(), -std::log(d));
    return out;
}

std::optional<double> partition_function_closed(const SpinModel& model, double h, double beta) {
    model.validate();
    require_beta(beta);
    const double b = beta;
    using std::cosh;
    using std::exp;
    if (model.family == Family::IsingKSEA) {
        const double jz = model.Jz;
        const double r = std::hypot(h, model.Gz);
        return 2.0 * (exp(b * jz) + exp(-b * jz) * cosh(2.0 * b * r));
    }
    if (model.family != Family::IsingChain) return std::nullopt;
    const double J = model.J;
    switch (model.n_sites) {
        case 2:
            return 2.0 * cosh(2.0 * b * h) + 2.0 * exp(2.0 * b * J);
        case 3:
            return 2.0 * exp(-3.0 * b * J) * cosh(3.0 * b * h) + 6.0 * exp(b * J) * cosh(b * h);
        case 4:
            return 2.0 * (exp(4.0 * b * J) + exp(-4.0 * b * J) * cosh(4.0 * b * h)) +
                   4.0 * (1.0 + 2.0 * cosh(2.0 * b * h));
        case 5:
            return 2.0 * exp(-5.0 * b * J) * cosh(5.0 * b * h) +
                   10.0 * exp(-b * J) * (cosh(b * h) + cosh(3.0 * b * h)) +
                   10.0 * exp(3.0 * b * J) * cosh(b * h);
        case 6:
            return 2.0 * (exp(-6.0 * b * J) * cosh(6.0 * b * h) + exp(6.0 * b * J)) +
                   12.0 * exp(-2.0 * b * J) * (cosh(4.0 * b * h) + cosh(2.0 * b * h)) +
                   exp(2.0 * b * J) * (18.0 * cosh(2.0 * b * h) + 6.0) + 12.0 * cosh(2.0 * b * J);
        default:
            return std::nullopt;
    }
}

int ThermalState::n_sites() const {
    int n = 0;
    while ((1 << n) < rho.rows()) ++n;
    return n;
}

Matrix density_from_populations(const std::vector<Matrix>& projectors, const std::vector<double>& p) {
    if (projectors.empty() || projectors.size() != p.size()) {
        throw std::invalid_argument("density_from_populations: size mismatch");
    }
    Matrix rho = Matrix::Zero(projectors.front().rows(), projectors.front().cols());
    for (std::size_t k = 0; k < p.size(); ++k) rho += p[k] * projectors[k];
    return 0.5 * (rho + rho.adjoint());
}

ThermalState thermal_density_matrix(const SpinModel& model, double h, double beta) {
    ThermalState s;
    s.beta = beta;
    s.spectrum = analytic_spectrum(model, h);
    s.populations = gibbs_populations(s.spectrum, beta);
    s.rho = density_from_populations(level_projectors(model, h), s.populations.p);
    return s;
}

ThermalState infinite_temperature_state(const SpinModel& model, double h) {
    ThermalState s;
    s.spectrum = analytic_spectrum(model, h);
    s.populations = uniform_populations(s.spectrum);
    const int dim = model.dimension();
    s.rho = Matrix::Identity(dim, dim) / double(dim);
    return s;
}

ThermalState thermal_state_at(const SpinModel& model, double h, double temperature) {
    if (temperature == 0.0 || std::isnan(temperature)) {
        throw std::invalid_argument("temperature must be non-zero");
    }
    if (std::isinf(temperature)) return infinite_temperature_state(model, h);
    return thermal_density_matrix(model, h, 1.0 / temperature);
}

Matrix partial_trace(const Matrix& rho, int n_sites, const std::vector<int>& keep) {
    if (rho.rows() != (1 << n_sites) || rho.cols() != rho.rows()) {
        throw std::invalid_argument("partial_trace: matrix dimension does not match site count");
    }
    std::vector<bool> kept(n_sites, false);
    for (int s : keep) {
        if (s < 0 || s >= n_sites || kept[s]) throw std::invalid_argument("partial_trace: invalid site list");
        kept[s] = true;
    }
    std::vector<int> traced;
    for (int s = 0; s < n_sites; ++s)
        if (!kept[s]) traced.push_back(s);

    const int dk = 1 << keep.size();
    const int dt = 1 << traced.size();
    Matrix out = Matrix::Zero(dk, dk);
    for (int i = 0; i < dk; ++i)
        for (int j = 0; j < dk; ++j)
            for (int t = 0; t < dt; ++t)
                out(i, j) += rho(compose_index(i, t, keep, traced, n_sites),
                                 compose_index(j, t, keep, traced, n_sites));
    return out;
}

ReducedState reduced_state(const Matrix& rho, int n_sites, int site) {
    if (site < 0 || site >= n_sites) throw std::invalid_argument("reduced_state: site out of range");
    ReducedState r;
    r.site = site;
    r.rho = partial_trace(rho, n_sites, {site});
    return r;
}

ReducedState reduced_state(const ThermalState& state, int site) {
    return reduced_state(state.rho, state.n_sites(), site);
}

double von_neumann_entropy(const Matrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double l = solver.eigenvalues()(i);
        if (l > 0.0) s -= l * std::log(l);
    }
    return s;
}

double shannon_entropy(const std::vector<double>& p) {
    double s = 0.0;
    for (double x : p) {
        if (x < 0.0) throw std::invalid_argument("shannon_entropy: negative probability");
        if (x > 0.0) s -= x * std::log(x);
    }
    return s;
}

double relative_entropy(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) throw std::invalid_argument("relative_entropy: size mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        if (q[i] <= 0.0) throw std::invalid_argument("relative_entropy: support of p not contained in support of q");
        d += p[i] * (std::log(p[i]) - std::log(q[i]));
    }
    return d;
}

Entropies entropies(const Matrix& rho, const std::vector<double>& p,
                    const std::optional<std::vector<double>>& q) {
    Entropies e;
    e.von_neumann = von_neumann_entropy(rho);
    e.shannon = shannon_entropy(p);
    if (q) e.relative = relative_entropy(p, *q);
    return e;
}

double concurrence(const Matrix& rho) {
    if (rho.rows() != 4 || rho.cols() != 4) throw std::invalid_argument("concurrence: expected a 4x4 matrix");
    require_psd(rho, "concurrence");

    const bool x_shaped = rho(0, 1) == 0.0 && rho(0, 2) == 0.0 && rho(1, 3) == 0.0 && rho(2, 3) == 0.0 &&
                          rho(1, 0) == 0.0 && rho(2, 0) == 0.0 && rho(3, 1) == 0.0 && rho(3, 2) == 0.0;
    if (x_shaped) {
        const double r00 = rho(0, 0).real(), r11 = rho(1, 1).real();
        const double r22 = rho(2, 2).real(), r33 = rho(3, 3).real();
        const double c1 = std::abs(rho(0, 3)) - std::sqrt(std::max(0.0, r11 * r22));
        const double c2 = std::abs(rho(1, 2)) - std::sqrt(std::max(0.0, r00 * r33));
        return std::min(1.0, 2.0 * std::max({0.0, c1, c2}));
    }

    Matrix yy(4, 4);
    yy.setZero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const Matrix tilde = yy * rho.conjugate() * yy;

    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (rho + rho.adjoint()));
    Eigen::VectorXd ev = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Matrix sqrt_rho = solver.eigenvectors() * ev.asDiagonal() * solver.eigenvectors().adjoint();
    Matrix r = sqrt_rho * tilde * sqrt_rho;
    Eigen::SelfAdjointEigenSolver<Matrix> rsolver(0.5 * (r + r.adjoint()), Eigen::EigenvaluesOnly);
    Eigen::VectorXd lam = rsolver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    std::sort(lam.data(), lam.data() + lam.size(), std::greater<>());
    return std::clamp(lam(0) - lam(1) - lam(2) - lam(3), 0.0, 1.0);
}

}  // namespace otto
