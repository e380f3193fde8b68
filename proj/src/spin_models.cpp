// spin_models.cpp — Hamiltonian construction, closed-form spectra and eigenbases

#include "otto/spin_models.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace otto {

namespace {

constexpr cplx I_UNIT{0.0, 1.0};

// Spin value (+1 up / -1 down) of `site` in computational basis state `index`.
int spin_at(int index, int site, int n_sites) {
    return ((index >> (n_sites - 1 - site)) & 1) == 0 ? 1 : -1;
}

// Field and coupling coefficients of one Ising configuration.
std::pair<int, int> ising_coefficients(int index, int n_sites) {
    int a = 0;
    for (int k = 0; k < n_sites; ++k) a += spin_at(index, k, n_sites);
    int b = 0;
    if (n_sites == 2) {
        // single bond, measured from the aligned configuration
        b = spin_at(index, 0, 2) * spin_at(index, 1, 2) - 1;
    } else {
        for (int k = 0; k < n_sites; ++k)
            b += spin_at(index, k, n_sites) * spin_at(index, (k + 1) % n_sites, n_sites);
    }
    return {a, b};
}

struct IsingTable {
    std::vector<LinearLevel> levels;
    std::vector<int> label_of_state;  // computational basis index -> label
};

IsingTable ising_table(int n_sites) {
    IsingTable table;
    const int dim = 1 << n_sites;
    table.label_of_state.resize(dim);
    std::map<std::pair<int, int>, int> seen;
    for (int s = 0; s < dim; ++s) {
        const auto key = ising_coefficients(s, n_sites);
        auto it = seen.find(key);
        if (it == seen.end()) {
            const int label = static_cast<int>(table.levels.size()) + 1;
            it = seen.emplace(key, label).first;
            table.levels.push_back({label, double(key.first), double(key.second), 0});
        }
        table.levels[it->second - 1].multiplicity += 1;
        table.label_of_state[s] = it->second;
    }
    return table;
}

// Heisenberg levels as (field coefficient, coupling coefficient, multiplicity).
// N = 2 sums both periodic bonds, so the coupling operator is 2 sigma^1 . sigma^2.
std::vector<LinearLevel> heisenberg_table(int n_sites) {
    if (n_sites == 2) {
        return {{1, 2, 2, 1}, {2, 0, 2, 1}, {3, -2, 2, 1}, {4, 0, -6, 1}};
    }
    return {{1, -1, -3, 2}, {2, 1, -3, 2}, {3, -3, 3, 1},
            {4, 3, 3, 1},   {5, -1, 3, 1}, {6, 1, 3, 1}};
}

Matrix magnetization(int n_sites) {
    const int dim = 1 << n_sites;
    Matrix m = Matrix::Zero(dim, dim);
    for (int s = 0; s < dim; ++s) {
        int total = 0;
        for (int k = 0; k < n_sites; ++k) total += spin_at(s, k, n_sites);
        m(s, s) = double(total);
    }
    return m;
}

Matrix heisenberg_coupling(int n_sites) {
    const int dim = 1 << n_sites;
    Matrix c = Matrix::Zero(dim, dim);
    for (int k = 0; k < n_sites; ++k) {
        const int next = (k + 1) % n_sites;
        c += pauli::on_site(pauli::x(), k, n_sites) * pauli::on_site(pauli::x(), next, n_sites);
        c += pauli::on_site(pauli::y(), k, n_sites) * pauli::on_site(pauli::y(), next, n_sites);
        c += pauli::on_site(pauli::z(), k, n_sites) * pauli::on_site(pauli::z(), next, n_sites);
    }
    return c;
}

double ksea_radius(double h, double gz) { return std::hypot(h, gz); }

void check_label(int label, int count) {
    if (label < 1 || label > count) {
        throw std::invalid_argument("unknown level label " + std::to_string(label));
    }
}

}  // namespace

std::string_view family_name(Family family) {
    switch (family) {
        case Family::IsingKSEA: return "ising-ksea";
        case Family::HeisenbergXXX: return "heisenberg";
        case Family::IsingChain: return "ising";
    }
    return "?";
}

Family parse_family(std::string_view name) {
    if (name == "ising-ksea") return Family::IsingKSEA;
    if (name == "heisenberg") return Family::HeisenbergXXX;
    if (name == "ising") return Family::IsingChain;
    throw std::invalid_argument("unknown model '" + std::string(name) +
                                "' (expected ising, ising-ksea or heisenberg)");
}

SpinModel SpinModel::ising_ksea(double jz, double gz) {
    SpinModel m;
    m.family = Family::IsingKSEA;
    m.n_sites = 2;
    m.Jz = jz;
    m.Gz = gz;
    return m;
}

SpinModel SpinModel::heisenberg(int n, double j) {
    SpinModel m;
    m.family = Family::HeisenbergXXX;
    m.n_sites = n;
    m.J = j;
    return m;
}

SpinModel SpinModel::ising_chain(int n, double j) {
    SpinModel m;
    m.family = Family::IsingChain;
    m.n_sites = n;
    m.J = j;
    return m;
}

void SpinModel::validate() const {
    switch (family) {
        case Family::IsingKSEA:
            if (n_sites != 2) throw std::invalid_argument("ising-ksea requires n = 2");
            break;
        case Family::HeisenbergXXX:
            if (n_sites != 2 && n_sites != 3)
                throw std::invalid_argument("heisenberg requires n in {2, 3}");
            break;
        case Family::IsingChain:
            if (n_sites < 2 || n_sites > 6)
                throw std::invalid_argument("ising requires n in {2..6}");
            break;
    }
    if (!std::isfinite(J) || !std::isfinite(Jz) || !std::isfinite(Gz)) {
        throw std::invalid_argument("couplings must be finite");
    }
}

int Spectrum::dimension() const {
    int d = 0;
    for (const auto& l : levels) d += l.multiplicity;
    return d;
}

const Level& Spectrum::level(int label) const {
    for (const auto& l : levels)
        if (l.label == label) return l;
    throw std::invalid_argument("unknown level label " + std::to_string(label));
}

std::vector<double> Spectrum::state_energies() const {
    std::vector<double> out;
    out.reserve(dimension());
    for (const auto& l : levels) out.insert(out.end(), l.multiplicity, l.energy);
    return out;
}

std::vector<double> Spectrum::sorted_energies() const {
    auto out = state_energies();
    std::sort(out.begin(), out.end());
    return out;
}

namespace pauli {

Matrix identity() { return Matrix::Identity(2, 2); }

Matrix x() {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Matrix y() {
    Matrix m(2, 2);
    m << 0.0, -I_UNIT, I_UNIT, 0.0;
    return m;
}

Matrix z() {
    Matrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

Matrix on_site(const Matrix& op, int site, int n_sites) {
    Matrix out = Matrix::Identity(1, 1);
    for (int k = 0; k < n_sites; ++k) {
        Matrix next = Eigen::kroneckerProduct(out, k == site ? op : identity()).eval();
        out = std::move(next);
    }
    return out;
}

}  // namespace pauli

Matrix build_hamiltonian(const SpinModel& model, double h) {
    model.validate();
    if (!std::isfinite(h)) throw std::invalid_argument("field must be finite");
    const int n = model.n_sites;
    const int dim = model.dimension();
    using namespace pauli;

    switch (model.family) {
        case Family::IsingKSEA: {
            Matrix zz = Eigen::kroneckerProduct(z(), z()).eval();
            Matrix xy = Eigen::kroneckerProduct(x(), y()).eval();
            Matrix yx = Eigen::kroneckerProduct(y(), x()).eval();
            return model.Jz * zz + model.Gz * (xy + yx) + h * (on_site(z(), 0, 2) + on_site(z(), 1, 2));
        }
        case Family::HeisenbergXXX:
            return model.J * heisenberg_coupling(n) + h * magnetization(n);
        case Family::IsingChain: {
            Matrix H = h * magnetization(n);
            if (n == 2) {
                H += model.J * (on_site(z(), 0, 2) * on_site(z(), 1, 2) - Matrix::Identity(dim, dim));
            } else {
                for (int k = 0; k < n; ++k)
                    H += model.J * on_site(z(), k, n) * on_site(z(), (k + 1) % n, n);
            }
            return H;
        }
    }
    throw std::invalid_argument("unsupported model");
}

Spectrum analytic_spectrum(const SpinModel& model, double h) {
    model.validate();
    if (!std::isfinite(h)) throw std::invalid_argument("field must be finite");
    Spectrum s;
    s.field = h;
    if (model.family == Family::IsingKSEA) {
        const double r = ksea_radius(h, model.Gz);
        s.levels = {{1, -model.Jz, 1, true},
                    {2, -model.Jz, 1, true},
                    {3, model.Jz - 2.0 * r, 1, false},
                    {4, model.Jz + 2.0 * r, 1, false}};
        return s;
    }
    for (const auto& l : linear_levels(model, h)) {
        s.levels.push_back({l.label, l.a * h + l.b * model.J, l.multiplicity, l.a == 0.0});
    }
    return s;
}

Spectrum brute_force_spectrum(const Matrix& hamiltonian) {
    if (hamiltonian.rows() != hamiltonian.cols() || hamiltonian.rows() == 0) {
        throw std::invalid_argument("brute_force_spectrum: matrix must be square and non-empty");
    }
    const double scale = std::max(1.0, hamiltonian.cwiseAbs().maxCoeff());
    if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw std::invalid_argument("brute_force_spectrum: matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hamiltonian, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigen decomposition failed");
    const Eigen::VectorXd& ev = solver.eigenvalues();

    const double range = ev(ev.size() - 1) - ev(0);
    const double tol = 1e-9 * std::max(1.0, range);
    Spectrum s;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (!s.levels.empty() && std::abs(ev(i) - s.levels.back().energy) <= tol) {
            s.levels.back().multiplicity += 1;
        } else {
            s.levels.push_back({static_cast<int>(s.levels.size()) + 1, ev(i), 1, false});
        }
    }
    return s;
}

double level_field_derivative(const SpinModel& model, double h, int label) {
    model.validate();
    if (model.family == Family::IsingKSEA) {
        check_label(label, 4);
        if (label <= 2) return 0.0;
        const double r = ksea_radius(h, model.Gz);
        const double slope = r == 0.0 ? 0.0 : 2.0 * h / r;
        return label == 3 ? -slope : slope;
    }
    const auto levels = linear_levels(model, h);
    check_label(label, static_cast<int>(levels.size()));
    return levels[label - 1].a;
}

std::vector<LinearLevel> linear_levels(const SpinModel& model, double h) {
    model.validate();
    switch (model.family) {
        case Family::IsingChain:
            return ising_table(model.n_sites).levels;
        case Family::HeisenbergXXX:
            return heisenberg_table(model.n_sites);
        case Family::IsingKSEA:
            if (model.Gz != 0.0) {
                throw std::invalid_argument("ising-ksea spectrum is not linear in h when Gz != 0");
            }
            if (!(h > 0.0)) {
                throw std::invalid_argument("ising-ksea linear decomposition needs h > 0");
            }
            return {{1, 0, -1, 1}, {2, 0, -1, 1}, {3, -2, 1, 1}, {4, 2, 1, 1}};
    }
    throw std::invalid_argument("unsupported model");
}

EigenBasis ksea_eigenbasis(double jz, double gz, double h) {
    (void)jz;  // eigenvectors do not depend on Jz
    EigenBasis basis;
    basis.labels = {1, 2, 3, 4};
    auto column = [](std::initializer_list<cplx> amps) {
        Matrix v(4, 1);
        int i = 0;
        for (cplx a : amps) v(i++, 0) = a;
        return v;
    };
    basis.vectors.push_back(column({0.0, 1.0, 0.0, 0.0}));  // |10>
    basis.vectors.push_back(column({0.0, 0.0, 1.0, 0.0}));  // |01>

    if (gz == 0.0) {
        const Matrix up = column({1.0, 0.0, 0.0, 0.0});    // |11>
        const Matrix down = column({0.0, 0.0, 0.0, 1.0});  // |00>
        basis.vectors.push_back(h >= 0.0 ? down : up);
        basis.vectors.push_back(h >= 0.0 ? up : down);
        return basis;
    }

    // alpha_1 = i x1, alpha_2 = i x2, written to avoid cancellation in R -/+ h.
    const double r = ksea_radius(h, gz);
    const double x1 = h >= 0.0 ? gz / (r + h) : (r - h) / gz;
    const double x2 = h >= 0.0 ? -(h + r) / gz : -gz / (r - h);
    for (double x : {x1, x2}) {
        const double norm = std::hypot(x, 1.0);
        basis.vectors.push_back(column({I_UNIT * (x / norm), 0.0, 0.0, 1.0 / norm}));
    }
    return basis;
}

std::vector<Matrix> level_projectors(const SpinModel& model, double h) {
    model.validate();
    const int n = model.n_sites;
    const int dim = model.dimension();
    std::vector<Matrix> out;

    switch (model.family) {
        case Family::IsingKSEA: {
            for (const auto& v : ksea_eigenbasis(model.Jz, model.Gz, h).vectors)
                out.push_back(v * v.adjoint());
            return out;
        }
        case Family::IsingChain: {
            const auto table = ising_table(n);
            out.assign(table.levels.size(), Matrix::Zero(dim, dim));
            for (int s = 0; s < dim; ++s) out[table.label_of_state[s] - 1](s, s) = 1.0;
            return out;
        }
        case Family::HeisenbergXXX: {
            // P = P[M = a] * P[C = b]; both operators commute, C has two distinct eigenvalues.
            const Matrix m = magnetization(n);
            const Matrix c = heisenberg_coupling(n);
            const auto table = heisenberg_table(n);
            std::vector<double> c_values;
            for (const auto& l : table)
                if (std::find(c_values.begin(), c_values.end(), l.b) == c_values.end())
                    c_values.push_back(l.b);
            const Matrix id = Matrix::Identity(dim, dim);
            for (const auto& l : table) {
                Matrix pc = id;
                for (double other : c_values)
                    if (other != l.b) pc = pc * (c - other * id) / (l.b - other);
                Matrix pm = Matrix::Zero(dim, dim);
                for (int s = 0; s < dim; ++s)
                    if (m(s, s).real() == l.a) pm(s, s) = 1.0;
                Matrix p = pm * pc;
                out.push_back(0.5 * (p + p.adjoint()));
            }
            return out;
        }
    }
    throw std::invalid_argument("unsupported model");
}

EigenBasis eigenbasis(const SpinModel& model, double h) {
    if (model.family == Family::IsingKSEA) return ksea_eigenbasis(model.Jz, model.Gz, h);

    const auto spectrum = analytic_spectrum(model, h);
    const auto projectors = level_projectors(model, h);
    EigenBasis basis;
    for (std::size_t k = 0; k < projectors.size(); ++k) {
        const Matrix& p = projectors[k];
        const int mult = spectrum.levels[k].multiplicity;
        Matrix block(p.rows(), mult);
        int found = 0;
        for (Eigen::Index col = 0; col < p.cols() && found < mult; ++col) {
            Vector v = p.col(col);
            for (int j = 0; j < found; ++j) v -= block.col(j).dot(v) * block.col(j);
            const double norm = v.norm();
            if (norm > 1e-8) block.col(found++) = v / norm;
        }
        if (found != mult) throw std::runtime_error("eigenbasis: projector rank mismatch");
        basis.labels.push_back(spectrum.levels[k].label);
        basis.vectors.push_back(std::move(block));
    }
    return basis;
}

}  // namespace otto
