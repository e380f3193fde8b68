// selftest.cpp — Randomised invariant checks behind `otto-forge selftest`

#include "otto/selftest.hpp"

#include "otto/otto_cycle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace otto {

namespace {

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    SpinModel model() {
        switch (integer(0, 2)) {
            case 0: return SpinModel::ising_ksea(uniform(-5, 5), uniform(-5, 5));
            case 1: return SpinModel::heisenberg(integer(2, 3), uniform(-5, 5));
            default: return SpinModel::ising_chain(integer(2, 6), uniform(-5, 5));
        }
    }

    CycleParams cycle() {
        CycleParams p;
        p.model = model();
        p.h_cold = uniform(0.1, 9.0);
        p.h_hot = uniform(p.h_cold + 0.05, 10.0);
        p.T_cold = uniform(0.2, 5.0);
        p.T_hot = uniform(p.T_cold + 0.05, 10.0);
        return p;
    }

private:
    std::mt19937_64 rng_;
};

SelftestResult check(const std::string& name, int draws, double worst, double tol) {
    return {name, draws, worst, tol, worst <= tol};
}

double spectrum_mismatch(const SpinModel& model, double h) {
    const auto analytic = analytic_spectrum(model, h).sorted_energies();
    const auto dense = brute_force_spectrum(build_hamiltonian(model, h)).sorted_energies();
    if (analytic.size() != dense.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t i = 0; i < analytic.size(); ++i) worst = std::max(worst, std::abs(analytic[i] - dense[i]));
    return worst;
}

}  // namespace

std::vector<SelftestResult> run_selftest(std::uint64_t seed, int draws) {
    Sampler s(seed);
    double first_law = 0.0, shift = 0.0, sign = 0.0, oracle = 0.0, carnot = 0.0;
    double extensivity = 0.0, entropy = 0.0, linear = 0.0, idle = 0.0;

    for (int d = 0; d < draws; ++d) {
        const CycleParams p = s.cycle();
        const Cycle c = run_cycle(p);
        const auto& r = c.report;
        first_law = std::max(first_law, std::abs(r.Qh + r.Qc - r.W));
        oracle = std::max({oracle, spectrum_mismatch(p.model, p.h_hot), spectrum_mismatch(p.model, p.h_cold)});

        // uniform energy shift on both strokes
        const double offset = s.uniform(-20, 20);
        ThermalState hot = c.hot, cold = c.cold;
        for (auto& l : hot.spectrum.levels) l.energy += offset;
        for (auto& l : cold.spectrum.levels) l.energy += offset;
        hot.populations = gibbs_populations(hot.spectrum, 1.0 / p.T_hot);
        cold.populations = gibbs_populations(cold.spectrum, 1.0 / p.T_cold);
        const auto shifted = cycle_from_states(p, hot, cold).report;
        shift = std::max({shift, std::abs(shifted.Qh - r.Qh), std::abs(shifted.Qc - r.Qc), std::abs(shifted.W - r.W)});

        if (p.model.family == Family::IsingKSEA) {
            CycleParams flipped = p;
            flipped.model.Gz = -p.model.Gz;
            const auto f = run_cycle(flipped).report;
            sign = std::max({sign, std::abs(f.Qh - r.Qh), std::abs(f.Qc - r.Qc), std::abs(f.W - r.W)});
        }

        if (r.eta) carnot = std::max(carnot, *r.eta - *r.eta_carnot);
        if (r.cop) carnot = std::max(carnot, *r.cop - *r.cop_carnot);

        const auto ledger = local_ledger(c, Convention::Case4);
        if (p.model.family != Family::IsingKSEA) extensivity = std::max(extensivity, std::abs(ledger.gap));

        entropy = std::max(entropy, std::abs(work_entropy_form(c) - r.W));

        const auto& split = r.idle;
        idle = std::max({idle, std::abs(r.Qh - split.q_idle - split.q_work_hot),
                         std::abs(r.Qc + split.q_idle + split.q_work_cold),
                         std::abs(r.W - split.q_work_hot + split.q_work_cold)});

        if (p.model.family != Family::IsingKSEA) {
            const auto li = linear_identities(c);
            linear = std::max({linear, li.residual_qh, li.residual_qc, li.residual_w, li.residual_eta.value_or(0.0),
                               li.residual_cop.value_or(0.0)});
            if (!li.signs_consistent) linear = std::numeric_limits<double>::infinity();
        }
    }

    return {
        check("first law |Qh+Qc-W|", draws, first_law, 1e-13),
        check("energy shift invariance", draws, shift, 1e-10),
        check("Gz sign symmetry", draws, sign, 1e-12),
        check("analytic vs dense spectrum", draws, oracle, 1e-9),
        check("Carnot bounds", draws, carnot, 1e-10),
        check("Case4 extensivity (Ising, Heisenberg)", draws, extensivity, 1e-10),
        check("entropy-form work", draws, entropy, 1e-10),
        check("idle/working split", draws, idle, 1e-12),
        check("linear identities", draws, linear, 1e-12),
    };
}

}  // namespace otto
