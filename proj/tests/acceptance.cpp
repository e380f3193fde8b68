// acceptance.cpp — one PASS/FAIL line per acceptance criterion
//
// Usage: acceptance [--only N]. Exit status is non-zero when any selected criterion fails.

#include "oracles.hpp"
#include "otto/sweep.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

using namespace otto;

namespace {

struct Verdict {
    bool pass{false};
    std::string measured;
};

std::string fmt(double x) { return format_double(x); }

CycleParams random_params(oracle::Gen& g, const SpinModel& m) {
    CycleParams p;
    p.model = m;
    p.h_cold = g.uniform(0.1, 9.0);
    p.h_hot = g.uniform(p.h_cold + 0.05, 10.0);
    p.T_cold = g.uniform(0.2, 5.0);
    p.T_hot = g.uniform(p.T_cold + 0.05, 10.0);
    return p;
}

// Every supported (family, n) with couplings drawn from [-5, 5].
std::vector<std::function<SpinModel(oracle::Gen&)>> model_makers() {
    std::vector<std::function<SpinModel(oracle::Gen&)>> out;
    out.push_back([](oracle::Gen& g) { return SpinModel::ising_ksea(g.uniform(-5, 5), g.uniform(-5, 5)); });
    for (int n : {2, 3}) out.push_back([n](oracle::Gen& g) { return SpinModel::heisenberg(n, g.uniform(-5, 5)); });
    for (int n = 2; n <= 6; ++n) out.push_back([n](oracle::Gen& g) { return SpinModel::ising_chain(n, g.uniform(-5, 5)); });
    return out;
}

std::vector<SweepRow> sweep(const CycleParams& base, const std::string& swept, double from, double to, int steps) {
    SweepConfig c;
    c.base = base;
    c.swept = swept;
    c.from = from;
    c.to = to;
    c.steps = steps;
    c.outputs = parse_outputs("cycle,idle");
    return run_sweep(c, thread_budget(true));
}

Verdict c01() {
    const auto root = jz_star(0.0, 4, 3, 4, 1);
    const double closed = (2.0 / 3.0) * (std::log(std::cosh(6.0)) - std::log(std::cosh(2.0)));
    if (!root) return {false, "no threshold found"};
    const bool ok = *root >= 2.64 && *root <= 2.66 && std::abs(closed - *root) <= 1e-6;
    return {ok, "jz_star=" + fmt(*root) + " closed=" + fmt(closed) + " |diff|=" + fmt(std::abs(closed - *root))};
}

Verdict c02() {
    const auto rows = sweep(engine_preset(SpinModel::ising_ksea(0.0, 0.0)), "Jz", 0.0, 5.0, 5001);
    double best = INFINITY, at = NAN;
    for (const auto& r : rows) {
        if (*r.q_idle < best) {
            best = *r.q_idle;
            at = r.value;
        }
    }
    const bool ok = best >= -0.45 && best <= -0.42 && at >= 1.75 && at <= 1.83;
    return {ok, "min q_idle=" + fmt(best) + " at Jz=" + fmt(at)};
}

Verdict c03() {
    const auto rows = sweep(engine_preset(SpinModel::ising_ksea(0.0, 0.0)), "Gz", 0.0, 5.0, 500);
    double worst = -INFINITY;
    int not_engine = 0;
    for (const auto& r : rows) {
        if (r.report.mode != Mode::Engine || !r.report.eta) {
            ++not_engine;
            continue;
        }
        worst = std::max(worst, *r.report.eta - r.report.eta_otto);
    }
    return {not_engine == 0 && worst <= 1e-12,
            "max(eta - eta_otto)=" + fmt(worst) + " non-engine points=" + std::to_string(not_engine)};
}

Verdict c04() {
    const auto rows = sweep(fridge_preset(SpinModel::ising_ksea(2.6, 0.0)), "Gz", 0.0, 5.0, 500);
    for (const auto& r : rows) {
        if (r.report.cop && *r.report.cop > r.report.cop_otto)
            return {r.value >= 3.35 && r.value <= 3.55, "first Gz with COP > COP_o: " + fmt(r.value)};
    }
    return {false, "COP never exceeds COP_o"};
}

Verdict c05() {
    const auto n2 = sweep(engine_preset(SpinModel::heisenberg(2, 0.0)), "J", 0.0, 10.0, 1000);
    const auto n3 = sweep(engine_preset(SpinModel::heisenberg(3, 0.0)), "J", 0.0, 10.0, 1000);
    double max2 = -INFINITY, max3 = -INFINITY;
    for (const auto& r : n2)
        if (r.report.eta) max2 = std::max(max2, *r.report.eta);
    for (const auto& r : n3)
        if (r.report.eta) max3 = std::max(max3, *r.report.eta);

    // grid indices where N=2 beats N=3; they must form one run from J>0 up to the crossover
    const double step = 10.0 / 999.0;
    int last = -1, first = -1, count = 0;
    for (std::size_t i = 0; i < n2.size(); ++i) {
        const auto& a = n2[i].report;
        const auto& b = n3[i].report;
        if (a.eta && b.eta && *a.eta > *b.eta) {
            if (first < 0) first = int(i);
            last = int(i);
            ++count;
        }
    }
    const bool contiguous = count > 0 && count == last - first + 1 && first <= 1;
    const long target = std::lround(0.52 / step);
    const bool crossover = contiguous && std::labs(last - target) <= 1;
    const bool ok = max3 >= 0.35 && max3 <= 0.37 && max2 >= 0.33 && max2 <= 0.35 && crossover;
    std::ostringstream m;
    m << "max eta N=3=" << fmt(max3) << " N=2=" << fmt(max2) << " eta2>eta3 on grid indices [" << first << ','
      << last << "] (J up to " << fmt(n2[last < 0 ? 0 : last].value) << ") vs index of J=0.52: " << target
      << " (grid step " << fmt(step) << ')';
    return {ok, m.str()};
}

Verdict c06() {
    const auto h3 = run_cycle(engine_preset(SpinModel::heisenberg(3, 50.0))).report;
    const auto h2 = run_cycle(engine_preset(SpinModel::heisenberg(2, 50.0))).report;
    const bool ok = h3.mode == Mode::Engine && std::abs(*h3.eta - 0.25) <= 0.01 && h2.mode != Mode::Engine;
    return {ok, "N=3 mode=" + std::string(mode_name(*h3.mode)) + " eta=" + (h3.eta ? fmt(*h3.eta) : "none") +
                    "; N=2 mode=" + std::string(mode_name(*h2.mode))};
}

Verdict c07() {
    bool ok = true;
    std::string m;
    for (int n = 2; n <= 6; ++n) {
        const auto r = run_cycle(engine_preset(SpinModel::ising_chain(n, 10.0))).report;
        const bool engine = r.mode == Mode::Engine;
        ok = ok && engine == (n % 2 == 1);
        m += "N=" + std::to_string(n) + ":" + std::string(mode_name(*r.mode)) + " ";
    }
    return {ok, m};
}

Verdict c08() {
    const double step = 4.0 / 400.0;
    bool ok = true;
    std::ostringstream m;
    for (int n = 2; n <= 6; ++n) {
        const double lo_allowed = n == 2 ? -2.1 : -0.6;
        const double lo_target = n == 2 ? -2.0 : -0.5;
        double lo = INFINITY, hi = -INFINITY;
        for (const auto& r : sweep(fridge_preset(SpinModel::ising_chain(n, 0.0)), "J", -3.0, 1.0, 401)) {
            if (r.report.cop && *r.report.cop > r.report.cop_otto) {
                lo = std::min(lo, r.value);
                hi = std::max(hi, r.value);
            }
        }
        const bool found = std::isfinite(lo);
        const bool inside = found && lo >= lo_allowed && hi <= 0.0;
        const bool ends = found && std::abs(lo - lo_target) <= step + 1e-12 && std::abs(hi) <= step + 1e-12;
        ok = ok && inside && ends;
        m << "N=" << n << ":[" << (found ? fmt(lo) : "none") << ',' << (found ? fmt(hi) : "none") << "]"
          << (inside && ends ? "" : (inside ? "(endpoint off)" : "(outside)")) << ' ';
    }
    return {ok, m.str()};
}

Verdict c09() {
    const double cop_o = 2.0 / 3.0;
    double max3 = -INFINITY, max2 = -INFINITY, at2 = NAN;
    for (const auto& r : sweep(fridge_preset(SpinModel::heisenberg(3, 0.0)), "J", -3.0, 3.0, 601))
        if (r.report.cop) max3 = std::max(max3, *r.report.cop);
    for (const auto& r : sweep(fridge_preset(SpinModel::heisenberg(2, 0.0)), "J", -3.0, 3.0, 601)) {
        if (r.report.cop && *r.report.cop > max2) {
            max2 = *r.report.cop;
            at2 = r.value;
        }
    }
    const bool ok = max3 > cop_o && max2 <= cop_o + 1e-10;
    return {ok, "max COP N=3=" + fmt(max3) + " max COP N=2=" + fmt(max2) + " at J=" + fmt(at2) + " COP_o=" + fmt(cop_o)};
}

Verdict c10() {
    oracle::Gen g(1010);
    double first = 0, shift = 0, sign = 0;
    int draws = 0;
    for (const auto& make : model_makers()) {
        for (int d = 0; d < 250; ++d, ++draws) {
            const auto p = random_params(g, make(g));
            const auto c = run_cycle(p);
            const auto& r = c.report;
            first = std::max(first, std::abs(r.Qh + r.Qc - r.W));

            ThermalState hot = c.hot, cold = c.cold;
            const double offset = g.uniform(-50, 50);
            for (auto& l : hot.spectrum.levels) l.energy += offset;
            for (auto& l : cold.spectrum.levels) l.energy += offset;
            hot.populations = gibbs_populations(hot.spectrum, 1.0 / p.T_hot);
            cold.populations = gibbs_populations(cold.spectrum, 1.0 / p.T_cold);
            const auto s = cycle_from_states(p, hot, cold).report;
            shift = std::max({shift, std::abs(s.Qh - r.Qh), std::abs(s.Qc - r.Qc), std::abs(s.W - r.W)});

            if (p.model.family == Family::IsingKSEA) {
                auto f = p;
                f.model.Gz = -p.model.Gz;
                const auto fr = run_cycle(f).report;
                sign = std::max({sign, std::abs(fr.Qh - r.Qh), std::abs(fr.Qc - r.Qc), std::abs(fr.W - r.W)});
            }
        }
    }
    const bool ok = first <= 1e-13 && shift <= 1e-10 && sign <= 1e-12;
    return {ok, "draws=" + std::to_string(draws) + " first-law=" + fmt(first) + " shift=" + fmt(shift) +
                    " Gz-sign=" + fmt(sign)};
}

Verdict c11() {
    oracle::Gen g(1111);
    double spectra = 0, thermal = 0, zrel = 0;
    for (const auto& make : model_makers()) {
        for (int d = 0; d < 100; ++d) {
            const SpinModel m = make(g);
            const double h = g.uniform(0.1, 10);
            const Matrix H = build_hamiltonian(m, h);
            spectra = std::max(spectra, oracle::max_abs_diff(analytic_spectrum(m, h).sorted_energies(),
                                                       brute_force_spectrum(H).sorted_energies()));
            double beta = g.uniform(0.05, 1.5);
            if (g.coin()) beta = -beta;
            thermal = std::max(thermal, (thermal_density_matrix(m, h, beta).rho - oracle::gibbs_expm(H, beta)).cwiseAbs().maxCoeff());
            if (const auto z = partition_function_closed(m, h, beta)) {
                // direct sum over the literal eigenvalue lists (Ising) or the closed-form levels (KSEA)
                std::vector<double> energies;
                if (m.family == Family::IsingChain)
                    energies = oracle::evaluate_levels(oracle::parse_levels(oracle::ising_level_list(m.n_sites)), h, m.J);
                else
                    energies = analytic_spectrum(m, h).state_energies();
                zrel = std::max(zrel, std::abs(*z / oracle::direct_sum_z(energies, beta) - 1.0));
            }
        }
    }
    const bool ok = spectra <= 1e-9 && thermal <= 1e-10 && zrel <= 1e-12;
    return {ok, "spectra=" + fmt(spectra) + " thermal=" + fmt(thermal) + " Z rel=" + fmt(zrel)};
}

Verdict c12() {
    oracle::Gen g(1212);
    double eta = -INFINITY, cop = -INFINITY;
    int engines = 0, fridges = 0, draws = 0;
    for (const auto& make : model_makers()) {
        for (int d = 0; d < 1000; ++d, ++draws) {
            const auto r = run_cycle(random_params(g, make(g))).report;
            if (r.eta) {
                ++engines;
                eta = std::max(eta, *r.eta - *r.eta_carnot);
            }
            if (r.cop) {
                ++fridges;
                cop = std::max(cop, *r.cop - *r.cop_carnot);
            }
        }
    }
    const bool ok = eta <= 1e-10 && cop <= 1e-10;
    return {ok, "draws=" + std::to_string(draws) + " engines=" + std::to_string(engines) + " max(eta-eta_C)=" +
                    fmt(eta) + " refrigerators=" + std::to_string(fridges) + " max(COP-COP_C)=" + fmt(cop)};
}

Verdict c13() {
    oracle::Gen g(1313);
    double gap = 0;
    int negative = 0;
    const auto makers = model_makers();
    for (std::size_t k = 1; k < makers.size(); ++k) {
        for (int d = 0; d < 200; ++d) {
            auto p = random_params(g, makers[k](g));
            if (d % 3 == 0) {
                p.allow_negative_temperature = true;
                if (g.coin()) p.T_hot = -p.T_hot;
                else p.T_cold = -p.T_cold;
                ++negative;
            }
            gap = std::max(gap, std::abs(local_ledger(run_cycle(p), Convention::Case4).gap));
        }
    }
    double min_ksea_gap = INFINITY, min_excess = INFINITY, zero_gz_excess = 0;
    for (int d = 0; d < 500; ++d) {
        double gz = g.uniform(0.1, 5);
        if (g.coin()) gz = -gz;
        const auto c = run_cycle(random_params(g, SpinModel::ising_ksea(g.uniform(-5, 5), gz)));
        min_ksea_gap = std::min(min_ksea_gap, local_ledger(c, Convention::Case4).gap);
        min_excess = std::min(min_excess, stage_works(c).first_stroke_excess);

        const auto z = run_cycle(random_params(g, SpinModel::ising_ksea(g.uniform(-5, 5), 0.0)));
        zero_gz_excess = std::max(zero_gz_excess, std::abs(stage_works(z).first_stroke_excess));
    }
    const bool ok = gap <= 1e-10 && min_ksea_gap > 0.0 && min_excess > 0.0 && zero_gz_excess <= 1e-12;
    return {ok, "max |gap| Ising/Heisenberg=" + fmt(gap) + " (" + std::to_string(negative) + " negative-T draws)" +
                    " min KSEA gap=" + fmt(min_ksea_gap) + " min -(W1-2w1) Gz!=0=" + fmt(min_excess) +
                    " max |-(W1-2w1)| Gz=0=" + fmt(zero_gz_excess)};
}

Verdict c14() {
    oracle::Gen g(1414);
    const auto makers = model_makers();
    double worst = 0;
    for (int d = 0; d < 500; ++d) {
        const auto c = run_cycle(random_params(g, makers[d % makers.size()](g)));
        worst = std::max(worst, std::abs(c.report.W - work_entropy_form(c)));
    }
    return {worst <= 1e-10, "draws=500 max |W - W_entropy|=" + fmt(worst)};
}

Verdict c15() {
    oracle::Gen g(1515);
    const auto makers = model_makers();
    double worst = 0;
    int bad_signs = 0, draws = 0;
    for (std::size_t k = 1; k < makers.size(); ++k) {
        for (int d = 0; d < 250; ++d, ++draws) {
            const auto c = run_cycle(random_params(g, makers[k](g)));
            const auto li = linear_identities(c);
            worst = std::max({worst, li.residual_qh, li.residual_qc, li.residual_w, li.residual_eta.value_or(0.0),
                              li.residual_cop.value_or(0.0)});
            // sign diagnostic re-derived here from the report
            const auto& r = c.report;
            const double bJ = li.b * li.coupling;
            bool signs = li.signs_consistent;
            if (r.mode == Mode::Engine) signs = signs && li.a > 0.0 && ((*r.eta > r.eta_otto) == (bJ < 0.0));
            if (!signs) ++bad_signs;
        }
    }
    return {worst <= 1e-12 && bad_signs == 0,
            "draws=" + std::to_string(draws) + " max residual=" + fmt(worst) + " sign failures=" + std::to_string(bad_signs)};
}

Verdict c16() {
    oracle::Gen g(1616);
    double worst = 0;
    int states = 0;
    for (int d = 0; d < 100; ++d) {
        const int n = g.integer(2, 6);
        double beta = g.uniform(0.05, 3);
        if (g.coin()) beta = -beta;
        const auto st = thermal_density_matrix(SpinModel::ising_chain(n, g.uniform(-5, 5)), g.uniform(0.1, 10), beta);
        if (n == 2) worst = std::max(worst, concurrence(st.rho));
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) worst = std::max(worst, concurrence(partial_trace(st.rho, n, {a, b})));
        ++states;
    }
    int corner_mismatch = 0;
    for (int d = 0; d < 200; ++d) {
        const double gz = d % 4 == 0 ? 0.0 : g.uniform(-5, 5);
        const auto st = thermal_density_matrix(SpinModel::ising_ksea(g.uniform(-5, 5), gz), g.uniform(0.1, 10),
                                               g.uniform(0.05, 3));
        const bool coherent = std::abs(st.rho(0, 3)) > 0.0;
        if (coherent != (gz != 0.0)) ++corner_mismatch;
    }
    return {worst == 0.0 && corner_mismatch == 0, "Ising states=" + std::to_string(states) + " max concurrence=" +
                                                      fmt(worst) + " KSEA corner mismatches=" + std::to_string(corner_mismatch)};
}

// Efficiency at maximum work for Ising N=2..6 over J in [0, 10]; reported, never asserted.
std::string efficiency_at_max_work() {
    std::ostringstream m;
    double lo = INFINITY, hi = -INFINITY;
    for (int n = 2; n <= 6; ++n) {
        double best_w = -INFINITY, eta = NAN;
        for (const auto& r : sweep(engine_preset(SpinModel::ising_chain(n, 0.0)), "J", 0.0, 10.0, 1001)) {
            if (r.report.eta && r.report.W > best_w) {
                best_w = r.report.W;
                eta = *r.report.eta;
            }
        }
        lo = std::min(lo, eta);
        hi = std::max(hi, eta);
        m << "N=" << n << ":eta=" << fmt(eta) << " ";
    }
    m << "spread=" << fmt(hi - lo);
    return m.str();
}

struct Criterion {
    int id;
    const char* title;
    Verdict (*run)();
};

const Criterion criteria[] = {
    {1, "idle-heat threshold Jz*", c01},
    {2, "idle-heat extremum", c02},
    {3, "KSEA efficiency ceiling at Jz=0", c03},
    {4, "KSEA COP crossover at Jz=2.6", c04},
    {5, "Heisenberg efficiency maxima and crossover", c05},
    {6, "Heisenberg strong coupling", c06},
    {7, "Ising parity at J=10", c07},
    {8, "Ising COP enhancement windows", c08},
    {9, "Heisenberg COP", c09},
    {10, "first law, shift invariance, Gz sign symmetry", c10},
    {11, "oracle equivalence", c11},
    {12, "Carnot bounds", c12},
    {13, "extensivity dichotomy and stage inequality", c13},
    {14, "entropy-form work identity", c14},
    {15, "linear identities", c15},
    {16, "separability and KSEA coherence", c16},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::cerr << "usage: acceptance [--only N]\n";
            return 2;
        }
    }
    bool all = true;
    for (const auto& c : criteria) {
        if (only && c.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char id[8];
        std::snprintf(id, sizeof id, "C%02d", c.id);
        std::cout << (v.pass ? "PASS " : "FAIL ") << id << ' ' << c.title << " | " << v.measured << " | "
                  << std::fixed;
        std::cout.precision(2);
        std::cout << secs << "s" << std::defaultfloat << '\n';
        std::cout.precision(6);
        all = all && v.pass;
    }
    if (!only) std::cout << "INFO efficiency at maximum work (not asserted) | " << efficiency_at_max_work() << '\n';
    return all ? 0 : 1;
}
