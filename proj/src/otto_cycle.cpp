// otto_cycle.cpp — Global and local Otto-cycle bookkeeping

#include "otto/otto_cycle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace otto {

namespace {

constexpr double kZero = 1e-12;

struct LevelData {
    std::vector<double> m;       // multiplicities
    std::vector<double> e_hot;   // E_i(h_hot)
    std::vector<double> e_cold;  // E_i(h_cold)
    std::vector<bool> idle;
};

LevelData level_data(const Cycle& c) {
    LevelData d;
    const auto& hot = c.hot.spectrum.levels;
    const auto& cold = c.cold.spectrum.levels;
    if (hot.size() != cold.size()) throw std::logic_error("hot and cold spectra disagree in size");
    for (std::size_t k = 0; k < hot.size(); ++k) {
        if (hot[k].label != cold[k].label) throw std::logic_error("hot and cold level labels disagree");
        d.m.push_back(hot[k].multiplicity);
        d.e_hot.push_back(hot[k].energy);
        d.e_cold.push_back(cold[k].energy);
        d.idle.push_back(hot[k].idle);
    }
    return d;
}

// p_k - p'_k per level. The most populated level takes its difference from normalisation,
// which keeps sum_k m_k dp_k = 0 to rounding of the small terms.
std::vector<double> population_change(const std::vector<double>& m, const std::vector<double>& p,
                                      const std::vector<double>& q) {
    std::vector<double> dp(m.size());
    std::size_t top = 0;
    for (std::size_t k = 0; k < m.size(); ++k) {
        dp[k] = p[k] - q[k];
        if (m[k] * std::max(p[k], q[k]) > m[top] * std::max(p[top], q[top])) top = k;
    }
    double rest = 0.0;
    for (std::size_t k = 0; k < m.size(); ++k)
        if (k != top) rest += m[k] * dp[k];
    dp[top] = -rest / m[top];
    return dp;
}

void check_temperatures(const CycleParams& p) {
    if (!std::isfinite(p.T_hot) || !std::isfinite(p.T_cold) || p.T_hot == 0.0 || p.T_cold == 0.0) {
        throw std::invalid_argument("bath temperatures must be finite and non-zero");
    }
    if (!p.allow_negative_temperature) {
        if (p.T_hot < 0.0 || p.T_cold < 0.0) {
            throw std::invalid_argument("negative temperature requires --allow-negative-temp");
        }
        if (!(p.T_hot > p.T_cold)) throw std::invalid_argument("T_hot must exceed T_cold");
    }
    if (!std::isfinite(p.h_hot) || !std::isfinite(p.h_cold)) throw std::invalid_argument("fields must be finite");
}

double trace_product(const Matrix& a, const Matrix& b) { return (a * b).trace().real(); }

Matrix local_hamiltonian(double h) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = h;
    m(1, 1) = -h;
    return m;
}

bool both_positive(const CycleParams& p) { return p.T_hot > 0.0 && p.T_cold > 0.0; }

CycleReport build_report(const Cycle& c) {
    const auto d = level_data(c);
    const auto& p = c.hot.populations.p;
    const auto& q = c.cold.populations.p;
    CycleReport r;
    double minus_w1 = 0.0, minus_w2 = 0.0;
    const auto change = population_change(d.m, p, q);
    for (std::size_t k = 0; k < d.m.size(); ++k) {
        const double dp = change[k];
        r.Qh += d.m[k] * d.e_hot[k] * dp;
        r.Qc -= d.m[k] * d.e_cold[k] * dp;
        minus_w1 += d.m[k] * p[k] * (d.e_hot[k] - d.e_cold[k]);
        minus_w2 -= d.m[k] * q[k] * (d.e_hot[k] - d.e_cold[k]);
    }
    r.W = r.Qh + r.Qc;
    r.W1 = -minus_w1;
    r.W2 = -minus_w2;

    const double h = c.params.h_hot, hc = c.params.h_cold;
    r.eta_otto = 1.0 - hc / h;
    r.cop_otto = hc / (h - hc);
    const double th = c.params.T_hot, tc = c.params.T_cold;
    if (both_positive(c.params)) {
        r.mode = classify_mode(r.Qh, r.Qc, r.W);
        r.eta_carnot = 1.0 - tc / th;
        r.cop_carnot = tc / (th - tc);
        if (*r.mode == Mode::Engine) r.eta = r.W / r.Qh;
        if (*r.mode == Mode::Refrigerator) r.cop = r.Qc / std::abs(r.W);
    }
    return r;
}

HeatSplit split_with_offset(const Cycle& c, double offset) {
    const auto d = level_data(c);
    const auto& p = c.hot.populations.p;
    const auto& q = c.cold.populations.p;
    HeatSplit s;
    s.energy_offset = offset;
    double qh = 0.0, qc = 0.0;
    const auto change = population_change(d.m, p, q);
    for (std::size_t k = 0; k < d.m.size(); ++k) {
        const double dp = change[k];
        const double eh = d.e_hot[k] + offset;
        const double ec = d.e_cold[k] + offset;
        if (d.idle[k]) {
            s.q_idle += d.m[k] * eh * dp;
        } else {
            qh += d.m[k] * eh * dp;
            qc += d.m[k] * ec * dp;
        }
    }
    s.q_work_hot = qh;
    s.q_work_cold = qc;
    return s;
}

double centred_offset(const Cycle& c) {
    double sum = 0.0, count = 0.0;
    for (const auto& l : c.hot.spectrum.levels) {
        if (l.idle) continue;
        sum += l.multiplicity * l.energy;
        count += l.multiplicity;
    }
    return count > 0.0 ? -sum / count : 0.0;
}

std::vector<Eigen::Matrix2cd> reduced_states(const ThermalState& s) {
    std::vector<Eigen::Matrix2cd> out;
    for (int a = 0; a < s.n_sites(); ++a) out.push_back(reduced_state(s, a).rho);
    return out;
}

double effective_temperature(const Eigen::Matrix2cd& rho, double h) {
    const double up = rho(0, 0).real();
    const double down = rho(1, 1).real();
    if (up == down) return std::numeric_limits<double>::infinity();
    return 2.0 * h / std::log(down / up);
}

}  // namespace

std::string_view mode_name(Mode mode) {
    switch (mode) {
        case Mode::Engine: return "engine";
        case Mode::Refrigerator: return "refrigerator";
        case Mode::Heater: return "heater";
        case Mode::Accelerator: return "accelerator";
        case Mode::Idle: return "idle";
    }
    return "?";
}

Mode classify_mode(double q_hot, double q_cold, double work) {
    if (std::abs(q_hot) <= kZero || std::abs(q_cold) <= kZero || std::abs(work) <= kZero) return Mode::Idle;
    if (q_hot > 0.0 && q_cold < 0.0 && work > 0.0) return Mode::Engine;
    if (q_hot < 0.0 && q_cold > 0.0 && work < 0.0) return Mode::Refrigerator;
    if (q_hot < 0.0 && q_cold < 0.0) return Mode::Heater;
    return Mode::Accelerator;
}

Cycle cycle_from_states(const CycleParams& params, ThermalState hot, ThermalState cold) {
    Cycle c;
    c.params = params;
    c.hot = std::move(hot);
    c.cold = std::move(cold);
    c.report = build_report(c);
    c.report.idle = idle_decomposition(c, IdleGauge::Hamiltonian);
    c.report.idle_centered = idle_decomposition(c, IdleGauge::WorkingCentered);
    const auto& centred = c.report.idle_centered;
    if (std::abs(centred.q_work_hot) > 0.0) c.report.eta_gamma = 1.0 - centred.q_work_cold / centred.q_work_hot;
    return c;
}

Cycle evaluate_cycle(const CycleParams& params) {
    params.model.validate();
    check_temperatures(params);
    return cycle_from_states(params, thermal_density_matrix(params.model, params.h_hot, 1.0 / params.T_hot),
                             thermal_density_matrix(params.model, params.h_cold, 1.0 / params.T_cold));
}

Cycle run_cycle(const CycleParams& params) {
    if (!(params.h_cold > 0.0)) throw std::invalid_argument("h_cold must be positive");
    if (!(params.h_hot > params.h_cold)) throw std::invalid_argument("h_hot must exceed h_cold");
    return evaluate_cycle(params);
}

HeatSplit idle_decomposition(const Cycle& cycle, IdleGauge gauge) {
    return split_with_offset(cycle, gauge == IdleGauge::Hamiltonian ? 0.0 : centred_offset(cycle));
}

std::optional<IdleWindow> idle_admissibility(const Cycle& cycle) {
    const auto& r = cycle.report;
    if (!r.eta_gamma || !r.eta_carnot || r.eta_otto == 0.0 || *r.eta_carnot == 0.0) return std::nullopt;
    const double q_wh = r.idle_centered.q_work_hot;
    IdleWindow w;
    w.q_idle = r.idle_centered.q_idle;
    w.lower = -q_wh * (*r.eta_carnot - *r.eta_gamma) / *r.eta_carnot;
    w.upper = -q_wh * (r.eta_otto - *r.eta_gamma) / r.eta_otto;
    w.inside = w.lower < w.q_idle && w.q_idle < w.upper;
    return w;
}

double ksea_idle_heat(double jz, double gz, double h_hot, double h_cold, double T_hot, double T_cold) {
    CycleParams p;
    p.model = SpinModel::ising_ksea(jz, gz);
    p.h_hot = h_hot;
    p.h_cold = h_cold;
    p.T_hot = T_hot;
    p.T_cold = T_cold;
    return run_cycle(p).report.idle.q_idle;
}

std::optional<double> jz_star(double gz, double h_hot, double h_cold, double T_hot, double T_cold) {
    auto f = [&](double jz) { return ksea_idle_heat(jz, gz, h_hot, h_cold, T_hot, T_cold); };
    constexpr double step = 0.01;
    constexpr int points = 5000;
    double lo = step;
    double f_lo = f(lo);
    if (f_lo == 0.0) return lo;
    for (int k = 2; k <= points; ++k) {
        const double hi = k * step;
        const double f_hi = f(hi);
        if (f_hi == 0.0) return hi;
        if ((f_lo < 0.0) != (f_hi < 0.0)) {
            double a = lo, b = hi, fa = f_lo;
            while (b - a > 1e-12) {
                const double mid = 0.5 * (a + b);
                const double fm = f(mid);
                if (fm == 0.0) return mid;
                if ((fm < 0.0) == (fa < 0.0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            return 0.5 * (a + b);
        }
        lo = hi;
        f_lo = f_hi;
    }
    return std::nullopt;
}

double jz_star_closed_form(double gz, double h_hot, double h_cold, double T_hot, double T_cold) {
    const double bh = 1.0 / T_hot, bc = 1.0 / T_cold;
    const double r_hot = std::hypot(h_hot, gz), r_cold = std::hypot(h_cold, gz);
    return std::log(std::cosh(2.0 * bc * r_cold) / std::cosh(2.0 * bh * r_hot)) / (2.0 * (bc - bh));
}

std::string_view convention_name(Convention c) {
    switch (c) {
        case Convention::Case1: return "case1";
        case Convention::Case2: return "case2";
        case Convention::Case3: return "case3";
        case Convention::Case4: return "case4";
    }
    return "?";
}

Convention parse_convention(std::string_view name) {
    if (name == "case1") return Convention::Case1;
    if (name == "case2") return Convention::Case2;
    if (name == "case3") return Convention::Case3;
    if (name == "case4") return Convention::Case4;
    throw std::invalid_argument("unknown convention '" + std::string(name) + "' (expected case1..case4)");
}

LocalLedger local_ledger(const Cycle& cycle, Convention convention) {
    const int n = cycle.params.model.n_sites;
    const double h = cycle.params.h_hot, hc = cycle.params.h_cold;
    const auto rho_hot = reduced_states(cycle.hot);
    const auto rho_cold = reduced_states(cycle.cold);
    const Matrix hl = local_hamiltonian(h), hl_cold = local_hamiltonian(hc);

    Matrix h_global, h_global_cold;
    if (convention == Convention::Case2) {
        h_global = build_hamiltonian(cycle.params.model, h);
        h_global_cold = build_hamiltonian(cycle.params.model, hc);
    }

    LocalLedger ledger;
    ledger.convention = convention;
    for (int a = 0; a < n; ++a) {
        SiteLedger s;
        s.site = a;
        s.T_eff_hot = effective_temperature(rho_hot[a], h);
        s.T_eff_cold = effective_temperature(rho_cold[a], hc);
        switch (convention) {
            case Convention::Case1:
                s.q_hot = cycle.report.Qh / n;
                s.q_cold = cycle.report.Qc / n;
                break;
            case Convention::Case2: {
                const double norm = std::ldexp(1.0, -(n - 1));
                const Matrix diff = norm * (pauli::on_site(rho_hot[a], a, n) - pauli::on_site(rho_cold[a], a, n));
                s.q_hot = trace_product(h_global, diff);
                s.q_cold = -trace_product(h_global_cold, diff);
                break;
            }
            case Convention::Case3: {
                const Matrix diff = cycle.hot.rho - cycle.cold.rho;
                s.q_hot = trace_product(pauli::on_site(hl, a, n), diff);
                s.q_cold = -trace_product(pauli::on_site(hl_cold, a, n), diff);
                break;
            }
            case Convention::Case4: {
                const Matrix diff = rho_hot[a] - rho_cold[a];
                s.q_hot = trace_product(hl, diff);
                s.q_cold = -trace_product(hl_cold, diff);
                break;
            }
        }
        s.w = s.q_hot + s.q_cold;
        ledger.w_total += s.w;
        ledger.sites.push_back(s);
    }
    ledger.gap = cycle.report.W - ledger.w_total;
    return ledger;
}

StageWorks stage_works(const Cycle& cycle) {
    StageWorks s;
    s.W1 = cycle.report.W1;
    s.W2 = cycle.report.W2;
    const Matrix dh = local_hamiltonian(cycle.params.h_hot) - local_hamiltonian(cycle.params.h_cold);
    const auto rho_hot = reduced_states(cycle.hot);
    const auto rho_cold = reduced_states(cycle.cold);
    double w1_sum = 0.0;
    for (std::size_t a = 0; a < rho_hot.size(); ++a) {
        const Matrix rh = rho_hot[a], rc = rho_cold[a];
        s.w1.push_back(-trace_product(rh, dh));
        s.w2.push_back(trace_product(rc, dh));
        w1_sum += s.w1.back();
    }
    s.first_stroke_excess = -(s.W1 - w1_sum);
    return s;
}

std::vector<EffectiveTemperature> effective_temperatures(const Cycle& cycle) {
    std::vector<EffectiveTemperature> out;
    const auto rho_hot = reduced_states(cycle.hot);
    const auto rho_cold = reduced_states(cycle.cold);
    for (std::size_t a = 0; a < rho_hot.size(); ++a) {
        out.push_back({effective_temperature(rho_hot[a], cycle.params.h_hot),
                       effective_temperature(rho_cold[a], cycle.params.h_cold)});
    }
    return out;
}

double work_entropy_form(const Cycle& cycle) {
    const double th = cycle.params.T_hot, tc = cycle.params.T_cold;
    if (!(th > 0.0 && tc > 0.0)) throw std::invalid_argument("entropy form requires positive temperatures");
    const auto d = level_data(cycle);
    const auto& hot = cycle.hot.populations;
    const auto& cold = cycle.cold.populations;
    double s_hot = 0.0, s_cold = 0.0, d_cold_hot = 0.0, d_hot_cold = 0.0;
    for (std::size_t k = 0; k < d.m.size(); ++k) {
        s_hot -= d.m[k] * hot.p[k] * hot.log_p[k];
        s_cold -= d.m[k] * cold.p[k] * cold.log_p[k];
        d_cold_hot += d.m[k] * cold.p[k] * (cold.log_p[k] - hot.log_p[k]);
        d_hot_cold += d.m[k] * hot.p[k] * (hot.log_p[k] - cold.log_p[k]);
    }
    return (th - tc) * (s_hot - s_cold) - th * d_cold_hot - tc * d_hot_cold;
}

std::optional<double> local_work_entropy_form(const Cycle& cycle, int site) {
    if (site < 0 || site >= cycle.params.model.n_sites) throw std::invalid_argument("site out of range");
    const auto rh = reduced_state(cycle.hot, site).rho;
    const auto rc = reduced_state(cycle.cold, site).rho;
    const double th = effective_temperature(rh, cycle.params.h_hot);
    const double tc = effective_temperature(rc, cycle.params.h_cold);
    if (!std::isfinite(th) || !std::isfinite(tc)) return std::nullopt;
    const std::vector<double> p{rh(0, 0).real(), rh(1, 1).real()};
    const std::vector<double> q{rc(0, 0).real(), rc(1, 1).real()};
    const double s_hot = shannon_entropy(p), s_cold = shannon_entropy(q);
    return (th - tc) * (s_hot - s_cold) - th * relative_entropy(q, p) - tc * relative_entropy(p, q);
}

LinearIdentities linear_identities(const Cycle& cycle) {
    const auto& model = cycle.params.model;
    const double h = cycle.params.h_hot, hc = cycle.params.h_cold;
    const auto hot_levels = linear_levels(model, h);
    linear_levels(model, hc);  // validates the cold field too
    const auto& p = cycle.hot.populations.p;
    const auto& q = cycle.cold.populations.p;

    LinearIdentities li;
    li.coupling = model.coupling();
    std::vector<double> m;
    for (const auto& l : hot_levels) m.push_back(l.multiplicity);
    const auto change = population_change(m, p, q);
    for (std::size_t k = 0; k < hot_levels.size(); ++k) {
        const double dp = change[k];
        li.a += hot_levels[k].multiplicity * hot_levels[k].a * dp;
        li.b += hot_levels[k].multiplicity * hot_levels[k].b * dp;
    }
    const auto& r = cycle.report;
    const double bj = li.b * li.coupling;
    li.residual_qh = std::abs(r.Qh - (li.a * h + bj));
    li.residual_qc = std::abs(r.Qc - (-li.a * hc - bj));
    li.residual_w = std::abs(r.W - li.a * (h - hc));

    // |bJ| at rounding level carries no sign information
    const double scale = std::max({1.0, std::abs(li.a * h), std::abs(r.Qh)});
    const bool bj_negligible = std::abs(bj) <= 1e-12 * scale;
    if (r.eta) {
        li.residual_eta = std::abs(*r.eta - r.eta_otto / (1.0 + bj / (li.a * h)));
        if (!(li.a > 0.0)) li.signs_consistent = false;
        if (!bj_negligible && std::abs(*r.eta - r.eta_otto) > 1e-12 && ((*r.eta > r.eta_otto) != (bj < 0.0)))
            li.signs_consistent = false;
    }
    if (r.cop) {
        li.residual_cop = std::abs(*r.cop - (r.cop_otto + bj / (li.a * (h - hc))));
        if (li.a * (h - hc) < 0.0 && !bj_negligible && std::abs(*r.cop - r.cop_otto) > 1e-12 &&
            ((*r.cop > r.cop_otto) != (bj < 0.0)))
            li.signs_consistent = false;
    }
    return li;
}

CopReport cop_report(const Cycle& cycle) {
    const auto& r = cycle.report;
    if (!r.cop) throw std::invalid_argument("cycle is not running as a refrigerator");
    CopReport c;
    c.cop = *r.cop;
    c.cop_otto = r.cop_otto;
    c.cop_carnot = r.cop_carnot;
    c.enhancement = c.cop > c.cop_otto;
    return c;
}

}  // namespace otto
