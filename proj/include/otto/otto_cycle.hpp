// otto_cycle.hpp — Four-stroke quantum Otto cycle on a spin working substance
//
// Stroke order: thermalise at (h_hot, T_hot), adiabatic h_hot -> h_cold, thermalise at
// (h_cold, T_cold), adiabatic h_cold -> h_hot. Populations are paired by level label.
// Sign convention: heat absorbed by the substance is positive, W = Q_h + Q_c is the
// work delivered to the outside.

#pragma once

#include "otto/spin_models.hpp"
#include "otto/thermo.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace otto {

enum class Mode { Engine, Refrigerator, Heater, Accelerator, Idle };

std::string_view mode_name(Mode mode);

// Quantities with |x| <= 1e-12 count as zero and give Mode::Idle.
Mode classify_mode(double q_hot, double q_cold, double work);

struct CycleParams {
    SpinModel model;
    double h_hot{4.0};
    double h_cold{3.0};
    double T_hot{4.0};
    double T_cold{1.0};
    bool allow_negative_temperature{false};
};

// Q_h = q_idle + q_work_hot, Q_c = -q_idle - q_work_cold, W = q_work_hot - q_work_cold.
struct HeatSplit {
    double q_idle{0.0};
    double q_work_hot{0.0};
    double q_work_cold{0.0};
    double energy_offset{0.0};  // constant added to every level before splitting
};

enum class IdleGauge {
    Hamiltonian,      // energies exactly as produced by build_hamiltonian
    WorkingCentered,  // shifted so the working levels average to zero at h_hot
};

struct CycleReport {
    double Qh{0.0};
    double Qc{0.0};
    double W{0.0};
    std::optional<double> eta;  // engine only
    std::optional<double> cop;  // refrigerator only
    std::optional<Mode> mode;   // absent when a bath temperature is negative
    HeatSplit idle;
    HeatSplit idle_centered;
    double W1{0.0};  // work on the substance during h_hot -> h_cold
    double W2{0.0};  // work on the substance during h_cold -> h_hot
    std::optional<double> eta_gamma;  // 1 - q_work_cold / q_work_hot, centred gauge
    double eta_otto{0.0};
    double cop_otto{0.0};
    std::optional<double> eta_carnot;
    std::optional<double> cop_carnot;
};

struct Cycle {
    CycleParams params;
    ThermalState hot;   // at (h_hot, T_hot)
    ThermalState cold;  // at (h_cold, T_cold)
    CycleReport report;
};

// Requires h_hot > h_cold > 0 and T_hot > T_cold > 0 (any non-zero temperatures with
// allow_negative_temperature). Throws std::invalid_argument otherwise.
Cycle run_cycle(const CycleParams& params);

// Same evaluation without the field-ordering precondition (e.g. h_hot == h_cold).
Cycle evaluate_cycle(const CycleParams& params);

// Cycle bookkeeping for externally prepared hot and cold states (labels must match).
Cycle cycle_from_states(const CycleParams& params, ThermalState hot, ThermalState cold);

HeatSplit idle_decomposition(const Cycle& cycle, IdleGauge gauge = IdleGauge::Hamiltonian);

// q_I admissibility window for an engine: efficiency stays between eta_otto and eta_carnot
// exactly when lower < q_I < upper. Diagnostic only.
struct IdleWindow {
    double lower{0.0};
    double upper{0.0};
    double q_idle{0.0};
    bool inside{false};
};
std::optional<IdleWindow> idle_admissibility(const Cycle& cycle);

// Hamiltonian-gauge idle heat of the KSEA cycle as a function of J_z.
double ksea_idle_heat(double jz, double gz, double h_hot, double h_cold, double T_hot, double T_cold);

// J_z > 0 where the KSEA idle heat changes sign: scan [0.01, 50] in steps of 0.01, then bisect.
std::optional<double> jz_star(double gz, double h_hot, double h_cold, double T_hot, double T_cold);
double jz_star_closed_form(double gz, double h_hot, double h_cold, double T_hot, double T_cold);

enum class Convention { Case1, Case2, Case3, Case4 };
std::string_view convention_name(Convention c);
Convention parse_convention(std::string_view name);

struct SiteLedger {
    int site{0};
    double w{0.0};
    double q_hot{0.0};
    double q_cold{0.0};
    double T_eff_hot{0.0};   // +inf when the local populations are equal
    double T_eff_cold{0.0};
};

struct LocalLedger {
    Convention convention{Convention::Case4};
    std::vector<SiteLedger> sites;
    double w_total{0.0};
    double gap{0.0};  // W - w_total
};

// Case1: global state + global H, Case2: local state + global H,
// Case3: global state + local H, Case4: local state + local H (H_l = diag(h, -h)).
LocalLedger local_ledger(const Cycle& cycle, Convention convention);

struct StageWorks {
    double W1{0.0};
    double W2{0.0};
    std::vector<double> w1;  // per site, local Hamiltonian diag(h, -h)
    std::vector<double> w2;
    // -(W1 - sum_a w1_a): excess of global over local work extracted on the first adiabat
    double first_stroke_excess{0.0};
};
StageWorks stage_works(const Cycle& cycle);

struct EffectiveTemperature {
    double hot{0.0};
    double cold{0.0};
};
// T_eff = 2h / ln(P_down / P_up) from each site's reduced state.
std::vector<EffectiveTemperature> effective_temperatures(const Cycle& cycle);

// (T_h - T_c)(S - S') - T_h H[p'|p] - T_c H[p|p']; positive temperatures only.
double work_entropy_form(const Cycle& cycle);
// Site version with effective temperatures and local populations; nullopt if a T_eff is infinite.
std::optional<double> local_work_entropy_form(const Cycle& cycle, int site);

struct LinearIdentities {
    double a{0.0};
    double b{0.0};
    double coupling{0.0};
    double residual_qh{0.0};
    double residual_qc{0.0};
    double residual_w{0.0};
    std::optional<double> residual_eta;  // engine mode
    std::optional<double> residual_cop;  // refrigerator mode
    bool signs_consistent{true};
};
// Throws for models whose spectrum is not linear in h.
LinearIdentities linear_identities(const Cycle& cycle);

struct CopReport {
    double cop{0.0};
    double cop_otto{0.0};
    std::optional<double> cop_carnot;
    bool enhancement{false};  // cop > cop_otto
};
// Throws std::invalid_argument unless the cycle runs as a refrigerator.
CopReport cop_report(const Cycle& cycle);

}  // namespace otto
