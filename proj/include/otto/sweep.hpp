// sweep.hpp — Parameter sweeps, CSV emission and figure presets

#pragma once

#include "otto/otto_cycle.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace otto {

struct OutputRequest {
    bool idle{true};     // fill q_idle / q_work_hot
    bool ledger{true};   // fill w_local_total / gap
    bool entropy{false}; // verify the entropy-form work identity on every row
    bool linear{false};  // verify the linear-coefficient identities on every row
};

// Parses a comma list drawn from {cycle, idle, ledger, entropy, linear}.
OutputRequest parse_outputs(std::string_view list);

struct SweepConfig {
    CycleParams base;
    std::string swept{"J"};
    double from{0.0};
    double to{1.0};
    int steps{2};
    Convention convention{Convention::Case4};
    OutputRequest outputs;
    std::string out_path;  // empty: stdout
    bool parallel{false};
};

// Canonical CSV spelling (J, Jz, Gz, h_hot, h_cold, T_hot, T_cold) of a CLI or CSV name.
std::string canonical_parameter(std::string_view name);
void set_parameter(CycleParams& params, std::string_view canonical, double value);

// Throws std::invalid_argument for bad ranges, unknown parameters or unsupported outputs.
void validate(const SweepConfig& config);

// from + (to - from) * k / (steps - 1), k = 0..steps-1, with the last point exactly `to`.
std::vector<double> sweep_grid(double from, double to, int steps);

struct SweepRow {
    CycleParams params;
    std::string swept;
    double value{0.0};
    CycleReport report;
    std::optional<double> q_idle;
    std::optional<double> q_work_hot;
    std::optional<double> w_local_total;
    std::optional<double> gap;
};

SweepRow evaluate_point(const CycleParams& params, const std::string& swept, double value,
                        Convention convention, const OutputRequest& outputs);

// Rows in grid order regardless of how many threads evaluate them.
std::vector<SweepRow> run_sweep(const SweepConfig& config, int threads = 1);

// 1 unless `parallel`; then OTTO_FORGE_THREADS if set, else the hardware concurrency.
int thread_budget(bool parallel);

std::string format_double(double value);
std::string csv_header();
std::string csv_row(const SweepRow& row);
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

// JSON object with the CLI flag names as keys ("model", "n", "j", "h-hot", ...).
void apply_json_config(SweepConfig& config, const std::string& json_text);

// Bath presets: engine h=4, h'=3, T_h=4, T_c=1; refrigerator h=5, h'=2, T_h=2, T_c=1.
CycleParams engine_preset(const SpinModel& model);
CycleParams fridge_preset(const SpinModel& model);

std::vector<std::string> figure_ids();

struct FigureFile {
    std::string name;
    std::string contents;
};

// Throws std::invalid_argument for an unknown id.
std::vector<FigureFile> reproduce_figure(std::string_view id, int threads = 1);

}  // namespace otto
