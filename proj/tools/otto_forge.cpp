// otto_forge.cpp — command-line front end: run, sweep, figure, selftest

#include "otto/selftest.hpp"
#include "otto/sweep.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

struct Flags {
    std::string config;
    std::string model{"ising"};
    int n{2};
    double j{0.0}, jz{0.0}, gz{0.0};
    double h_hot{4.0}, h_cold{3.0}, t_hot{4.0}, t_cold{1.0};
    std::string sweep{"j"};
    double from{0.0}, to{1.0};
    int steps{2};
    std::string out;
    std::string convention{"case4"};
    std::string outputs;
    bool allow_negative{false};
    bool parallel{false};

    std::map<std::string, CLI::Option*> opts;
};

void add_model_flags(CLI::App* app, Flags& f, bool sweep) {
    f.opts["config"] = app->add_option("--config", f.config, "JSON file with the same keys as the flags");
    f.opts["model"] = app->add_option("--model", f.model, "ising | ising-ksea | heisenberg");
    f.opts["n"] = app->add_option("--n", f.n, "number of sites");
    f.opts["j"] = app->add_option("--j", f.j, "exchange coupling J (ising, heisenberg)");
    f.opts["jz"] = app->add_option("--jz", f.jz, "Ising coupling Jz (ising-ksea)");
    f.opts["gz"] = app->add_option("--gz", f.gz, "KSEA strength Gz (ising-ksea)");
    f.opts["h-hot"] = app->add_option("--h-hot", f.h_hot, "field on the hot isochore");
    f.opts["h-cold"] = app->add_option("--h-cold", f.h_cold, "field on the cold isochore");
    f.opts["t-hot"] = app->add_option("--t-hot", f.t_hot, "hot bath temperature");
    f.opts["t-cold"] = app->add_option("--t-cold", f.t_cold, "cold bath temperature");
    f.opts["out"] = app->add_option("--out", f.out, "CSV output path");
    f.opts["convention"] = app->add_option("--convention", f.convention, "local ledger convention case1..case4");
    f.opts["outputs"] = app->add_option("--outputs", f.outputs, "comma list of cycle,idle,ledger,entropy,linear");
    f.opts["allow-negative-temp"] = app->add_flag("--allow-negative-temp", f.allow_negative, "accept negative bath temperatures");
    if (sweep) {
        f.opts["sweep"] = app->add_option("--sweep", f.sweep, "swept parameter: j, jz, gz, h-hot, h-cold, t-hot, t-cold");
        f.opts["from"] = app->add_option("--from", f.from, "first grid value");
        f.opts["to"] = app->add_option("--to", f.to, "last grid value");
        f.opts["steps"] = app->add_option("--steps", f.steps, "number of grid points (>= 2)");
        f.opts["parallel"] = app->add_flag("--parallel", f.parallel, "evaluate grid points on several threads");
    }
}

bool given(const Flags& f, const std::string& key) {
    auto it = f.opts.find(key);
    return it != f.opts.end() && it->second->count() > 0;
}

otto::SweepConfig build_config(const Flags& f) {
    otto::SweepConfig c;
    c.base = otto::engine_preset(otto::SpinModel::ising_chain(2, 0.0));
    if (given(f, "config")) {
        std::ifstream in(f.config);
        if (!in) throw std::invalid_argument("cannot read config file " + f.config);
        std::stringstream ss;
        ss << in.rdbuf();
        otto::apply_json_config(c, ss.str());
    }
    if (given(f, "model")) {
        c.base.model.family = otto::parse_family(f.model);
        if (c.base.model.family == otto::Family::IsingKSEA && !given(f, "n")) c.base.model.n_sites = 2;
    }
    if (given(f, "n")) c.base.model.n_sites = f.n;
    if (given(f, "j")) c.base.model.J = f.j;
    if (given(f, "jz")) c.base.model.Jz = f.jz;
    if (given(f, "gz")) c.base.model.Gz = f.gz;
    if (given(f, "h-hot")) c.base.h_hot = f.h_hot;
    if (given(f, "h-cold")) c.base.h_cold = f.h_cold;
    if (given(f, "t-hot")) c.base.T_hot = f.t_hot;
    if (given(f, "t-cold")) c.base.T_cold = f.t_cold;
    if (given(f, "allow-negative-temp")) c.base.allow_negative_temperature = f.allow_negative;
    if (given(f, "sweep")) c.swept = f.sweep;
    if (given(f, "from")) c.from = f.from;
    if (given(f, "to")) c.to = f.to;
    if (given(f, "steps")) c.steps = f.steps;
    if (given(f, "out")) c.out_path = f.out;
    if (given(f, "convention")) c.convention = otto::parse_convention(f.convention);
    if (given(f, "outputs")) c.outputs = otto::parse_outputs(f.outputs);
    if (given(f, "parallel")) c.parallel = f.parallel;
    return c;
}

std::string opt(const std::optional<double>& v) { return v ? otto::format_double(*v) : "none"; }

int cmd_run(const Flags& f) {
    const auto config = build_config(f);
    const otto::Cycle cycle = otto::run_cycle(config.base);
    const auto& p = cycle.params;
    const auto& r = cycle.report;
    const auto ledger = otto::local_ledger(cycle, config.convention);
    const auto stages = otto::stage_works(cycle);
    using otto::format_double;

    std::ostream& o = std::cout;
    o << "model=" << otto::family_name(p.model.family) << '\n' << "n=" << p.model.n_sites << '\n';
    if (p.model.family == otto::Family::IsingKSEA) {
        o << "Jz=" << format_double(p.model.Jz) << '\n' << "Gz=" << format_double(p.model.Gz) << '\n';
    } else {
        o << "J=" << format_double(p.model.J) << '\n';
    }
    o << "h_hot=" << format_double(p.h_hot) << '\n'
      << "h_cold=" << format_double(p.h_cold) << '\n'
      << "T_hot=" << format_double(p.T_hot) << '\n'
      << "T_cold=" << format_double(p.T_cold) << '\n'
      << "Qh=" << format_double(r.Qh) << '\n'
      << "Qc=" << format_double(r.Qc) << '\n'
      << "W=" << format_double(r.W) << '\n'
      << "mode=" << (r.mode ? std::string(otto::mode_name(*r.mode)) : "undefined") << '\n'
      << "eta=" << opt(r.eta) << '\n'
      << "cop=" << opt(r.cop) << '\n'
      << "eta_otto=" << format_double(r.eta_otto) << '\n'
      << "cop_otto=" << format_double(r.cop_otto) << '\n'
      << "eta_carnot=" << opt(r.eta_carnot) << '\n'
      << "cop_carnot=" << opt(r.cop_carnot) << '\n'
      << "q_idle=" << format_double(r.idle.q_idle) << '\n'
      << "q_work_hot=" << format_double(r.idle.q_work_hot) << '\n'
      << "q_work_cold=" << format_double(r.idle.q_work_cold) << '\n'
      << "q_idle_centered=" << format_double(r.idle_centered.q_idle) << '\n'
      << "eta_gamma=" << opt(r.eta_gamma) << '\n'
      << "W1=" << format_double(r.W1) << '\n'
      << "W2=" << format_double(r.W2) << '\n'
      << "first_stroke_excess=" << format_double(stages.first_stroke_excess) << '\n'
      << "convention=" << otto::convention_name(ledger.convention) << '\n';
    for (const auto& s : ledger.sites) {
        const std::string k = "site" + std::to_string(s.site) + ".";
        o << k << "w=" << format_double(s.w) << '\n'
          << k << "q_hot=" << format_double(s.q_hot) << '\n'
          << k << "q_cold=" << format_double(s.q_cold) << '\n'
          << k << "T_eff_hot=" << format_double(s.T_eff_hot) << '\n'
          << k << "T_eff_cold=" << format_double(s.T_eff_cold) << '\n';
    }
    o << "w_local_total=" << format_double(ledger.w_total) << '\n' << "gap=" << format_double(ledger.gap) << '\n';

    if (!config.out_path.empty()) {
        otto::SweepRow row;
        row.params = p;
        row.swept = "";
        row.value = 0.0;
        row.report = r;
        row.q_idle = r.idle.q_idle;
        row.q_work_hot = r.idle.q_work_hot;
        row.w_local_total = ledger.w_total;
        row.gap = ledger.gap;
        std::ofstream out(config.out_path);
        if (!out) throw std::runtime_error("cannot write " + config.out_path);
        otto::write_csv(out, {row});
    }
    return 0;
}

int cmd_sweep(const Flags& f) {
    const auto config = build_config(f);
    const auto rows = otto::run_sweep(config, otto::thread_budget(config.parallel));
    if (config.out_path.empty()) {
        otto::write_csv(std::cout, rows);
    } else {
        std::ofstream out(config.out_path);
        if (!out) throw std::runtime_error("cannot write " + config.out_path);
        otto::write_csv(out, rows);
        std::cerr << "wrote " << rows.size() << " rows to " << config.out_path << '\n';
    }
    return 0;
}

int cmd_figure(const std::string& id, const std::string& dir, bool parallel) {
    const auto files = otto::reproduce_figure(id, otto::thread_budget(parallel));
    std::filesystem::create_directories(dir);
    for (const auto& file : files) {
        const auto path = std::filesystem::path(dir) / file.name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << file.contents;
        std::cout << path.string() << '\n';
    }
    return 0;
}

int cmd_selftest(std::uint64_t seed, int draws) {
    bool ok = true;
    for (const auto& r : otto::run_selftest(seed, draws)) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " draws=" << r.draws
                  << " worst=" << otto::format_double(r.worst) << " tol=" << otto::format_double(r.tolerance) << '\n';
        ok = ok && r.passed;
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum Otto cycles with spin-1/2 working substances"};
    app.require_subcommand(1);

    Flags run_flags;
    auto* run = app.add_subcommand("run", "evaluate a single cycle and print a key=value report");
    add_model_flags(run, run_flags, false);

    Flags sweep_flags;
    auto* sweep = app.add_subcommand("sweep", "sweep one parameter and emit CSV");
    add_model_flags(sweep, sweep_flags, true);

    std::string fig_id, fig_dir{"."};
    bool fig_parallel = false;
    auto* figure = app.add_subcommand("figure", "write the CSV series for a figure preset");
    figure->add_option("id", fig_id, "figure id")->required()->check(CLI::IsMember(otto::figure_ids()));
    figure->add_option("--out", fig_dir, "output directory");
    figure->add_flag("--parallel", fig_parallel, "evaluate grid points on several threads");

    std::uint64_t seed = 20240601;
    int draws = 200;
    auto* selftest = app.add_subcommand("selftest", "check invariants on random parameter draws");
    selftest->add_option("--seed", seed, "random seed");
    selftest->add_option("--draws", draws, "number of random cycles")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(run_flags);
        if (*sweep) return cmd_sweep(sweep_flags);
        if (*figure) return cmd_figure(fig_id, fig_dir, fig_parallel);
        if (*selftest) return cmd_selftest(seed, draws);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
