// sweep.cpp — Parameter sweeps, CSV emission and figure presets

#include "otto/sweep.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace otto {

namespace {

std::string normalise(std::string_view name) {
    std::string s;
    for (char c : name) s.push_back(c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return s;
}

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

bool model_has(const SpinModel& model, const std::string& canonical) {
    if (canonical == "J") return model.family != Family::IsingKSEA;
    if (canonical == "Jz" || canonical == "Gz") return model.family == Family::IsingKSEA;
    return true;
}

}  // namespace

OutputRequest parse_outputs(std::string_view list) {
    OutputRequest r{false, false, false, false};
    std::string item;
    std::stringstream ss{std::string(list)};
    while (std::getline(ss, item, ',')) {
        if (item == "cycle") continue;
        if (item == "idle") r.idle = true;
        else if (item == "ledger") r.ledger = true;
        else if (item == "entropy") r.entropy = true;
        else if (item == "linear") r.linear = true;
        else throw std::invalid_argument("unknown output '" + item + "' (expected cycle, idle, ledger, entropy, linear)");
    }
    return r;
}

std::string canonical_parameter(std::string_view name) {
    const std::string n = normalise(name);
    if (n == "j") return "J";
    if (n == "jz") return "Jz";
    if (n == "gz") return "Gz";
    if (n == "h-hot") return "h_hot";
    if (n == "h-cold") return "h_cold";
    if (n == "t-hot") return "T_hot";
    if (n == "t-cold") return "T_cold";
    throw std::invalid_argument("unknown sweep parameter '" + std::string(name) + "'");
}

void set_parameter(CycleParams& p, std::string_view canonical, double value) {
    if (canonical == "J") p.model.J = value;
    else if (canonical == "Jz") p.model.Jz = value;
    else if (canonical == "Gz") p.model.Gz = value;
    else if (canonical == "h_hot") p.h_hot = value;
    else if (canonical == "h_cold") p.h_cold = value;
    else if (canonical == "T_hot") p.T_hot = value;
    else if (canonical == "T_cold") p.T_cold = value;
    else throw std::invalid_argument("unknown sweep parameter '" + std::string(canonical) + "'");
}

void validate(const SweepConfig& c) {
    c.base.model.validate();
    const std::string swept = canonical_parameter(c.swept);
    if (!model_has(c.base.model, swept)) {
        throw std::invalid_argument("model " + std::string(family_name(c.base.model.family)) +
                                    " has no parameter " + swept);
    }
    if (c.steps < 2) throw std::invalid_argument("steps must be at least 2");
    if (!std::isfinite(c.from) || !std::isfinite(c.to) || !(c.from < c.to)) {
        throw std::invalid_argument("sweep range needs finite from < to");
    }
    if (c.outputs.linear && c.base.model.family == Family::IsingKSEA && (c.base.model.Gz != 0.0 || swept == "Gz")) {
        throw std::invalid_argument("linear identities are unavailable for ising-ksea with Gz != 0");
    }
}

std::vector<double> sweep_grid(double from, double to, int steps) {
    if (steps < 2) throw std::invalid_argument("steps must be at least 2");
    std::vector<double> grid(steps);
    for (int k = 0; k < steps; ++k) grid[k] = from + (to - from) * k / (steps - 1);
    grid.back() = to;
    return grid;
}

SweepRow evaluate_point(const CycleParams& params, const std::string& swept, double value,
                        Convention convention, const OutputRequest& outputs) {
    SweepRow row;
    row.params = params;
    row.swept = swept;
    row.value = value;
    set_parameter(row.params, swept, value);
    const Cycle cycle = run_cycle(row.params);
    row.report = cycle.report;

    const auto& r = row.report;
    if (std::abs(r.Qh + r.Qc - r.W) > 1e-12) throw std::runtime_error("first-law check failed at " + swept + "=" + format_double(value));
    if (outputs.idle) {
        row.q_idle = r.idle.q_idle;
        row.q_work_hot = r.idle.q_work_hot;
    }
    if (outputs.ledger) {
        const auto ledger = local_ledger(cycle, convention);
        row.w_local_total = ledger.w_total;
        row.gap = ledger.gap;
    }
    if (outputs.entropy && row.params.T_hot > 0.0 && row.params.T_cold > 0.0) {
        const double w = work_entropy_form(cycle);
        if (std::abs(w - r.W) > 1e-10) throw std::runtime_error("entropy-form identity failed at " + swept + "=" + format_double(value));
    }
    if (outputs.linear) {
        const auto li = linear_identities(cycle);
        const double tol = 1e-12 * std::max(1.0, std::abs(r.Qh));
        const double worst = std::max({li.residual_qh, li.residual_qc, li.residual_w,
                                       li.residual_eta.value_or(0.0), li.residual_cop.value_or(0.0)});
        if (worst > tol || !li.signs_consistent) throw std::runtime_error("linear identities failed at " + swept + "=" + format_double(value));
    }
    return row;
}

int thread_budget(bool parallel) {
    if (!parallel) return 1;
    int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("OTTO_FORGE_THREADS")) {
        int cap = 0;
        const auto res = std::from_chars(env, env + std::char_traits<char>::length(env), cap);
        if (res.ec == std::errc() && cap >= 1) n = std::min(n, cap);
    }
    return n;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config, int threads) {
    validate(config);
    const std::string swept = canonical_parameter(config.swept);
    const auto grid = sweep_grid(config.from, config.to, config.steps);
    std::vector<SweepRow> rows(grid.size());
    std::vector<std::exception_ptr> errors(grid.size());

    auto work = [&](std::size_t k) {
        try {
            rows[k] = evaluate_point(config.base, swept, grid[k], config.convention, config.outputs);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    };

    const int n_threads = std::clamp(threads, 1, static_cast<int>(grid.size()));
    if (n_threads == 1) {
        for (std::size_t k = 0; k < grid.size(); ++k) work(k);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t k = next++; k < grid.size(); k = next++) work(k);
            });
        }
        for (auto& th : pool) th.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rows;
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string csv_header() {
    return "model,n,J,Jz,Gz,h_hot,h_cold,T_hot,T_cold,swept,value,Qh,Qc,W,eta,cop,mode,"
           "q_idle,q_work_hot,w_local_total,gap,eta_otto,cop_otto,cop_carnot";
}

std::string csv_row(const SweepRow& row) {
    const auto& p = row.params;
    const auto& r = row.report;
    const bool ksea = p.model.family == Family::IsingKSEA;
    std::string s;
    auto field = [&s](const std::string& v) {
        if (!s.empty()) s.push_back(',');
        s += v;
    };
    s = std::string(family_name(p.model.family));
    field(std::to_string(p.model.n_sites));
    field(ksea ? "" : format_double(p.model.J));
    field(ksea ? format_double(p.model.Jz) : "");
    field(ksea ? format_double(p.model.Gz) : "");
    field(format_double(p.h_hot));
    field(format_double(p.h_cold));
    field(format_double(p.T_hot));
    field(format_double(p.T_cold));
    field(row.swept);
    field(format_double(row.value));
    field(format_double(r.Qh));
    field(format_double(r.Qc));
    field(format_double(r.W));
    field(opt(r.eta));
    field(opt(r.cop));
    field(r.mode ? std::string(mode_name(*r.mode)) : "");
    field(opt(row.q_idle));
    field(opt(row.q_work_hot));
    field(opt(row.w_local_total));
    field(opt(row.gap));
    field(format_double(r.eta_otto));
    field(format_double(r.cop_otto));
    field(opt(r.cop_carnot));
    return s;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << csv_header() << '\n';
    for (const auto& row : rows) out << csv_row(row) << '\n';
}

void apply_json_config(SweepConfig& c, const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");

    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "model") c.base.model.family = parse_family(value.get<std::string>());
            else if (key == "n") c.base.model.n_sites = value.get<int>();
            else if (key == "j") c.base.model.J = value.get<double>();
            else if (key == "jz") c.base.model.Jz = value.get<double>();
            else if (key == "gz") c.base.model.Gz = value.get<double>();
            else if (key == "h-hot") c.base.h_hot = value.get<double>();
            else if (key == "h-cold") c.base.h_cold = value.get<double>();
            else if (key == "t-hot") c.base.T_hot = value.get<double>();
            else if (key == "t-cold") c.base.T_cold = value.get<double>();
            else if (key == "sweep") c.swept = value.get<std::string>();
            else if (key == "from") c.from = value.get<double>();
            else if (key == "to") c.to = value.get<double>();
            else if (key == "steps") c.steps = value.get<int>();
            else if (key == "out") c.out_path = value.get<std::string>();
            else if (key == "convention") c.convention = parse_convention(value.get<std::string>());
            else if (key == "allow-negative-temp") c.base.allow_negative_temperature = value.get<bool>();
            else if (key == "parallel") c.parallel = value.get<bool>();
            else if (key == "outputs") {
                if (value.is_string()) {
                    c.outputs = parse_outputs(value.get<std::string>());
                } else {
                    std::string joined;
                    for (const auto& item : value) joined += (joined.empty() ? "" : ",") + item.get<std::string>();
                    c.outputs = parse_outputs(joined);
                }
            } else {
                throw std::invalid_argument("unknown key");
            }
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument("config: bad value for '" + key + "': " + e.what());
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("config: '" + key + "': " + e.what());
        }
    }
    if (c.base.model.family == Family::IsingKSEA) c.base.model.n_sites = 2;
}

CycleParams engine_preset(const SpinModel& model) {
    CycleParams p;
    p.model = model;
    p.h_hot = 4.0;
    p.h_cold = 3.0;
    p.T_hot = 4.0;
    p.T_cold = 1.0;
    return p;
}

CycleParams fridge_preset(const SpinModel& model) {
    CycleParams p;
    p.model = model;
    p.h_hot = 5.0;
    p.h_cold = 2.0;
    p.T_hot = 2.0;
    p.T_cold = 1.0;
    return p;
}

std::vector<std::string> figure_ids() {
    return {"1a", "1b", "2", "3", "4a", "4b", "5", "6a", "6b", "7a", "7b", "8", "9"};
}

namespace {

struct Series {
    CycleParams base;
    std::string swept;
    double from;
    double to;
    int steps;
};

std::string render(const std::vector<Series>& series, int threads) {
    std::ostringstream out;
    out << csv_header() << '\n';
    for (const auto& s : series) {
        SweepConfig c;
        c.base = s.base;
        c.swept = s.swept;
        c.from = s.from;
        c.to = s.to;
        c.steps = s.steps;
        for (const auto& row : run_sweep(c, threads)) out << csv_row(row) << '\n';
    }
    return out.str();
}

std::vector<Series> ksea_gamma_series(bool fridge) {
    std::vector<Series> out;
    for (double jz : {0.0, 0.5, 2.6}) {
        const auto model = SpinModel::ising_ksea(jz, 0.0);
        out.push_back({fridge ? fridge_preset(model) : engine_preset(model), "Gz", 0.0, 5.0, 500});
    }
    return out;
}

std::vector<Series> chain_series(Family family, std::vector<int> sizes, bool fridge, double from, double to,
                                 int steps) {
    std::vector<Series> out;
    for (int n : sizes) {
        const auto model = family == Family::HeisenbergXXX ? SpinModel::heisenberg(n, 0.0) : SpinModel::ising_chain(n, 0.0);
        out.push_back({fridge ? fridge_preset(model) : engine_preset(model), "J", from, to, steps});
    }
    return out;
}

std::string jz_star_curve() {
    std::ostringstream out;
    out << "Gz,Jz_star_closed,Jz_star_bisection\n";
    for (double gz : sweep_grid(0.0, 5.0, 21)) {
        const double closed = jz_star_closed_form(gz, 4.0, 3.0, 4.0, 1.0);
        const auto root = jz_star(gz, 4.0, 3.0, 4.0, 1.0);
        out << format_double(gz) << ',' << format_double(closed) << ',' << (root ? format_double(*root) : "") << '\n';
    }
    return out.str();
}

}  // namespace

std::vector<FigureFile> reproduce_figure(std::string_view id, int threads) {
    const std::string name = "fig" + std::string(id);
    if (id == "1a" || id == "1b") return {{name + ".csv", render(ksea_gamma_series(false), threads)}};
    if (id == "2") {
        std::vector<Series> grid;
        for (double gz : sweep_grid(0.0, 5.0, 101))
            grid.push_back({engine_preset(SpinModel::ising_ksea(0.0, gz)), "Jz", 0.0, 5.0, 101});
        return {{name + ".csv", render(grid, threads)}, {name + "_star.csv", jz_star_curve()}};
    }
    if (id == "3") {
        return {{name + ".csv", render(ksea_gamma_series(false), threads)},
                {name + "_cop.csv", render(ksea_gamma_series(true), threads)}};
    }
    if (id == "4a" || id == "4b")
        return {{name + ".csv", render(chain_series(Family::HeisenbergXXX, {2, 3}, false, 0.0, 10.0, 1000), threads)}};
    if (id == "5")
        return {{name + ".csv", render(chain_series(Family::HeisenbergXXX, {2, 3}, true, -3.0, 3.0, 601), threads)}};
    if (id == "6a" || id == "6b")
        return {{name + ".csv", render(chain_series(Family::IsingChain, {2, 3, 4, 5, 6}, false, 0.0, 2.0, 401), threads)}};
    if (id == "7a" || id == "7b" || id == "8")
        return {{name + ".csv", render(chain_series(Family::IsingChain, {2, 3, 4, 5, 6}, false, 0.0, 10.0, 1001), threads)}};
    if (id == "9")
        return {{name + ".csv", render(chain_series(Family::IsingChain, {2, 3, 4, 5, 6}, true, -3.0, 1.0, 401), threads)}};
    throw std::invalid_argument("unknown figure id '" + std::string(id) + "'");
}

}  // namespace otto
