// Command-line surface: precision-bound tables, optimal Bayesian states and
// costs, QFI queries, the loss-comparison figure data, and the squeezed-light
// interferometer desk check. CSV or JSON on stdout or --out; deterministic
// for a fixed configuration and seed.
#include <CLI11.hpp>
#include <json.hpp>

#include "qmetro/bayes.hpp"
#include "qmetro/bounds.hpp"
#include "qmetro/channels.hpp"
#include "qmetro/classical.hpp"
#include "qmetro/errorprop.hpp"
#include "qmetro/fock.hpp"
#include "qmetro/probe_search.hpp"
#include "qmetro/qfi.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace qmetro;

constexpr int kExitOk = 0;
constexpr int kExitParam = 2;
constexpr int kExitNumeric = 3;

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct Table {
    std::string config;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

void emit(const Table& table, const std::string& format, const std::string& out_path) {
    std::ostringstream os;
    if (format == "csv") {
        os << "# config: " << table.config << "\n";
        for (size_t i = 0; i < table.columns.size(); ++i)
            os << table.columns[i] << (i + 1 < table.columns.size() ? "," : "\n");
        for (const auto& row : table.rows)
            for (size_t i = 0; i < row.size(); ++i)
                os << row[i] << (i + 1 < row.size() ? "," : "\n");
    } else {
        json j;
        j["config"] = table.config;
        j["columns"] = table.columns;
        j["rows"] = json::array();
        for (const auto& row : table.rows) j["rows"].push_back(row);
        os << j.dump(2) << "\n";
    }
    if (out_path.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output path " + out_path);
        f << os.str();
    }
}

struct NRange {
    int lo = 1, hi = 1;
};

NRange parse_n_range(const std::string& text) {
    NRange r;
    auto dots = text.find("..");
    if (dots == std::string::npos) {
        r.lo = r.hi = std::stoi(text);
    } else {
        r.lo = std::stoi(text.substr(0, dots));
        r.hi = std::stoi(text.substr(dots + 2));
    }
    if (r.lo < 1 || r.hi < r.lo) throw std::invalid_argument("--n: need 1 <= lo <= hi");
    return r;
}

FockStateN named_state_arg(const std::string& name, int n) {
    if (name == "noon") return make_named_state(NamedState::noon, n);
    if (name == "sine") return make_named_state(NamedState::sine, n);
    if (name == "balanced") return make_named_state(NamedState::balanced, n);
    if (name == "twin_fock") return make_named_state(NamedState::twin_fock, n);
    throw std::invalid_argument("unknown state " + name);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"precision limits for optical phase interferometry"};
    app.require_subcommand(1);
    app.fallthrough();   // --format/--out may follow the subcommand

    std::string format = "csv", out_path;
    app.add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out_path, "write output to a file instead of stdout");

    // ---- bounds ----
    auto* bounds_cmd = app.add_subcommand("bounds", "asymptotic precision bounds vs N");
    std::string bounds_model;
    double b_eta = 0.9, b_eta_a = -1, b_eta_b = -1, b_gamma = 0.0;
    std::string bounds_n = "1..100";
    bounds_cmd->add_option("--model", bounds_model, "loss | dephasing | phase-diffusion")
        ->required()
        ->check(CLI::IsMember({"loss", "dephasing", "phase-diffusion"}));
    bounds_cmd->add_option("--eta", b_eta);
    bounds_cmd->add_option("--eta-a", b_eta_a);
    bounds_cmd->add_option("--eta-b", b_eta_b);
    bounds_cmd->add_option("--gamma", b_gamma);
    bounds_cmd->add_option("--n", bounds_n, "photon number or range lo..hi");

    // ---- figure-loss-comparison ----
    auto* fig_cmd = app.add_subcommand("figure-loss-comparison",
                                       "precision-vs-N series for equal-loss interferometry");
    double f_eta = 0.9;
    int f_nmax = 20;
    unsigned f_seed = 0;
    std::string f_method = "qfi";
    fig_cmd->add_option("--eta", f_eta)->check(CLI::Range(1e-9, 1.0 - 1e-9));
    fig_cmd->add_option("--n-max", f_nmax)->check(CLI::Range(1, 40));
    fig_cmd->add_option("--method", f_method)->check(CLI::IsMember({"qfi", "bayes"}));
    fig_cmd->add_option("--seed", f_seed);

    // ---- ligo-check ----
    auto* ligo_cmd = app.add_subcommand("ligo-check",
                                        "squeezed-light interferometer gap to the loss bound");
    double l_eta = 0.62, l_sq = 0.1;
    ligo_cmd->add_option("--eta", l_eta)->check(CLI::Range(1e-9, 1.0));
    ligo_cmd->add_option("--squeezing", l_sq, "e^{-2r} power ratio")->check(CLI::Range(0.0, 1.0));

    // ---- optimal-state ----
    auto* opt_cmd = app.add_subcommand("optimal-state", "Bayes-optimal probe and minimal cost");
    std::string o_model = "ideal";
    int o_n = 4;
    double o_eta_a = 0.9, o_eta_b = 0.9, o_gamma = 0.1;
    opt_cmd->add_option("--model", o_model)
        ->check(CLI::IsMember({"ideal", "loss", "phase-diffusion"}));
    opt_cmd->add_option("--n", o_n)->required()->check(CLI::Range(1, 100000));
    opt_cmd->add_option("--eta-a", o_eta_a);
    opt_cmd->add_option("--eta-b", o_eta_b);
    opt_cmd->add_option("--gamma", o_gamma);

    // ---- cost-table ----
    auto* cost_cmd = app.add_subcommand("cost-table", "average covariant cost of named states");
    std::string c_model = "ideal";
    int c_n = 4;
    double c_eta_a = 0.9, c_eta_b = 0.9, c_gamma = 0.1;
    cost_cmd->add_option("--model", c_model)
        ->check(CLI::IsMember({"ideal", "loss", "phase-diffusion"}));
    cost_cmd->add_option("--n", c_n)->required()->check(CLI::Range(1, 2000));
    cost_cmd->add_option("--eta-a", c_eta_a);
    cost_cmd->add_option("--eta-b", c_eta_b);
    cost_cmd->add_option("--gamma", c_gamma);

    // ---- qfi ----
    auto* qfi_cmd = app.add_subcommand("qfi", "QFI of a named probe state");
    std::string q_state = "noon", q_model = "ideal";
    int q_n = 4;
    double q_eta_a = 0.9, q_eta_b = 0.9, q_gamma = 0.1;
    qfi_cmd->add_option("--state", q_state)
        ->check(CLI::IsMember({"noon", "sine", "balanced", "twin_fock"}));
    qfi_cmd->add_option("--model", q_model)
        ->check(CLI::IsMember({"ideal", "loss", "phase-diffusion"}));
    qfi_cmd->add_option("--n", q_n)->required()->check(CLI::Range(0, 200));
    qfi_cmd->add_option("--eta-a", q_eta_a);
    qfi_cmd->add_option("--eta-b", q_eta_b);
    qfi_cmd->add_option("--gamma", q_gamma);

    // ---- binomial-example ----
    auto* bin_cmd = app.add_subcommand("binomial-example",
                                       "transmission estimation worked example");
    int e_trials = 10;
    bin_cmd->add_option("--trials", e_trials)->check(CLI::Range(1, 2000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitParam;
    }

    try {
        if (*bounds_cmd) {
            NRange range = parse_n_range(bounds_n);
            double ea = b_eta_a >= 0 ? b_eta_a : b_eta;
            double eb = b_eta_b >= 0 ? b_eta_b : b_eta;
            Table t;
            std::ostringstream cfg;
            cfg << "bounds model=" << bounds_model << " n=" << bounds_n;
            if (bounds_model == "loss") cfg << " eta_a=" << fmt(ea) << " eta_b=" << fmt(eb);
            if (bounds_model == "dephasing") cfg << " eta=" << fmt(b_eta);
            if (bounds_model == "phase-diffusion") cfg << " gamma=" << fmt(b_gamma);
            t.config = cfg.str();
            t.columns = {"n", "method", "delta_phi"};
            for (int n = range.lo; n <= range.hi; ++n) {
                if (bounds_model == "loss") {
                    auto b = asymptotic_loss_bound(n, ea, eb);
                    t.rows.push_back({std::to_string(n), "asymptotic_loss", fmt(b.delta_phi)});
                } else if (bounds_model == "dephasing") {
                    auto b = asymptotic_dephasing_bound(n, b_eta);
                    t.rows.push_back({std::to_string(n), "asymptotic_dephasing", fmt(b.delta_phi)});
                } else {
                    auto b = phase_diffusion_bounds(n, b_gamma);
                    t.rows.push_back({std::to_string(n), "phase_diffusion_exact", fmt(b.exact)});
                    t.rows.push_back(
                        {std::to_string(n), "phase_diffusion_purification", fmt(b.purification)});
                }
            }
            emit(t, format, out_path);
        } else if (*fig_cmd) {
            Table t;
            std::ostringstream cfg;
            cfg << "figure-loss-comparison eta=" << fmt(f_eta) << " n_max=" << f_nmax
                << " method=" << f_method << " seed=" << f_seed;
            t.config = cfg.str();
            t.columns = {"n", "series", "delta_phi"};
            LossParams loss(f_eta, f_eta);
            double asym_coeff = std::sqrt((1.0 - f_eta) / f_eta);

            std::vector<std::vector<std::vector<std::string>>> per_n(f_nmax);
            parallel_for(f_nmax, [&](int idx) {
                int n = idx + 1;
                std::vector<std::vector<std::string>> rows;
                double optimal;
                if (f_method == "bayes") {
                    auto opt = optimal_state_and_cost(build_cost_matrix_loss(n, loss));
                    optimal = std::sqrt(opt.min_cost);
                } else {
                    optimal = optimal_loss_probe(n, loss, f_seed + n).delta_phi;
                }
                rows.push_back({std::to_string(n), "optimal", fmt(optimal)});
                double noon = 1.0 / (std::sqrt(std::pow(f_eta, n)) * n);
                rows.push_back({std::to_string(n), "noon", fmt(noon)});
                rows.push_back(
                    {std::to_string(n), "bound", fmt(asym_coeff / std::sqrt(double(n)))});
                auto split = optimal_coherent_squeezed_split(
                    double(n), DecoherencePenalty::loss(f_eta));
                rows.push_back({std::to_string(n), "coherent_squeezed", fmt(split.precision)});
                per_n[idx] = std::move(rows);
            });
            for (auto& rows : per_n)
                for (auto& r : rows) t.rows.push_back(std::move(r));
            emit(t, format, out_path);
        } else if (*ligo_cmd) {
            double f = DecoherencePenalty::loss(l_eta).f();
            double achieved = std::sqrt(l_sq + f);
            double bound = std::sqrt(f);
            double gap = 1.0 - bound / achieved;
            Table t;
            std::ostringstream cfg;
            cfg << "ligo-check eta=" << fmt(l_eta) << " squeezing=" << fmt(l_sq);
            t.config = cfg.str();
            t.columns = {"quantity", "value"};
            t.rows = {
                {"added_noise_f", fmt(f)},
                {"achieved_sqrtN_deltaphi", fmt(achieved)},
                {"bound_sqrtN_deltaphi", fmt(bound)},
                {"relative_gap", fmt(gap)},
                {"relative_gap_percent", fmt(100.0 * gap)},
            };
            emit(t, format, out_path);
        } else if (*opt_cmd) {
            CovariantCostMatrix a;
            if (o_model == "ideal") a = build_cost_matrix_ideal(o_n);
            else if (o_model == "loss") a = build_cost_matrix_loss(o_n, LossParams(o_eta_a, o_eta_b));
            else a = build_cost_matrix_phase_diffusion(o_n, o_gamma);
            auto opt = optimal_state_and_cost(a);
            Table t;
            std::ostringstream cfg;
            cfg << "optimal-state model=" << o_model << " n=" << o_n;
            if (o_model == "loss") cfg << " eta_a=" << fmt(o_eta_a) << " eta_b=" << fmt(o_eta_b);
            if (o_model == "phase-diffusion") cfg << " gamma=" << fmt(o_gamma);
            t.config = cfg.str();
            t.columns = {"quantity", "value"};
            t.rows.push_back({"min_cost", fmt(opt.min_cost)});
            t.rows.push_back({"lambda_max", fmt(opt.lambda_max)});
            for (int k = 0; k <= o_n; ++k)
                t.rows.push_back({"c_" + std::to_string(k), fmt(opt.state.coeffs(k).real())});
            emit(t, format, out_path);
        } else if (*cost_cmd) {
            CovariantCostMatrix a;
            if (c_model == "ideal") a = build_cost_matrix_ideal(c_n);
            else if (c_model == "loss") a = build_cost_matrix_loss(c_n, LossParams(c_eta_a, c_eta_b));
            else a = build_cost_matrix_phase_diffusion(c_n, c_gamma);
            Table t;
            std::ostringstream cfg;
            cfg << "cost-table model=" << c_model << " n=" << c_n;
            if (c_model == "loss") cfg << " eta_a=" << fmt(c_eta_a) << " eta_b=" << fmt(c_eta_b);
            if (c_model == "phase-diffusion") cfg << " gamma=" << fmt(c_gamma);
            t.config = cfg.str();
            t.columns = {"state", "avg_cost"};
            std::vector<std::string> names = {"sine", "balanced", "noon"};
            if (c_n % 2 == 0) names.push_back("twin_fock");
            for (const auto& name : names) {
                auto s = named_state_arg(name, c_n);
                t.rows.push_back({name, fmt(cost_for_state(a, s))});
            }
            auto opt = optimal_state_and_cost(a);
            t.rows.push_back({"optimal", fmt(opt.min_cost)});
            emit(t, format, out_path);
        } else if (*qfi_cmd) {
            auto state = named_state_arg(q_state, q_n);
            double value;
            if (q_model == "ideal") {
                auto rep = build_j_operators(q_n);
                Vec dpsi = cxd(0.0, -1.0) * (rep.jz * state.coeffs);
                value = qfi_pure(state.coeffs, dpsi);
            } else if (q_model == "loss") {
                value = block_phase_qfi(
                    loss_output_state(state, 0.0, LossParams(q_eta_a, q_eta_b)));
            } else {
                auto rep = build_j_operators(q_n);
                Mat rho = phase_diffusion_apply(state, PhaseDiffusionParams(q_gamma, 0.0));
                value = qfi_unitary(rho, rep.jz);
            }
            Table t;
            std::ostringstream cfg;
            cfg << "qfi state=" << q_state << " model=" << q_model << " n=" << q_n;
            if (q_model == "loss") cfg << " eta_a=" << fmt(q_eta_a) << " eta_b=" << fmt(q_eta_b);
            if (q_model == "phase-diffusion") cfg << " gamma=" << fmt(q_gamma);
            t.config = cfg.str();
            t.columns = {"quantity", "value"};
            t.rows.push_back({"qfi", fmt(value)});
            t.rows.push_back({"delta_phi", fmt(value > 0 ? 1.0 / std::sqrt(value)
                                                         : std::numeric_limits<double>::infinity())});
            t.rows.push_back({"entangled_witness",
                              q_n >= 1 && entanglement_witness(value, q_n) ? "true" : "false"});
            emit(t, format, out_path);
        } else if (*bin_cmd) {
            const int n = e_trials;
            auto model = binomial_p_model(n);
            Table t;
            std::ostringstream cfg;
            cfg << "binomial-example trials=" << n;
            t.config = cfg.str();
            t.columns = {"quantity", "value"};
            double f_half = fisher_information(model, 0.5);
            t.rows.push_back({"fisher_information_at_half", fmt(f_half)});
            t.rows.push_back({"crb_at_half", fmt(crb(model, 0.5))});
            auto prior = PriorSpec::flat(0.0, 1.0);
            for (int k : {0, n / 2, n}) {
                auto mmse = bayes_mmse(model, prior, {k});
                t.rows.push_back({"mmse_estimate_n" + std::to_string(k), fmt(mmse.estimate)});
            }
            auto phi_model = binomial_phi_model(n);
            auto circ = bayes_circular(phi_model, PriorSpec::flat(0.0, kPi));
            t.rows.push_back({"circular_avg_cost", fmt(circ.average_cost)});
            emit(t, format, out_path);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitParam;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitOk;
}
