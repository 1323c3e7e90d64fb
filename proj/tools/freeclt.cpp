#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "freeclt/density.hpp"
#include "freeclt/entropy.hpp"
#include "freeclt/expansion.hpp"
#include "freeclt/io.hpp"
#include "freeclt/parse.hpp"
#include "freeclt/subordination.hpp"
#include "freeclt/transforms.hpp"

namespace {

using namespace freeclt;

struct RunConfig {
    std::string measure;
    std::optional<int> n;
    std::vector<int> n_list = {16, 32, 64, 128, 256};
    GridSpec grid;
    EpsPolicy eps;
    SolveOptions solve;
    std::string format = "csv";
    std::string out;
    std::string z_text;
};

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    double lo = 0.0, hi = 0.0;
    long points = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%ld", &lo, &hi, &points) != 3 || points < 2)
        throw ParseError("expected grid 'lo:hi:points'", 0);
    g.lo = lo;
    g.hi = hi;
    g.points = static_cast<std::size_t>(points);
    return g;
}

EpsPolicy parse_eps(const std::string& text) {
    EpsPolicy policy;
    std::string kind = text;
    if (const auto colon = text.find(':'); colon != std::string::npos) {
        kind = text.substr(0, colon);
        try {
            policy.eps = std::stod(text.substr(colon + 1));
        } catch (const std::exception&) {
            throw ParseError("expected a number after ':' in --eps", colon + 1);
        }
    }
    if (kind == "richardson")
        policy.kind = EpsPolicy::Kind::richardson;
    else if (kind == "fixed")
        policy.kind = EpsPolicy::Kind::fixed;
    else
        throw ParseError("expected eps policy 'richardson[:eps]' or 'fixed:eps'", 0);
    return policy;
}

Complex parse_z(const std::string& text) {
    double re = 0.0, im = 0.0;
    if (std::sscanf(text.c_str(), "%lf,%lf", &re, &im) != 2)
        throw ParseError("expected --z 're,im'", 0);
    return {re, im};
}

std::vector<int> resolved_n_list(const RunConfig& cfg) {
    if (cfg.n) return {*cfg.n};
    return cfg.n_list;
}

std::string render(const RunConfig& cfg, const Table& table) {
    return cfg.format == "json" ? table.to_json() : table.to_csv();
}

/// Shared per-n pipeline of the l1 and sweep commands.
struct ConvolutionRow {
    double l1 = 0.0;
    double l1_leading = 0.0;
    DensityProfile profile;
};

ConvolutionRow convolution_row(const Measure& m, int n, const RunConfig& cfg) {
    ConvolutionRow row;
    row.profile = invert_density(m, n, cfg.grid, cfg.eps, cfg.solve);
    row.l1 = l1_distance(row.profile, sample_density(Measure::semicircle(), cfg.grid));
    row.l1_leading = l1_leading_term(moment(m, 3), moment(m, 4), n);
    return row;
}

std::string cmd_density(const Measure& m, const RunConfig& cfg) {
    const int n = cfg.n.value();
    const DensityProfile p = invert_density(m, n, cfg.grid, cfg.eps, cfg.solve);
    if (cfg.format == "json") {
        Table t;
        t.columns = {"x", "p"};
        t.rows.reserve(p.size());
        for (std::size_t i = 0; i < p.size(); ++i)
            t.rows.push_back({format_sig17(p.x_at(i)), format_sig17(p.values[i])});
        return t.to_json();
    }
    return profile_to_csv(p);
}

std::string cmd_expansion(const Measure& m, const RunConfig& cfg) {
    const int n = cfg.n.value();
    const DensityProfile p = invert_density(m, n, cfg.grid, cfg.eps, cfg.solve);
    const CltCoefficients c = coefficients(m, n);
    Table t;
    t.columns = {"x", "pn", "vn", "th7"};
    t.rows.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double x = p.x_at(i);
        t.rows.push_back({format_sig17(x), format_sig17(p.values[i]),
                          format_sig17(v_n_density(c, x - c.a_n)),
                          format_sig17(th7_density(c, x - c.a_n))});
    }
    return render(cfg, t);
}

std::string cmd_l1(const Measure& m, const RunConfig& cfg) {
    Table t;
    t.columns = {"n", "l1", "l1_leading"};
    for (int n : resolved_n_list(cfg)) {
        const ConvolutionRow row = convolution_row(m, n, cfg);
        t.rows.push_back({std::to_string(n), format_sig17(row.l1), format_sig17(row.l1_leading)});
    }
    return render(cfg, t);
}

std::string cmd_entropy(const Measure& m, const RunConfig& cfg) {
    std::vector<EntropyReport> reports;
    for (int n : resolved_n_list(cfg)) reports.push_back(entropy_report(m, n, cfg.grid, cfg.eps));
    return render(cfg, reports_table(reports));
}

std::string cmd_fisher(const Measure& m, const RunConfig& cfg) {
    Table t;
    t.columns = {"n", "fisher", "fisherExcess"};
    for (int n : resolved_n_list(cfg)) {
        const DensityProfile p = invert_density(m, n, cfg.grid, cfg.eps, cfg.solve);
        const double fisher = fisher_information(p);
        t.rows.push_back(
            {std::to_string(n), format_sig17(fisher), format_sig17(fisher - 1.0)});
    }
    return render(cfg, t);
}

std::string cmd_subordination(const Measure& m, const RunConfig& cfg) {
    const Complex z = parse_z(cfg.z_text);
    const SubordinationSolution sol = solve_Z(m, cfg.n.value(), z, cfg.solve);
    Table t;
    t.columns = {"z_re", "z_im", "n", "Z_re", "Z_im", "Sn_re", "Sn_im", "iterations", "residual"};
    t.rows.push_back({format_sig17(sol.z.real()), format_sig17(sol.z.imag()),
                      std::to_string(sol.n), format_sig17(sol.Z.real()),
                      format_sig17(sol.Z.imag()), format_sig17(sol.Sn.real()),
                      format_sig17(sol.Sn.imag()), std::to_string(sol.iterations),
                      format_sig17(sol.residual)});
    return render(cfg, t);
}

std::string cmd_sweep(const Measure& m, const RunConfig& cfg) {
    const std::vector<int> ns = resolved_n_list(cfg);
    std::vector<ConvolutionRow> rows;
    std::vector<EntropyReport> reports;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int n : ns) {
        ConvolutionRow row = convolution_row(m, n, cfg);
        EntropyReport rep;
        rep.n = n;
        // A cell that cannot be computed at this resolution becomes "nan"
        // instead of aborting the sweep; the remaining columns stay valid.
        try {
            rep.log_energy = log_energy(row.profile);
            rep.chi = free_entropy(row.profile);
            rep.chi_deficit = chi_semicircle() - rep.chi;
        } catch (const Error& e) {
            std::cerr << e.what() << '\n';
            rep.log_energy = rep.chi = rep.chi_deficit = nan;
        }
        try {
            rep.fisher = fisher_information(row.profile);
            rep.fisher_excess = rep.fisher - 1.0;
        } catch (const Error& e) {
            std::cerr << e.what() << '\n';
            rep.fisher = rep.fisher_excess = nan;
        }
        reports.push_back(rep);
        rows.push_back(std::move(row));
    }

    RateFit fit;
    bool fit_valid = ns.size() >= 2;
    if (fit_valid) {
        std::vector<double> n_values, l1_values;
        for (std::size_t i = 0; i < ns.size(); ++i) {
            n_values.push_back(ns[i]);
            l1_values.push_back(rows[i].l1);
        }
        try {
            fit = fit_log_rate(n_values, l1_values);
        } catch (const Error&) {
            fit_valid = false;
        }
    }

    Table t;
    t.columns = {"n",      "l1",           "l1_leading",      "chi",
                 "chiDeficit", "fisher",   "fisherExcess",    "fitted_exponent",
                 "fitted_constant"};
    for (std::size_t i = 0; i < ns.size(); ++i) {
        t.rows.push_back({std::to_string(ns[i]), format_sig17(rows[i].l1),
                          format_sig17(rows[i].l1_leading), format_sig17(reports[i].chi),
                          format_sig17(reports[i].chi_deficit), format_sig17(reports[i].fisher),
                          format_sig17(reports[i].fisher_excess),
                          fit_valid ? format_sig17(fit.exponent) : "nan",
                          fit_valid ? format_sig17(fit.constant) : "nan"});
    }
    return render(cfg, t);
}

std::string cmd_moments(const Measure& m, const RunConfig& cfg) {
    Table t;
    t.columns = {"k", "moment"};
    for (int k = 0; k <= 8; ++k)
        t.rows.push_back({std::to_string(k), format_sig17(moment(m, k))});
    return render(cfg, t);
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) throw Error("OutputUnwritable", "cannot open " + cfg.out + " for writing");
    file << text;
}

void add_common_options(CLI::App* sub, RunConfig& cfg, bool wants_single_n) {
    sub->add_option("--measure", cfg.measure, "measure expression, e.g. \"atoms((-1,0.5),(1,0.5))\"")
        ->required();
    auto* n_opt = sub->add_option_function<int>(
        "--n", [&cfg](const int& value) { cfg.n = value; },
        "convolution order (single value)");
    if (wants_single_n) {
        n_opt->required();
    } else {
        auto* list_opt = sub->add_option_function<std::string>(
            "--n-list",
            [&cfg](const std::string& text) {
                cfg.n_list.clear();
                std::size_t pos = 0;
                while (pos < text.size()) {
                    std::size_t next = text.find(',', pos);
                    if (next == std::string::npos) next = text.size();
                    try {
                        cfg.n_list.push_back(std::stoi(text.substr(pos, next - pos)));
                    } catch (const std::exception&) {
                        throw CLI::ValidationError("--n-list", "expected comma-separated integers");
                    }
                    pos = next + 1;
                }
                if (cfg.n_list.empty())
                    throw CLI::ValidationError("--n-list", "expected at least one value");
            },
            "comma-separated convolution orders (default 16,32,64,128,256)");
        n_opt->excludes(list_opt);
    }
    sub->add_option_function<std::string>(
        "--grid", [&cfg](const std::string& text) { cfg.grid = parse_grid(text); },
        "evaluation grid lo:hi:points (default -4:4:2001)");
    sub->add_option_function<std::string>(
        "--eps", [&cfg](const std::string& text) { cfg.eps = parse_eps(text); },
        "inversion height policy: richardson[:eps] or fixed:eps (default richardson:1e-5)");
    sub->add_option("--tol", cfg.solve.tol, "subordination tolerance relative to max(1,|z|)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out, "output path (default stdout)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"free additive convolution laboratory: densities, rates, entropy"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string command;
    struct Spec {
        const char* name;
        const char* help;
        bool single_n;
        bool wants_z;
    };
    const Spec specs[] = {
        {"density", "density of the standardized n-fold free convolution", true, false},
        {"expansion", "density vs second-order expansion columns x,pn,vn,th7", true, false},
        {"l1", "L1 distance to the semicircle law with its leading term", false, false},
        {"entropy", "free entropy and Fisher reports per n", false, false},
        {"fisher", "free Fisher information per n", false, false},
        {"subordination", "solve the subordination equation at one z", true, true},
        {"sweep", "full rate table with fitted L1 decay", false, false},
        {"moments", "raw moments k = 0..8 of the base measure", false, false},
    };
    for (const Spec& spec : specs) {
        CLI::App* sub = app.add_subcommand(spec.name, spec.help);
        add_common_options(sub, cfg, spec.single_n);
        if (spec.wants_z)
            sub->add_option("--z", cfg.z_text, "evaluation point re,im with im > 0")->required();
        sub->callback([&command, name = spec.name] { command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ParseError& e) {
        // Option values (--grid, --eps) are parsed inside CLI11 callbacks.
        std::cerr << e.what() << '\n';
        return 2;
    }

    try {
        const Measure m = parse_measure(cfg.measure);
        std::string output;
        if (command == "density") output = cmd_density(m, cfg);
        else if (command == "expansion") output = cmd_expansion(m, cfg);
        else if (command == "l1") output = cmd_l1(m, cfg);
        else if (command == "entropy") output = cmd_entropy(m, cfg);
        else if (command == "fisher") output = cmd_fisher(m, cfg);
        else if (command == "subordination") output = cmd_subordination(m, cfg);
        else if (command == "sweep") output = cmd_sweep(m, cfg);
        else output = cmd_moments(m, cfg);
        emit(cfg, output);
    } catch (const ParseError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "InternalError: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
