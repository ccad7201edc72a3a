// sharpe-bound: command-line front end for the sharpe_bound library.
//
// Exit codes: 0 success, 1 reference-table mismatch or internal failure,
// 2 input error (bad flags, malformed CSV, unwritable output),
// 3 domain error (return below -1, B out of range, divergence, infeasible).

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <sharpe_bound.hpp>
#include <sharpe_bound/reference_data.hpp>

namespace sb = sharpe_bound;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;
constexpr int kExitDomain = 3;

int g_digits = 6;

std::string fixed(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(g_digits) << v;
    return os.str();
}

std::string fixed(const std::optional<double>& v) { return v ? fixed(*v) : "undefined"; }

void row(std::ostream& out, const std::string& key, const std::string& value) {
    out << std::left << std::setw(18) << key << value << '\n';
}

// Opens an output file, or returns nullptr for stdout.
std::unique_ptr<std::ofstream> open_output(const std::string& path) {
    if (path.empty() || path == "-") {
        return nullptr;
    }
    auto f = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*f) {
        throw sb::input_error("cannot open '" + path + "' for writing");
    }
    return f;
}

void finish_output(std::ofstream* f, const std::string& path) {
    if (f) {
        f->flush();
        if (!*f) {
            throw sb::input_error("failed writing '" + path + "'");
        }
    }
}

void print_report(std::ostream& out, const sb::RatioReport& r, sb::Convention convention) {
    row(out, "convention", sb::to_string(convention));
    row(out, "count", std::to_string(r.count));
    row(out, "mean", fixed(r.mean));
    row(out, "volatility", fixed(r.volatility));
    row(out, "downside_dev", fixed(r.downside_deviation));
    row(out, "sharpe", fixed(r.sharpe));
    row(out, "sortino", fixed(r.sortino));
    row(out, "wealth_multiple", fixed(r.wealth_multiple));
    row(out, "losing", r.wealth_multiple < 1.0 ? "yes" : "no");
    // A Sharpe ratio above 1 is conventionally called good.
    if (r.sharpe && *r.sharpe > 1.0 && r.wealth_multiple < 1.0) {
        out << "WARNING: Sharpe ratio above 1 while losing money (wealth multiple < 1)\n";
    }
}

std::string family_name(sb::RatioKind ratio, sb::BoundKind bound) {
    return std::string(ratio == sb::RatioKind::sharpe ? "F" : "G") +
           (bound == sb::BoundKind::one_sided ? "1" : "2");
}

void write_returns_file(const std::string& path, std::span<const double> xs) {
    auto f = open_output(path);
    sb::csv::write_returns(f ? *f : std::cout, xs);
    finish_output(f.get(), path);
}

const std::map<std::string, sb::RatioKind> kRatioNames{{"sharpe", sb::RatioKind::sharpe},
                                                        {"sortino", sb::RatioKind::sortino}};
const std::map<std::string, sb::BoundKind> kBoundNames{{"one-sided", sb::BoundKind::one_sided},
                                                        {"two-sided", sb::BoundKind::two_sided}};

struct KindFlags {
    sb::RatioKind ratio = sb::RatioKind::sharpe;
    sb::BoundKind bound = sb::BoundKind::one_sided;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--ratio", ratio, "sharpe or sortino")
            ->transform(CLI::CheckedTransformer(kRatioNames, CLI::ignore_case));
        cmd->add_option("--bound", bound, "one-sided ([-B, inf)) or two-sided ([-B, B])")
            ->transform(CLI::CheckedTransformer(kBoundNames, CLI::ignore_case));
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Best achievable Sharpe and Sortino ratios of money-losing return sequences"};
    app.require_subcommand(1);

    sb::Convention convention = sb::Convention::population;
    app.add_option("--convention", convention, "second-moment normalisation: n (1/N) or n-1 (1/(N-1))")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, sb::Convention>{{"n", sb::Convention::population},
                                                   {"n-1", sb::Convention::sample}}))
        ->capture_default_str();

    std::function<int()> run;

    // ratio
    std::string ratio_path;
    auto* ratio_cmd = app.add_subcommand("ratio", "Statistics of a return CSV (single column 'return')");
    ratio_cmd->add_option("file", ratio_path, "input CSV")->required();
    ratio_cmd->add_option("--digits", g_digits, "decimals in the report")->check(CLI::Range(0, 17));
    ratio_cmd->callback([&] {
        run = [&] {
            std::ifstream in(ratio_path, std::ios::binary);
            if (!in) {
                throw sb::input_error("cannot read '" + ratio_path + "'");
            }
            print_report(std::cout, sb::analyze(sb::csv::read_returns(in), convention), convention);
            return 0;
        };
    });

    // frontier
    double frontier_b = 0.0;
    KindFlags frontier_kinds;
    auto* frontier_cmd = app.add_subcommand("frontier", "Two-level frontier value F1/F2/G1/G2 at one bound B");
    frontier_cmd->add_option("B", frontier_b, "lower bound magnitude B")->required();
    frontier_kinds.add_to(frontier_cmd);
    frontier_cmd->callback([&] {
        run = [&] {
            const auto p = sb::frontier_value(frontier_b, frontier_kinds.ratio, frontier_kinds.bound);
            row(std::cout, "family", family_name(p.ratio, p.bound));
            row(std::cout, "convention", sb::to_string(convention) + " (continuum limit)");
            row(std::cout, "B", fixed(p.lower_bound));
            row(std::cout, "value", fixed(p.value));
            row(std::cout, "c_star", fixed(p.c_star));
            row(std::cout, "alpha_star", fixed(p.alpha_star));
            return 0;
        };
    });

    // table
    std::string table_which;
    std::string table_csv;
    auto* table_cmd = app.add_subcommand("table", "Recompute a reference table and compare");
    table_cmd->add_option("which", table_which, "F1, F2 or G")
        ->required()
        ->check(CLI::IsMember({"F1", "F2", "G"}, CLI::ignore_case));
    table_cmd->add_option("--csv", table_csv, "also write the comparison as CSV");
    table_cmd->callback([&] {
        run = [&] {
            std::string_view text = table_which == "F1" || table_which == "f1" ? sb::reference_data::table1_f1
                                    : table_which == "F2" || table_which == "f2"
                                        ? sb::reference_data::table2_f2
                                        : sb::reference_data::table3_g;
            const auto rows = sb::parse_reference_table(text);
            auto csv_out = open_output(table_csv);
            std::ostringstream csv_text;
            csv_text << "family,B,value,c_star,alpha_star,ref_value,ref_c,ref_alpha,value_delta,c_delta,"
                        "alpha_delta,pass\n";
            std::cout << "convention " << sb::to_string(convention) << " (continuum limit)\n";
            std::cout << std::left << std::setw(7) << "family" << std::setw(10) << "B" << std::setw(11)
                      << "value" << std::setw(11) << "ref" << std::setw(11) << "delta" << std::setw(13)
                      << "c_star" << std::setw(8) << "ref_c" << std::setw(11) << "alpha" << std::setw(8)
                      << "ref_a" << std::setw(11) << "delta" << "status\n";
            bool all_pass = true;
            for (const auto& r : rows) {
                const auto cmp = sb::compare_to_reference(r);
                all_pass = all_pass && cmp.pass;
                std::ostringstream b;
                b << r.lower_bound;
                std::ostringstream refc;
                refc << std::fixed << std::setprecision(2);
                if (r.c) {
                    refc << *r.c;
                } else {
                    refc << "-";
                }
                std::cout << std::left << std::setw(7) << r.family << std::setw(10) << b.str()
                          << std::setw(11) << fixed(cmp.computed.value) << std::setw(11) << fixed(r.value)
                          << std::setw(11) << fixed(cmp.value_delta) << std::setw(13)
                          << fixed(cmp.computed.c_star) << std::setw(8) << refc.str() << std::setw(11)
                          << fixed(cmp.computed.alpha_star) << std::setw(8) << fixed(r.alpha).substr(0, 5)
                          << std::setw(11) << fixed(cmp.alpha_delta) << (cmp.pass ? "ok" : "MISMATCH")
                          << '\n';
                csv_text << r.family << ',' << sb::csv::format_double(r.lower_bound) << ','
                         << sb::csv::format_double(cmp.computed.value) << ','
                         << sb::csv::format_double(cmp.computed.c_star) << ','
                         << sb::csv::format_double(cmp.computed.alpha_star) << ','
                         << sb::csv::format_double(r.value) << ','
                         << (r.c ? sb::csv::format_double(*r.c) : "") << ','
                         << sb::csv::format_double(r.alpha) << ','
                         << sb::csv::format_double(cmp.value_delta) << ','
                         << (cmp.c_delta ? sb::csv::format_double(*cmp.c_delta) : "") << ','
                         << sb::csv::format_double(cmp.alpha_delta) << ',' << (cmp.pass ? 1 : 0) << '\n';
            }
            if (csv_out) {
                *csv_out << csv_text.str();
                finish_output(csv_out.get(), table_csv);
            }
            if (!all_pass) {
                std::cerr << "error: computed values differ from the reference beyond tolerance\n";
                return kExitMismatch;
            }
            return 0;
        };
    });

    // curve
    KindFlags curve_kinds;
    std::string curve_panel = "left";
    std::optional<double> curve_from;
    std::optional<double> curve_to;
    std::optional<std::size_t> curve_points;
    std::string curve_format = "csv";
    std::string curve_out;
    auto* curve_cmd = app.add_subcommand("curve", "Frontier curve over a linear grid of B (CSV or SVG)");
    curve_kinds.add_to(curve_cmd);
    curve_cmd->add_option("--panel", curve_panel, "default range: left = [0.001, 0.9], right = [0.9, 0.999]")
        ->check(CLI::IsMember({"left", "right"}));
    curve_cmd->add_option("--from", curve_from, "first B");
    curve_cmd->add_option("--to", curve_to, "last B");
    curve_cmd->add_option("--points", curve_points, "number of grid points")->check(CLI::PositiveNumber);
    curve_cmd->add_option("--format", curve_format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));
    curve_cmd->add_option("--out", curve_out, "output path (default stdout)");
    curve_cmd->callback([&] {
        run = [&] {
            const bool right = curve_panel == "right";
            const double from = curve_from.value_or(right ? 0.9 : 0.001);
            const double to = curve_to.value_or(right ? 0.999 : 0.9);
            const std::size_t points = curve_points.value_or(200);
            const auto curve = sb::frontier_curve(from, to, points, curve_kinds.ratio, curve_kinds.bound,
                                                  std::max(1u, std::thread::hardware_concurrency()));
            auto f = open_output(curve_out);
            std::ostream& out = f ? *f : std::cout;
            if (curve_format == "csv") {
                sb::csv::write_curve(out, curve);
            } else {
                std::vector<double> xs;
                std::vector<double> ys;
                for (const auto& p : curve.points) {
                    xs.push_back(p.lower_bound);
                    ys.push_back(p.value);
                }
                const std::string name = family_name(curve_kinds.ratio, curve_kinds.bound);
                sb::svg::write_line_chart(out, xs, ys,
                                          {name + "(B), " + sb::to_string(curve_kinds.ratio) + ", " +
                                               sb::to_string(curve_kinds.bound),
                                           "B", name + "(B)"});
            }
            finish_output(f.get(), curve_out);
            return 0;
        };
    });

    // oracle
    double oracle_b = 0.0;
    std::size_t oracle_n = 0;
    KindFlags oracle_kinds;
    std::string oracle_method = "brute";
    std::size_t oracle_levels = sb::kDefaultLevelCount;
    std::optional<double> oracle_top;
    std::size_t oracle_samples = 100000;
    std::uint64_t oracle_seed = 1;
    auto* oracle_cmd = app.add_subcommand("oracle", "Finite-N search compared with the continuum frontier");
    oracle_cmd->add_option("B", oracle_b, "lower bound magnitude B")->required();
    oracle_cmd->add_option("N", oracle_n, "sequence length")->required();
    oracle_kinds.add_to(oracle_cmd);
    oracle_cmd->add_option("--method", oracle_method, "brute (N <= 6), random, or two-level")
        ->check(CLI::IsMember({"brute", "random", "two-level"}));
    oracle_cmd->add_option("--levels", oracle_levels, "number of grid levels for brute force")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1000}));
    oracle_cmd->add_option("--top", oracle_top, "highest return level (default 2 c* one-sided, B two-sided)");
    oracle_cmd->add_option("--samples", oracle_samples, "random method: number of sequences");
    oracle_cmd->add_option("--seed", oracle_seed, "random method: seed");
    oracle_cmd->callback([&] {
        run = [&] {
            const auto defaults = sb::default_levels(oracle_b, oracle_kinds.ratio, oracle_kinds.bound,
                                                     oracle_levels);
            const double top = oracle_top.value_or(defaults.back());
            std::optional<sb::OracleResult> res;
            if (oracle_method == "brute") {
                const auto levels = oracle_top ? sb::geometric_levels(oracle_b, top, oracle_levels) : defaults;
                res = sb::brute_force_sup(oracle_b, oracle_n, levels, oracle_kinds.ratio, oracle_kinds.bound,
                                          convention);
            } else if (oracle_method == "random") {
                res = sb::random_search_sup(oracle_b, oracle_n, top, oracle_kinds.ratio, oracle_kinds.bound,
                                            oracle_samples, oracle_seed, convention);
            } else {
                res = sb::two_level_discrete(oracle_b, oracle_n, oracle_kinds.ratio, oracle_kinds.bound,
                                             convention);
            }
            row(std::cout, "family", family_name(oracle_kinds.ratio, oracle_kinds.bound));
            row(std::cout, "convention", sb::to_string(convention));
            row(std::cout, "N", std::to_string(res->n));
            row(std::cout, "search", res->grid_spec);
            row(std::cout, "best", fixed(res->best_value));
            row(std::cout, "continuum", fixed(res->continuum_value));
            row(std::cout, "gap", fixed(res->gap));
            if (res->best_series.size() <= 12) {
                std::ostringstream w;
                for (std::size_t i = 0; i < res->best_series.size(); ++i) {
                    w << (i ? ", " : "") << fixed(res->best_series[i]);
                }
                row(std::cout, "witness", w.str());
            }
            row(std::cout, "witness_wealth", sb::csv::format_double(sb::analyze(res->best_series).wealth_multiple));
            return 0;
        };
    });

    // demo
    auto* demo_cmd = app.add_subcommand("demo", "Losing-everything sequences with a high Sharpe ratio");
    demo_cmd->require_subcommand(1);
    std::size_t det_k = 0;
    double det_gain = sb::kDefaultGain;
    std::string det_returns_out;
    auto* det_cmd = demo_cmd->add_subcommand("det", "k - 1 gains followed by one -100% period");
    det_cmd->add_option("k", det_k, "sequence length")->required();
    det_cmd->add_option("--gain", det_gain, "per-period gain");
    det_cmd->add_option("--returns-out", det_returns_out, "write the return series as CSV");
    det_cmd->callback([&] {
        run = [&] {
            const auto series = sb::deterministic_series(det_k, det_gain);
            print_report(std::cout, sb::analyze(series, convention), convention);
            if (!det_returns_out.empty()) {
                write_returns_file(det_returns_out, series.values());
            }
            return 0;
        };
    });

    sb::IidSpec iid;
    iid.seed = 7;
    std::string iid_out;
    std::string iid_returns_out;
    auto* iid_cmd = demo_cmd->add_subcommand("iid", "i.i.d. gain / -100% draws with loss probability 1/k");
    iid_cmd->add_option("k", iid.k, "loss probability is 1/k")->required();
    iid_cmd->add_option("gain", iid.gain, "per-period gain")->required();
    iid_cmd->add_option("N", iid.periods, "number of periods")->required();
    iid_cmd->add_option("--seed", iid.seed, "generator seed")->capture_default_str();
    iid_cmd->add_option("--out", iid_out, "write the trajectory CSV (n,sharpe,sortino,wealth)");
    iid_cmd->add_option("--returns-out", iid_returns_out, "write the simulated returns as CSV");
    iid_cmd->callback([&] {
        run = [&] {
            const auto traj = sb::simulate_iid(iid, convention);
            row(std::cout, "population_sharpe", fixed(sb::population_sharpe_iid(iid)));
            row(std::cout, "checkpoints", std::to_string(traj.points.size()));
            print_report(std::cout, sb::analyze(traj.returns, convention), convention);
            if (!iid_out.empty()) {
                auto f = open_output(iid_out);
                sb::csv::write_trajectory(f ? *f : std::cout, traj);
                finish_output(f.get(), iid_out);
            }
            if (!iid_returns_out.empty()) {
                write_returns_file(iid_returns_out, traj.returns);
            }
            return 0;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        return run();
    } catch (const sb::input_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const sb::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMismatch;
    }
}
