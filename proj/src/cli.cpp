#include "gamblekit/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "gamblekit/analysis.hpp"
#include "gamblekit/asymptotics.hpp"
#include "gamblekit/collision.hpp"
#include "gamblekit/fairness.hpp"
#include "gamblekit/game.hpp"
#include "gamblekit/numeric.hpp"
#include "gamblekit/parallel.hpp"
#include "gamblekit/serialize.hpp"
#include "gamblekit/simulate.hpp"

namespace gamblekit {

namespace {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GameFlags {
    GameParams params;
    std::string variant = "proportional";
    CLI::Option* n = nullptr;
    CLI::Option* u = nullptr;
    CLI::Option* d = nullptr;
    CLI::Option* p = nullptr;

    GameParams resolve() const {
        GameParams out = params;
        out.payout_variant = parse_payout_variant(variant);
        return out;
    }
};

void add_game_flags(CLI::App* cmd, GameFlags& flags) {
    flags.n = cmd->add_option("--n", flags.params.n, "number of rounds")->capture_default_str();
    flags.u = cmd->add_option("--u", flags.params.u, "up factor on heads")->capture_default_str();
    flags.d = cmd->add_option("--d", flags.params.d, "down factor on tails")->capture_default_str();
    flags.p = cmd->add_option("--p", flags.params.p, "heads probability")->capture_default_str();
    cmd->add_option("--stake", flags.params.stake, "stake")->capture_default_str();
    cmd->add_option("--initial-score", flags.params.initial_score, "initial score")->capture_default_str();
    cmd->add_option("--variant", flags.variant, "payout on a loss: proportional|total-loss")->capture_default_str();
}

void add_format_flag(CLI::App* cmd, std::string& format, const std::string& fallback) {
    format = fallback;
    cmd->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    file << text;
    file.close();
    if (!file) {
        throw IoError("failed writing '" + path + "'");
    }
}

std::string dump(const Json& j) {
    return j.dump(2) + "\n";
}

class TextReport {
public:
    TextReport& line(const std::string& key, double value) { return line(key, format_double(value)); }
    TextReport& line(const std::string& key, long long value) { return line(key, std::to_string(value)); }
    TextReport& line(const std::string& key, const std::string& value) {
        text_ += key + ": " + value + "\n";
        return *this;
    }
    const std::string& str() const { return text_; }

private:
    std::string text_;
};

std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

double parse_number(const std::string& token) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(token, &used);
    } catch (const std::exception&) {
        throw DomainError("not a number: '" + token + "'");
    }
    if (used != token.size()) {
        throw DomainError("not a number: '" + token + "'");
    }
    return v;
}

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    for (const std::string& token : split_list(text)) {
        out.push_back(parse_number(token));
    }
    return out;
}

// ---- analyze ---------------------------------------------------------------

struct AnalyzeCmd {
    GameFlags game;
    std::string format;
    std::string out_path;
    double tol = kDefaultFairTolerance;

    std::string run() const {
        const GameParams params = game.resolve();
        validate_for_analysis(params);
        const ProfitAnalysis pa = expected_net_profit(params);
        std::optional<VarianceReport> vr;
        double unit_variance = 4.0 * pa.win_prob * pa.loss_prob;
        if (params.payout_variant == PayoutVariant::Proportional) {
            vr = variance_report(params);
            unit_variance = vr->variance;
        }
        std::optional<AsymptoticClass> cls;
        if (params.p > 0.0 && params.p < 1.0) {
            cls = classify(params.u, params.d, params.p, tol);
        }
        const double expected_profit = pa.g * params.stake;
        const double profit_variance = unit_variance * params.stake * params.stake;

        if (format == "json") {
            Json j{{"params", params},
                   {"profit", pa},
                   {"expected_profit", expected_profit},
                   {"variance_per_unit_stake", unit_variance},
                   {"profit_variance", profit_variance},
                   {"variance_report", vr ? Json(*vr) : Json(nullptr)},
                   {"asymptotics", cls ? Json(*cls) : Json(nullptr)}};
            return dump(j);
        }
        TextReport r;
        r.line("n", static_cast<long long>(params.n))
            .line("u", params.u)
            .line("d", params.d)
            .line("p", params.p)
            .line("stake", params.stake)
            .line("payout_variant", std::string(to_string(params.payout_variant)))
            .line("k0", static_cast<long long>(pa.threshold.k0))
            .line("boundary_ratio", pa.threshold.ratio)
            .line("g", pa.g)
            .line("expected_profit", expected_profit)
            .line("term_a", pa.term_a)
            .line("term_b", pa.term_b)
            .line("win_prob", pa.win_prob)
            .line("loss_prob", pa.loss_prob)
            .line("variance_per_unit_stake", unit_variance)
            .line("profit_variance", profit_variance);
        if (vr) {
            for (std::size_t i = 0; i < vr->summands.size(); ++i) {
                r.line("v" + std::to_string(i + 1), vr->summands[i]);
            }
        }
        r.line("regime", cls ? std::string(to_string(cls->regime)) : std::string("degenerate"));
        if (cls) {
            r.line("log_criterion", cls->log_criterion)
                .line("g_limit", cls->g_limit)
                .line("var_limit", cls->var_limit)
                .line("limit_distribution", std::string(to_string(cls->limit_distribution)));
        }
        return r.str();
    }
};

// ---- sweep -----------------------------------------------------------------

const std::vector<std::string> kSweepOutputs{"g", "A", "B", "var", "v1", "v2", "v3", "v4", "v5", "win_prob"};

struct SweepCmd {
    GameFlags game;
    std::string variable;
    double lo = 0.0;
    double hi = 0.0;
    int steps = 0;
    std::string values;
    std::string outputs = "g";
    std::string out_path;
    CLI::Option* lo_opt = nullptr;
    CLI::Option* hi_opt = nullptr;
    CLI::Option* steps_opt = nullptr;
    CLI::Option* values_opt = nullptr;

    std::vector<double> grid() const {
        if (values_opt->count() > 0) {
            if (lo_opt->count() + hi_opt->count() + steps_opt->count() > 0) {
                throw DomainError("give either --values or --lo/--hi/--steps, not both");
            }
            std::vector<double> pts = parse_number_list(values);
            if (pts.empty()) {
                throw DomainError("--values lists no points");
            }
            return pts;
        }
        if (lo_opt->count() == 0 || hi_opt->count() == 0 || steps_opt->count() == 0) {
            throw DomainError("sweep needs --values or all of --lo, --hi, --steps");
        }
        if (steps < 1) {
            throw DomainError("sweep requires steps >= 1");
        }
        if (!(lo < hi)) {
            throw DomainError("sweep requires lo < hi");
        }
        std::vector<double> pts(static_cast<std::size_t>(steps) + 1);
        for (int i = 0; i <= steps; ++i) {
            pts[static_cast<std::size_t>(i)] = i == steps ? hi : lo + (hi - lo) * i / steps;
        }
        return pts;
    }

    std::vector<std::string> selected_outputs() const {
        std::vector<std::string> out;
        for (const std::string& name : split_list(outputs)) {
            if (std::find(kSweepOutputs.begin(), kSweepOutputs.end(), name) == kSweepOutputs.end()) {
                throw DomainError("unknown sweep output '" + name + "' (expected g,A,B,var,v1..v5,win_prob)");
            }
            if (std::find(out.begin(), out.end(), name) != out.end()) {
                throw DomainError("sweep output '" + name + "' listed twice");
            }
            out.push_back(name);
        }
        return out;
    }

    std::string run() const {
        const CLI::Option* fixed = variable == "n" ? game.n : variable == "u" ? game.u : variable == "d" ? game.d : game.p;
        if (fixed->count() > 0) {
            throw DomainError("sweep variable " + variable + " is also fixed by --" + variable);
        }
        const GameParams base = game.resolve();
        const std::vector<double> pts = grid();
        const std::vector<std::string> names = selected_outputs();
        const bool needs_report = std::any_of(names.begin(), names.end(), [](const std::string& s) {
            return s.size() == 2 && s[0] == 'v';
        });
        const bool needs_variance = needs_report || std::find(names.begin(), names.end(), "var") != names.end();
        if (needs_report && base.payout_variant != PayoutVariant::Proportional) {
            throw DomainError("variance summands v1..v5 are defined for the proportional payout only");
        }

        std::vector<GameParams> points(pts.size(), base);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            GameParams& gp = points[i];
            if (variable == "n") {
                const double r = std::round(pts[i]);
                if (std::abs(pts[i] - r) > 1e-9 || r < 1 || r > 1e9) {
                    throw DomainError("sweep over n needs positive integer points, got " + format_double(pts[i]));
                }
                gp.n = static_cast<int>(r);
            } else if (variable == "u") {
                gp.u = pts[i];
            } else if (variable == "d") {
                gp.d = pts[i];
            } else {
                gp.p = pts[i];
            }
            validate_for_analysis(gp);
        }

        std::vector<std::vector<double>> rows(pts.size());
        if (!names.empty()) {
            parallel_for(pts.size(), worker_count(), [&](std::size_t i) {
                const GameParams& gp = points[i];
                const LogBinomialTable table(gp.n);
                const ProfitAnalysis pa = expected_net_profit(gp, table);
                VarianceReport vr;
                double variance = 4.0 * pa.win_prob * pa.loss_prob;
                if (needs_variance && gp.payout_variant == PayoutVariant::Proportional) {
                    vr = variance_report(gp, table);
                    variance = vr.variance;
                }
                std::vector<double>& row = rows[i];
                row.push_back(pts[i]);
                for (const std::string& name : names) {
                    if (name == "g") {
                        row.push_back(pa.g);
                    } else if (name == "A") {
                        row.push_back(pa.term_a);
                    } else if (name == "B") {
                        row.push_back(pa.term_b);
                    } else if (name == "var") {
                        row.push_back(variance);
                    } else if (name == "win_prob") {
                        row.push_back(pa.win_prob);
                    } else {
                        row.push_back(vr.summands[static_cast<std::size_t>(name[1] - '1')]);
                    }
                }
            });
        }

        std::ostringstream csv;
        CsvWriter writer(csv);
        std::vector<std::string> header{variable};
        header.insert(header.end(), names.begin(), names.end());
        writer.header(header);
        if (!names.empty()) {
            for (const auto& row : rows) {
                writer.row(row);
            }
        }
        return csv.str();
    }
};

// ---- fair ------------------------------------------------------------------

struct FairCmd {
    GameFlags game;
    std::string solve = "u";
    double tol = 1e-12;
    double u_max = kDefaultUMax;
    std::string d_grid = "0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";
    std::string format;
    std::string out_path;

    static TextReport solution_text(const FairSolution& s) {
        TextReport r;
        r.line("status", std::string(to_string(s.status)))
            .line("bracket_lo", s.bracket_lo)
            .line("bracket_hi", s.bracket_hi)
            .line("midpoint", s.midpoint())
            .line("g_lo", s.g_lo)
            .line("g_hi", s.g_hi);
        return r;
    }

    std::string run() const {
        const GameParams params = game.resolve();
        if (params.payout_variant != PayoutVariant::Proportional) {
            throw DomainError("fair solving covers the proportional payout only");
        }
        if (solve == "curve") {
            const std::vector<double> ds = parse_number_list(d_grid);
            if (ds.empty()) {
                throw DomainError("--d-grid lists no points");
            }
            const std::vector<FairCurvePoint> curve = fair_curve(params.n, params.p, ds, tol, u_max);
            if (format == "json") {
                return dump(Json{{"n", params.n}, {"p", params.p}, {"points", curve}});
            }
            std::ostringstream csv;
            CsvWriter writer(csv);
            writer.header({"d", "bracket_lo", "bracket_hi", "u_fair", "u_fair_times_d", "g_lo", "g_hi", "status"});
            for (const FairCurvePoint& pt : curve) {
                const FairSolution& s = pt.solution;
                writer.text_row({format_double(pt.d), format_double(s.bracket_lo), format_double(s.bracket_hi),
                                 format_double(s.midpoint()), format_double(s.midpoint() * pt.d),
                                 format_double(s.g_lo), format_double(s.g_hi), std::string(to_string(s.status))});
            }
            return csv.str();
        }
        const FairSolution s = solve == "u" ? fair_u_for_d(params.n, params.d, params.p, tol, u_max)
                                            : fair_p(params.n, params.u, params.d, tol);
        if (format == "json") {
            return dump(Json{{"solve", solve}, {"params", params}, {"solution", s}});
        }
        TextReport r;
        r.line("solve", solve);
        return r.str() + solution_text(s).str();
    }
};

// ---- simulate --------------------------------------------------------------

struct SimulateCmd {
    GameFlags game;
    std::uint64_t seed = 0;
    long long runs = 1;
    bool trajectory = false;
    bool retain = false;
    std::string format;
    std::string out_path;

    std::string run() const {
        const GameParams params = game.resolve();
        validate_for_simulation(params);
        if (trajectory) {
            const Trajectory t = simulate_trajectory(params, seed);
            if (format == "json") {
                return dump(Json(t));
            }
            TextReport r;
            r.line("seed", std::to_string(t.seed))
                .line("heads_count", static_cast<long long>(t.heads_count))
                .line("final_score", t.scores.back())
                .line("net_profit", t.net_profit);
            return r.str();
        }
        if (runs < 1) {
            throw DomainError("simulate requires --runs >= 1");
        }
        const BatchStats stats = simulate_batch(params, runs, seed, BatchOptions{retain, 0});
        if (format == "json") {
            return dump(Json(stats));
        }
        TextReport r;
        r.line("num_runs", stats.num_runs)
            .line("mean_profit", stats.mean_profit)
            .line("sample_variance", stats.sample_variance)
            .line("win_count", stats.win_count);
        return r.str();
    }
};

// ---- collision -------------------------------------------------------------

struct CollisionCmd {
    int n = 100;
    double p = 0.5;
    int m = 8;
    std::string weights_path;
    std::string format;
    std::string out_path;

    ScoreWeights load_weights() const {
        if (weights_path.empty()) {
            return ScoreWeights::binomial(n, p);
        }
        std::ifstream in(weights_path, std::ios::binary);
        if (!in) {
            throw IoError("cannot open weights file '" + weights_path + "'");
        }
        std::stringstream buffer;
        buffer << in.rdbuf();
        if (in.bad()) {
            throw IoError("failed reading weights file '" + weights_path + "'");
        }
        std::string text = buffer.str();
        std::replace_if(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c) != 0; }, ',');
        return ScoreWeights::from_values(parse_number_list(text));
    }

    std::string run() const {
        const ScoreWeights w = load_weights();
        const DistinctProbability distinct = all_distinct_probability_detailed(w, m);
        const int outcomes_minus_one = static_cast<int>(w.size()) - 1;
        const double bound = maclaurin_upper_bound(outcomes_minus_one, m);
        if (format == "json") {
            return dump(Json{{"outcomes", w.size()},
                             {"m", m},
                             {"all_distinct_probability", distinct.value},
                             {"collision_probability", 1.0 - distinct.value},
                             {"method", distinct.method},
                             {"maclaurin_upper_bound", bound},
                             {"collision_lower_bound", 1.0 - bound}});
        }
        TextReport r;
        r.line("outcomes", static_cast<long long>(w.size()))
            .line("m", static_cast<long long>(m))
            .line("all_distinct_probability", distinct.value)
            .line("collision_probability", 1.0 - distinct.value)
            .line("method", std::string(to_string(distinct.method)))
            .line("maclaurin_upper_bound", bound)
            .line("collision_lower_bound", 1.0 - bound);
        return r.str();
    }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact analysis, asymptotics and simulation of the capped-payout coin-toss game", "gamblekit"};
    app.require_subcommand(1);

    AnalyzeCmd analyze;
    CLI::App* analyze_cmd = app.add_subcommand("analyze", "expected profit, variance and regime");
    add_game_flags(analyze_cmd, analyze.game);
    add_format_flag(analyze_cmd, analyze.format, "text");
    analyze_cmd->add_option("--tol", analyze.tol, "fair-regime tolerance on |p ln u + q ln d|")->capture_default_str();
    analyze_cmd->add_option("--out", analyze.out_path, "output file (default stdout)");

    SweepCmd sweep;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "CSV of analysis outputs over a parameter grid");
    add_game_flags(sweep_cmd, sweep.game);
    sweep_cmd->add_option("--var", sweep.variable, "swept variable")
        ->required()
        ->check(CLI::IsMember({"n", "u", "d", "p"}));
    sweep.lo_opt = sweep_cmd->add_option("--lo", sweep.lo, "first grid point");
    sweep.hi_opt = sweep_cmd->add_option("--hi", sweep.hi, "last grid point");
    sweep.steps_opt = sweep_cmd->add_option("--steps", sweep.steps, "number of intervals (steps+1 points)");
    sweep.values_opt = sweep_cmd->add_option("--values", sweep.values, "explicit comma-separated points");
    sweep_cmd->add_option("--outputs", sweep.outputs, "comma-separated subset of g,A,B,var,v1..v5,win_prob")
        ->capture_default_str();
    sweep_cmd->add_option("--out", sweep.out_path, "output file (default stdout)");

    FairCmd fair;
    CLI::App* fair_cmd = app.add_subcommand("fair", "parameters with zero expected profit");
    add_game_flags(fair_cmd, fair.game);
    add_format_flag(fair_cmd, fair.format, "text");
    fair_cmd->add_option("--solve", fair.solve, "u|p|curve")->check(CLI::IsMember({"u", "p", "curve"}))
        ->capture_default_str();
    fair_cmd->add_option("--tol", fair.tol, "bracket width")->capture_default_str();
    fair_cmd->add_option("--u-max", fair.u_max, "upper end of the u scan")->capture_default_str();
    fair_cmd->add_option("--d-grid", fair.d_grid, "comma-separated d values for --solve curve")
        ->capture_default_str();
    fair_cmd->add_option("--out", fair.out_path, "output file (default stdout)");

    SimulateCmd sim;
    CLI::App* sim_cmd = app.add_subcommand("simulate", "seeded Monte Carlo runs");
    add_game_flags(sim_cmd, sim.game);
    add_format_flag(sim_cmd, sim.format, "json");
    sim_cmd->add_option("--seed", sim.seed, "master seed")->required();
    sim_cmd->add_option("--runs", sim.runs, "number of games")->capture_default_str();
    sim_cmd->add_flag("--trajectory", sim.trajectory, "emit the single trajectory for --seed");
    sim_cmd->add_flag("--retain-samples", sim.retain, "include every run's net profit");
    sim_cmd->add_option("--out", sim.out_path, "output file (default stdout)");

    CollisionCmd coll;
    CLI::App* coll_cmd = app.add_subcommand("collision", "probability of repeated final scores");
    coll_cmd->add_option("--n", coll.n, "number of rounds")->capture_default_str();
    coll_cmd->add_option("--p", coll.p, "heads probability")->capture_default_str();
    coll_cmd->add_option("--m", coll.m, "number of games")->capture_default_str();
    coll_cmd->add_option("--weights", coll.weights_path, "file of weights (whitespace or comma separated)");
    add_format_flag(coll_cmd, coll.format, "text");
    coll_cmd->add_option("--out", coll.out_path, "output file (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kExitOk;
        }
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    try {
        if (analyze_cmd->parsed()) {
            emit(analyze.run(), analyze.out_path, out);
        } else if (sweep_cmd->parsed()) {
            emit(sweep.run(), sweep.out_path, out);
        } else if (fair_cmd->parsed()) {
            emit(fair.run(), fair.out_path, out);
        } else if (sim_cmd->parsed()) {
            emit(sim.run(), sim.out_path, out);
        } else if (coll_cmd->parsed()) {
            emit(coll.run(), coll.out_path, out);
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::logic_error& e) {
        // DomainError, invalid_argument and out_of_range
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitOk;
}

}  // namespace gamblekit
