#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sympca/analysis.hpp"
#include "sympca/dynamics.hpp"
#include "sympca/errors.hpp"
#include "sympca/linalg.hpp"
#include "sympca/metrics.hpp"
#include "sympca/model.hpp"
#include "sympca/rules.hpp"

#include "svg_plot.hpp"

namespace sympca::cli {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDivergence = 2;
constexpr int kExitVerifyFailed = 3;

constexpr std::uint64_t kDefaultSeed = 2;

std::string format_value(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.16e", v);
    return buffer;
}

std::optional<BackProjection> parse_mode(const std::string& mode) {
    if (mode == "exact") {
        return BackProjection::Exact;
    }
    if (mode == "approx") {
        return BackProjection::Approximated;
    }
    if (mode == "none") {
        return BackProjection::None;
    }
    return std::nullopt;
}

std::optional<RuleSpec> parse_rule(const std::string& rule, double alpha) {
    if (rule == "twj2s") {
        return RuleSpec::twj2s();
    }
    if (rule == "n2s") {
        return RuleSpec::n2s();
    }
    if (rule == "m2s") {
        return RuleSpec::m2s(alpha);
    }
    if (rule == "oja") {
        return RuleSpec::oja();
    }
    if (rule == "nl") {
        return RuleSpec::nl();
    }
    if (rule == "nse") {
        return RuleSpec::nse();
    }
    return std::nullopt;
}

void write_trace_csv(const std::string& path, const std::vector<TraceRow>& trace,
                     const std::string& config_comment) {
    std::ofstream file(path);
    if (!file) {
        throw std::runtime_error("cannot write " + path);
    }
    if (!config_comment.empty()) {
        file << "# config: " << config_comment << "\n";
    }
    file << "step,e_o,e_p\n";
    for (const TraceRow& row : trace) {
        file << row.step << "," << format_value(row.e_o) << "," << format_value(row.e_p)
             << "\n";
    }
}

// ---------------------------------------------------------------------------
// run
// ---------------------------------------------------------------------------

struct RunOptions {
    std::string rule = "n2s";
    double alpha = 0.0;
    std::string preset = "spaced";
    std::vector<double> eigenvalues; // empty: use preset
    int n = -1;
    int m = 4;
    std::string mode = "exact";
    double gamma = 1.0;
    long steps = 20000;
    long subsample = 100;
    std::uint64_t seed = kDefaultSeed;
    std::string out = "trace.csv";
};

json options_to_json(const RunOptions& o) {
    json j;
    j["rule"] = o.rule;
    j["alpha"] = o.alpha;
    if (o.eigenvalues.empty()) {
        j["preset"] = o.preset;
    } else {
        j["eigenvalues"] = o.eigenvalues;
    }
    j["m"] = o.m;
    j["backprojection"] = o.mode;
    j["gamma"] = o.gamma;
    j["steps"] = o.steps;
    j["subsample"] = o.subsample;
    j["seed"] = o.seed;
    return j;
}

// Fills options the CLI did not set from the JSON config document.
void apply_config_file(const std::string& path, const CLI::App& cmd, RunOptions& o) {
    std::ifstream file(path);
    if (!file) {
        throw ConfigError("cannot read config file " + path);
    }
    json j = json::parse(file);
    const auto unset = [&cmd](const char* flag) { return cmd.count(flag) == 0; };
    if (j.contains("rule") && unset("--rule")) {
        o.rule = j["rule"].get<std::string>();
    }
    if (j.contains("alpha") && unset("--alpha")) {
        o.alpha = j["alpha"].get<double>();
    }
    if (j.contains("preset") && unset("--preset")) {
        o.preset = j["preset"].get<std::string>();
    }
    if (j.contains("eigenvalues") && unset("--eigenvalues")) {
        o.eigenvalues = j["eigenvalues"].get<std::vector<double>>();
    }
    if (j.contains("n") && unset("--n")) {
        o.n = j["n"].get<int>();
    }
    if (j.contains("m") && unset("--m")) {
        o.m = j["m"].get<int>();
    }
    if (j.contains("backprojection") && unset("--backprojection")) {
        o.mode = j["backprojection"].get<std::string>();
    }
    if (j.contains("gamma") && unset("--gamma")) {
        o.gamma = j["gamma"].get<double>();
    }
    if (j.contains("steps") && unset("--steps")) {
        o.steps = j["steps"].get<long>();
    }
    if (j.contains("subsample") && unset("--subsample")) {
        o.subsample = j["subsample"].get<long>();
    }
    if (j.contains("seed") && unset("--seed")) {
        o.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("out") && unset("--out")) {
        o.out = j["out"].get<std::string>();
    }
}

int do_run(const RunOptions& o, std::ostream& out, std::ostream& err) {
    std::vector<double> lambdas = o.eigenvalues;
    if (lambdas.empty()) {
        if (o.preset == "spaced") {
            lambdas = preset_eigenvalues(EigenvaluePreset::spaced());
        } else if (o.preset == "nearby") {
            lambdas = preset_eigenvalues(EigenvaluePreset::nearby());
        } else {
            err << "usage error: --preset unknown value '" << o.preset
                << "' (expected spaced|nearby)\n";
            return kExitUsage;
        }
    }
    if (o.n >= 0 && static_cast<std::size_t>(o.n) != lambdas.size()) {
        err << "usage error: --n=" << o.n << " contradicts the " << lambdas.size()
            << " configured eigenvalues\n";
        return kExitUsage;
    }
    const std::optional<RuleSpec> spec = parse_rule(o.rule, o.alpha);
    if (!spec) {
        err << "usage error: --rule unknown value '" << o.rule
            << "' (expected twj2s|n2s|m2s|oja|nl|nse)\n";
        return kExitUsage;
    }
    const std::optional<BackProjection> mode = parse_mode(o.mode);
    if (!mode) {
        err << "usage error: --backprojection unknown value '" << o.mode
            << "' (expected exact|approx|none)\n";
        return kExitUsage;
    }
    if (o.m < 1 || static_cast<std::size_t>(o.m) > lambdas.size()) {
        err << "usage error: --m=" << o.m << " must lie in [1, " << lambdas.size() << "]\n";
        return kExitUsage;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        Rng rng(o.seed);
        CovarianceModel model = make_covariance(std::move(lambdas), rng);
        SimConfig config{std::move(model), *spec,     static_cast<std::size_t>(o.m),
                         o.gamma,          o.steps,   o.subsample,
                         *mode,            o.seed};
        const SimResult result = run_simulation(config);
        write_trace_csv(o.out, result.trace, "");

        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        json manifest;
        manifest["config"] = options_to_json(o);
        manifest["output_path"] = o.out;
        manifest["emitted_rows"] = result.trace.size();
        manifest["wall_time"] = wall;
        out << manifest.dump() << "\n";
        return kExitOk;
    } catch (const DivergenceError& e) {
        err << "divergence: " << e.what() << "\n";
        return kExitDivergence;
    } catch (const ContractError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }
}

// ---------------------------------------------------------------------------
// figure
// ---------------------------------------------------------------------------

int do_figure(const std::string& name, const std::string& mode_str, double gamma,
              long steps, std::uint64_t seed, const std::string& out_dir,
              std::ostream& out, std::ostream& err) {
    EigenvaluePreset preset;
    if (name == "spaced") {
        preset = EigenvaluePreset::spaced();
    } else if (name == "nearby") {
        preset = EigenvaluePreset::nearby();
    } else {
        err << "usage error: --name unknown value '" << name << "' (expected spaced|nearby)\n";
        return kExitUsage;
    }
    const std::optional<BackProjection> mode = parse_mode(mode_str);
    if (!mode) {
        err << "usage error: --mode unknown value '" << mode_str
            << "' (expected exact|approx|none)\n";
        return kExitUsage;
    }

    const std::vector<RuleSpec> specs = {RuleSpec::twj2s(),  RuleSpec::n2s(),
                                         RuleSpec::m2s(1.0), RuleSpec::m2s(2.0),
                                         RuleSpec::m2s(5.0), RuleSpec::m2s(10.0),
                                         RuleSpec::m2s(20.0)};
    const long subsample = 100;

    Rng rng(seed);
    const CovarianceModel model = make_covariance(preset_eigenvalues(preset), rng);

    std::filesystem::create_directories(out_dir);

    // The curves share the model, the seed, and therefore the initial estimate.
    std::vector<std::future<SimResult>> futures;
    futures.reserve(specs.size());
    for (const RuleSpec& spec : specs) {
        futures.push_back(std::async(std::launch::async, [&model, spec, gamma, steps,
                                                          subsample, mode, seed]() {
            SimConfig config{model, spec, 4, gamma, steps, subsample, *mode, seed};
            return run_simulation(config);
        }));
    }

    Panel left{"orthonormality error e_o", {}};
    Panel right{"projection error e_p", {}};
    try {
        for (std::size_t i = 0; i < specs.size(); ++i) {
            const SimResult result = futures[i].get();
            json config;
            config["figure"] = name;
            config["rule"] = specs[i].label();
            config["alpha"] = specs[i].alpha;
            config["backprojection"] = mode_str;
            config["gamma"] = gamma;
            config["steps"] = steps;
            config["subsample"] = subsample;
            config["seed"] = seed;
            const std::string csv_path =
                out_dir + "/" + name + "_" + mode_str + "_" + specs[i].label() + ".csv";
            write_trace_csv(csv_path, result.trace, config.dump());
            out << "wrote " << csv_path << " (" << result.trace.size() << " rows)\n";

            Series eo{specs[i].label(), {}, {}};
            Series ep{specs[i].label(), {}, {}};
            for (const TraceRow& row : result.trace) {
                eo.x.push_back(static_cast<double>(row.step));
                eo.y.push_back(row.e_o);
                ep.x.push_back(static_cast<double>(row.step));
                ep.y.push_back(row.e_p);
            }
            left.series.push_back(std::move(eo));
            right.series.push_back(std::move(ep));
        }
    } catch (const DivergenceError& e) {
        err << "divergence: " << e.what() << "\n";
        return kExitDivergence;
    }

    const std::string svg_path = out_dir + "/" + name + "_" + mode_str + ".svg";
    write_log_plot_svg(svg_path, name + " eigenvalues, " + mode_str + " back-projection",
                       left, right);
    out << "wrote " << svg_path << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// detsweep
// ---------------------------------------------------------------------------

int do_detsweep(std::uint64_t seed, const std::string& out_path, int n, int m,
                std::ostream& out, std::ostream& err) {
    if (n < 1 || m < 1 || m > n) {
        err << "usage error: --m=" << m << " must lie in [1, --n=" << n << "]\n";
        return kExitUsage;
    }
    std::vector<double> lambdas(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        lambdas[static_cast<std::size_t>(i)] = static_cast<double>(n - i);
    }
    std::vector<double> grid;
    grid.reserve(201);
    for (int i = 0; i <= 200; ++i) {
        grid.push_back(static_cast<double>(i) / 10.0);
    }

    Rng rng(seed);
    const Matrix a_bar = random_stiefel(static_cast<std::size_t>(n),
                                        static_cast<std::size_t>(m), rng);
    const SweepResult sweep = det_sweep(a_bar, lambdas, grid);

    std::ofstream file(out_path);
    if (!file) {
        err << "cannot write " << out_path << "\n";
        return kExitUsage;
    }
    file << "alpha,det\n";
    for (std::size_t i = 0; i < sweep.alphas.size(); ++i) {
        char alpha_buffer[16];
        std::snprintf(alpha_buffer, sizeof(alpha_buffer), "%.1f", sweep.alphas[i]);
        file << alpha_buffer << "," << format_value(sweep.dets[i]) << "\n";
    }
    file << "# sign-changes: " << sweep.zero_crossings.size() << "\n";
    for (const auto& [lo, hi] : sweep.zero_crossings) {
        char bracket[48];
        std::snprintf(bracket, sizeof(bracket), "# bracket: %.1f,%.1f", lo, hi);
        file << bracket << "\n";
    }
    out << "wrote " << out_path << " (" << sweep.zero_crossings.size()
        << " sign changes)\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

CovarianceModel random_verify_model(std::size_t n, Rng& rng) {
    std::vector<double> lams(n);
    for (std::size_t i = 0; i < n; ++i) {
        lams[i] = static_cast<double>(n - i) + 0.3 * rng.uniform();
    }
    return make_covariance(lams, rng);
}

SuiteResult suite_gradcheck() {
    Rng rng(101);
    double worst = 0.0;
    const double alphas[] = {0.0, 1.0, 5.0};
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 7.0);
        const std::size_t m =
            1 + static_cast<std::size_t>(rng.uniform() * std::min<std::size_t>(n, 4));
        const CovarianceModel model = random_verify_model(n, rng);
        const Matrix w = random_gaussian(n, m, rng);
        const double alpha = alphas[trial % 3];
        const Matrix g = grad_modified(w, model.covariance, alpha);

        const double h = 1e-5;
        Matrix fd(n, m);
        Matrix probe = w;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                const double saved = probe(i, j);
                probe(i, j) = saved + h;
                const double up = objective_modified(probe, model.covariance, alpha);
                probe(i, j) = saved - h;
                const double down = objective_modified(probe, model.covariance, alpha);
                probe(i, j) = saved;
                fd(i, j) = (up - down) / (2.0 * h);
            }
        }
        worst = std::max(worst, (g - fd).frobenius_norm() / g.frobenius_norm());
    }
    char detail[64];
    std::snprintf(detail, sizeof(detail), "max relative error %.2e", worst);
    return SuiteResult{"gradcheck", worst <= 1e-6, detail};
}

SuiteResult suite_reduction() {
    Rng rng(102);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const CovarianceModel model = random_verify_model(6, rng);
        const Matrix w = random_gaussian(6, 3, rng);
        const Matrix a = rule_rhs(RuleSpec::m2s(0.0), w, model.covariance);
        const Matrix b = rule_rhs(RuleSpec::n2s(), w, model.covariance);
        worst = std::max(worst,
                         (a - b).frobenius_norm() / std::max(1.0, b.frobenius_norm()));
    }
    char detail[64];
    std::snprintf(detail, sizeof(detail), "max relative gap %.2e", worst);
    return SuiteResult{"reduction-identity", worst <= 1e-14, detail};
}

SuiteResult suite_arrangement(bool mutate) {
    Rng rng(103);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const CovarianceModel model = random_verify_model(5, rng);
        const Matrix w = random_gaussian(5, 3, rng);
        const double alpha = 20.0 * rng.uniform();
        // The mutation hook flips the sign of the weight in one arrangement; a
        // healthy build must report the two arrangements as identical.
        const Matrix form1 = m2s_form1_rhs(w, model.covariance, mutate ? -alpha : alpha);
        const Matrix form2 = rule_rhs(RuleSpec::m2s(alpha), w, model.covariance);
        worst = std::max(worst, (form1 - form2).frobenius_norm() /
                                    std::max(1.0, form2.frobenius_norm()));
    }
    char detail[64];
    std::snprintf(detail, sizeof(detail), "max relative gap %.2e", worst);
    return SuiteResult{"arrangement-identity", worst <= 1e-12, detail};
}

SuiteResult suite_fixed_points() {
    Rng rng(104);
    const CovarianceModel model =
        make_covariance(preset_eigenvalues(EigenvaluePreset::spaced()), rng);
    const std::vector<std::vector<int>> selections = {{0, 1, 2, 3}, {0, 2, 3, 5}, {1, 2, 4, 5}};
    const RuleSpec specs[] = {RuleSpec::twj2s(),  RuleSpec::n2s(),    RuleSpec::m2s(1.0),
                              RuleSpec::m2s(5.0), RuleSpec::m2s(20.0), RuleSpec::oja(),
                              RuleSpec::nl(),     RuleSpec::nse()};
    double worst = 0.0;
    for (const auto& selection : selections) {
        const Matrix w_bar = desired_fixed_point(model, selection);
        for (const RuleSpec& spec : specs) {
            worst = std::max(worst, rule_rhs(spec, w_bar, model.covariance).frobenius_norm());
        }
    }
    char detail[64];
    std::snprintf(detail, sizeof(detail), "max residual %.2e", worst);
    return SuiteResult{"fixed-point-residual", worst <= 1e-10, detail};
}

SuiteResult suite_constraints() {
    Rng rng(105);
    const CovarianceModel model =
        make_covariance(preset_eigenvalues(EigenvaluePreset::spaced()), rng);
    const std::vector<std::vector<int>> selections = {{0, 1, 2, 3}, {0, 2, 3, 5}, {1, 2, 4, 5}};
    double worst = 0.0;
    for (const auto& selection : selections) {
        const ConstraintBlocks blocks =
            constraint_blocks(desired_fixed_point(model, selection), model);
        for (double alpha : {0.0, 1.0, 5.0, 20.0}) {
            const ConstraintResiduals res = check_fixed_point_constraints(blocks, alpha);
            worst = std::max({worst, res.sd, res.t});
        }
    }
    char detail[64];
    std::snprintf(detail, sizeof(detail), "max residual %.2e", worst);
    return SuiteResult{"constraint-residual", worst <= 1e-10, detail};
}

SuiteResult suite_stability() {
    Rng model_rng(kDefaultSeed);
    const CovarianceModel model =
        make_covariance(preset_eigenvalues(EigenvaluePreset::spaced()), model_rng);
    const std::vector<int> top4 = {0, 1, 2, 3};
    const Matrix w_top = desired_fixed_point(model, top4);

    Rng rng(106);
    int sign_failures = 0;
    for (double alpha : {0.0, 5.0, 20.0}) {
        for (int trial = 0; trial < 20; ++trial) {
            StabilityProbe probe{top4, random_skew_unit(4, rng), random_unit(6, 4, rng),
                                 1e-3, alpha};
            const Matrix w = perturbed_point(model, probe);
            if (!(delta_j_measured(w, w_top, model.covariance, alpha) < 0.0)) {
                ++sign_failures;
            }
        }
    }

    const std::vector<int> undesired = {0, 1, 2, 4};
    const Matrix w_und = desired_fixed_point(model, undesired);
    Matrix step_b(6, 4);
    step_b(0, 3) = 1.0;
    StabilityProbe saddle_probe{undesired, Matrix(4, 4), step_b, 1e-3, 5.0};
    const Matrix w_saddle = perturbed_point(model, saddle_probe);
    if (!(delta_j_measured(w_saddle, w_und, model.covariance, 5.0) > 0.0)) {
        ++sign_failures;
    }

    char detail[64];
    std::snprintf(detail, sizeof(detail), "%d sign failures", sign_failures);
    return SuiteResult{"stability-signs", sign_failures == 0, detail};
}

int do_verify(const std::string& only, const std::string& mutate, std::ostream& out,
              std::ostream& err) {
    const std::vector<std::string> names = {"gradcheck",           "reduction-identity",
                                            "arrangement-identity", "fixed-point-residual",
                                            "constraint-residual",  "stability-signs"};
    if (!only.empty() &&
        std::find(names.begin(), names.end(), only) == names.end()) {
        err << "usage error: --only unknown suite '" << only << "'\n";
        return kExitUsage;
    }

    std::vector<SuiteResult> results;
    const auto wants = [&only](const char* name) { return only.empty() || only == name; };
    if (wants("gradcheck")) {
        results.push_back(suite_gradcheck());
    }
    if (wants("reduction-identity")) {
        results.push_back(suite_reduction());
    }
    if (wants("arrangement-identity")) {
        results.push_back(suite_arrangement(mutate == "arrangement-identity"));
    }
    if (wants("fixed-point-residual")) {
        results.push_back(suite_fixed_points());
    }
    if (wants("constraint-residual")) {
        results.push_back(suite_constraints());
    }
    if (wants("stability-signs")) {
        results.push_back(suite_stability());
    }

    std::string failed;
    for (const SuiteResult& result : results) {
        out << (result.passed ? "ok   " : "FAIL ") << result.name << ": " << result.detail
            << "\n";
        if (!result.passed) {
            failed += (failed.empty() ? "" : ", ") + result.name;
        }
    }
    if (!failed.empty()) {
        out << "verification failed: " << failed << "\n";
        return kExitVerifyFailed;
    }
    out << "verification passed\n";
    return kExitOk;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"symmetric learning rules for principal component analysis"};
    app.require_subcommand(1);

    // run
    RunOptions run_options;
    std::string config_path;
    CLI::App* run_cmd = app.add_subcommand("run", "integrate one rule and write a CSV trace");
    run_cmd->add_option("--rule", run_options.rule, "twj2s|n2s|m2s|oja|nl|nse");
    run_cmd->add_option("--alpha", run_options.alpha, "off-diagonal penalty weight (m2s)");
    auto* preset_opt =
        run_cmd->add_option("--preset", run_options.preset, "spaced|nearby");
    auto* eigen_opt = run_cmd
                          ->add_option("--eigenvalues", run_options.eigenvalues,
                                       "custom spectrum, comma separated, descending")
                          ->delimiter(',');
    preset_opt->excludes(eigen_opt);
    run_cmd->add_option("--n", run_options.n, "ambient dimension (must match the spectrum)");
    run_cmd->add_option("--m", run_options.m, "number of estimated eigenvectors");
    run_cmd->add_option("--backprojection", run_options.mode, "exact|approx|none");
    run_cmd->add_option("--gamma", run_options.gamma, "learning rate");
    run_cmd->add_option("--steps", run_options.steps, "Euler steps");
    run_cmd->add_option("--subsample", run_options.subsample, "trace sampling interval");
    run_cmd->add_option("--seed", run_options.seed, "generator seed");
    run_cmd->add_option("--out", run_options.out, "output CSV path");
    run_cmd->add_option("--config", config_path, "JSON config file; flags override it");

    // figure
    std::string figure_name;
    std::string figure_mode = "exact";
    double figure_gamma = -1.0;
    long figure_steps = -1;
    std::uint64_t figure_seed = kDefaultSeed;
    std::string figure_dir = "figures";
    CLI::App* figure_cmd =
        app.add_subcommand("figure", "run the seven-rule comparison and plot it");
    figure_cmd->add_option("--name", figure_name, "spaced|nearby")->required();
    figure_cmd->add_option("--mode", figure_mode, "exact|approx|none");
    figure_cmd->add_option("--gamma", figure_gamma, "learning rate (default 1 exact, 0.1 otherwise)");
    figure_cmd->add_option("--steps", figure_steps,
                           "Euler steps (default 20000 spaced, 50000 nearby)");
    figure_cmd->add_option("--seed", figure_seed, "generator seed");
    figure_cmd->add_option("--out-dir", figure_dir, "output directory");

    // detsweep
    std::uint64_t sweep_seed = kDefaultSeed;
    std::string sweep_out = "detsweep.csv";
    int sweep_n = 10;
    int sweep_m = 4;
    CLI::App* sweep_cmd = app.add_subcommand(
        "detsweep", "determinant of the modified factor over the alpha grid");
    sweep_cmd->add_option("--seed", sweep_seed, "generator seed");
    sweep_cmd->add_option("--out", sweep_out, "output CSV path");
    sweep_cmd->add_option("--n", sweep_n, "ambient dimension");
    sweep_cmd->add_option("--m", sweep_m, "columns of the random semi-orthogonal matrix");

    // verify
    std::string verify_only;
    std::string verify_mutate;
    CLI::App* verify_cmd = app.add_subcommand("verify", "run the invariant suites");
    verify_cmd->add_option("--only", verify_only, "run a single suite by name");
    verify_cmd->add_option("--mutate", verify_mutate, "self-test hook: corrupt a suite")
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (*run_cmd) {
            if (!config_path.empty()) {
                apply_config_file(config_path, *run_cmd, run_options);
            }
            return do_run(run_options, out, err);
        }
        if (*figure_cmd) {
            if (figure_gamma < 0.0) {
                figure_gamma = figure_mode == "exact" ? 1.0 : 0.1;
            }
            if (figure_steps < 0) {
                figure_steps = figure_name == "nearby" ? 50000 : 20000;
            }
            return do_figure(figure_name, figure_mode, figure_gamma, figure_steps,
                             figure_seed, figure_dir, out, err);
        }
        if (*sweep_cmd) {
            return do_detsweep(sweep_seed, sweep_out, sweep_n, sweep_m, out, err);
        }
        if (*verify_cmd) {
            return do_verify(verify_only, verify_mutate, out, err);
        }
    } catch (const ConfigError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const json::exception& e) {
        err << "usage error: config file: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace sympca::cli
