#include "hullwalk/cli.hpp"

#include "hullwalk/error.hpp"
#include "hullwalk/hullstream.hpp"
#include "hullwalk/limits.hpp"
#include "hullwalk/montecarlo.hpp"
#include "hullwalk/walkgen.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

namespace hullwalk::cli {

using nlohmann::json;

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

/// Writes to `path`, or to `fallback` when path is empty.
void emit(const std::string& path, const std::string& text, std::ostream& fallback) {
    if (path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw Error(ErrorCode::InvalidArgument, "failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json moments_json(const MomentSummary& m) {
    return {{"mu", {m.mu.x, m.mu.y}},
            {"sigma", {m.sigma.xx, m.sigma.xy, m.sigma.yy}},
            {"sigma2", m.sigma2},
            {"sigma2_mu", m.sigma2_mu},
            {"sigma2_perp", m.sigma2_perp},
            {"det_sigma", m.det_sigma},
            {"rho_cross", m.rho_cross},
            {"finite_variance", m.finite_variance}};
}

bool is_identity(const Mat2& s) { return s == Mat2::identity(); }

// --- simulate --------------------------------------------------------------

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    const IncrementModel model = parse_model(cfg.model);
    const CheckpointSchedule sched = CheckpointSchedule::parse(cfg.schedule);
    const MomentSummary m = moments(model);
    const auto rows = estimate(model, cfg.steps, sched, cfg.replicates, cfg.seed, {cfg.threads});

    std::ostringstream csv;
    csv << "# hullwalk simulate\n";
    csv << "# version=" << kVersion << "\n";
    csv << "# model=" << to_spec(model) << "\n";
    csv << "# steps=" << cfg.steps << "\n";
    csv << "# replicates=" << cfg.replicates << "\n";
    csv << "# seed=" << cfg.seed << "\n";
    csv << "# schedule=" << sched.to_spec() << "\n";
    if (!m.finite_variance) csv << "# heavy_tail=true\n";
    csv << "# generated=" << utc_timestamp() << "\n";
    csv << "n,mean_L,se_L,var_L,se_varL,mean_A,se_A,var_A,se_varA,mean_r\n";
    bool finite = true;
    for (const auto& r : rows) {
        const double values[] = {r.mean_L.value, r.mean_L.std_error, r.var_L.value, r.var_L.std_error,
                                 r.mean_A.value, r.mean_A.std_error, r.var_A.value, r.var_A.std_error,
                                 r.mean_r.value};
        csv << r.n;
        for (double v : values) {
            finite = finite && std::isfinite(v);
            csv << ',' << num(v);
        }
        csv << '\n';
    }
    emit(cfg.out, csv.str(), out);
    return finite ? kOk : kNumericFailure;
}

// --- limits ----------------------------------------------------------------

json limits_json(const IncrementModel& model, bool allow_heavy) {
    const MomentSummary m = moments(model);
    json j;
    j["model"] = to_spec(model);
    j["moments"] = moments_json(m);
    if (!m.finite_variance) {
        if (!allow_heavy) {
            throw Error(ErrorCode::InfiniteVariance,
                        "model '" + to_spec(model) + "' has infinite variance; pass --allow-heavy to continue");
        }
        j["heavy_tail"] = true;
        j["constants"] = json::object();
        if (m.has_drift()) j["constants"]["2norm_mu"] = 2.0 * norm(m.mu);
        j["bounds"] = json::object();
        return j;
    }
    for (const auto& c : limit_constants(m)) j["constants"][c.name] = c.value;
    const VarianceBounds b = variance_bounds(m.sigma2, is_identity(m.sigma));
    j["bounds"] = {{"u0_low", b.u0_low},       {"u0_high", b.u0_high},     {"v0_low", b.v0_low},
                   {"v0_high", b.v0_high},     {"vplus_low", b.vplus_low}, {"vplus_high", b.vplus_high},
                   {"u0_low_general", b.u0_low_general}};
    const NormExpectation e = expected_norm_gaussian(m.sigma);
    j["expected_norm_Y"] = {{"value", e.value}, {"lower", e.lower}, {"upper", e.upper}};
    return j;
}

// --- clt -------------------------------------------------------------------

int cmd_clt(const RunConfig& cfg, const std::string& hist_path, std::ostream& out) {
    cfg.validate();
    const IncrementModel model = parse_model(cfg.model);
    const CltResult r = clt_test(model, cfg.steps, cfg.replicates, cfg.seed, {cfg.threads});

    constexpr int kBins = 64;
    constexpr double kLo = -4.0;
    constexpr double kHi = 4.0;
    const double width = (kHi - kLo) / kBins;
    std::vector<std::uint64_t> counts(kBins, 0);
    for (double z : r.standardized) {
        if (z < kLo || z >= kHi) continue;
        counts[static_cast<std::size_t>((z - kLo) / width)]++;
    }
    if (!hist_path.empty()) {
        std::ostringstream csv;
        csv << "# hullwalk clt model=" << to_spec(model) << " steps=" << cfg.steps << " replicates=" << cfg.replicates
            << " seed=" << cfg.seed << "\n";
        csv << "bin_lo,bin_hi,count,density,normal_density\n";
        const double m = static_cast<double>(r.standardized.size());
        for (int i = 0; i < kBins; ++i) {
            const double lo = kLo + i * width;
            const double mid = lo + 0.5 * width;
            const double phi = std::exp(-0.5 * mid * mid) / std::sqrt(2.0 * std::numbers::pi);
            csv << num(lo) << ',' << num(lo + width) << ',' << counts[i] << ',' << num(counts[i] / (m * width)) << ','
                << num(phi) << '\n';
        }
        emit(hist_path, csv.str(), out);
    }
    const json j = {{"model", to_spec(model)}, {"n", cfg.steps},       {"replicates", cfg.replicates},
                    {"seed", cfg.seed},        {"D", r.D},             {"threshold", r.threshold},
                    {"pass", r.pass}};
    emit(cfg.out, j.dump(2) + "\n", out);
    return std::isfinite(r.D) ? kOk : kNumericFailure;
}

// --- constants -------------------------------------------------------------

json estimate_json(const ScalarEstimate& e, std::optional<double> theoretical = std::nullopt,
                   std::optional<double> low = std::nullopt, std::optional<double> high = std::nullopt) {
    json j = {{"estimate", e.value}, {"std_error", e.std_error}};
    if (theoretical) j["theoretical"] = *theoretical;
    if (low) j["bound_low"] = *low;
    if (high) j["bound_high"] = *high;
    return j;
}

int cmd_constants(std::size_t grid, std::uint64_t replicates, std::uint64_t seed, unsigned threads,
                  const std::string& path, std::ostream& out) {
    const BrownianEstimates e = brownian_constant_estimates(grid, replicates, seed, {threads});
    const VarianceBounds b = variance_bounds(2.0, true);
    const double rs = rogers_shepp_second_moment();
    json j;
    j["grid"] = grid;
    j["replicates"] = replicates;
    j["seed"] = seed;
    j["E_l1"] = estimate_json(e.E_l1, BrownianConstants::E_l1);
    j["Var_l1"] = estimate_json(e.Var_l1, rs - 8.0 * std::numbers::pi, b.u0_low, b.u0_high);
    j["E_a1"] = estimate_json(e.E_a1, BrownianConstants::E_a1);
    j["Var_a1"] = estimate_json(e.Var_a1, std::nullopt, b.v0_low, b.v0_high);
    j["E_atilde1"] = estimate_json(e.E_atilde1, BrownianConstants::E_atilde1);
    j["Var_atilde1"] = estimate_json(e.Var_atilde1, std::nullopt, b.vplus_low, b.vplus_high);
    j["E_r1_sq"] = estimate_json(e.E_r1_sq, BrownianConstants::E_range_sq);
    j["E_bridge_l1"] = estimate_json(e.E_bridge_l1);
    j["Var_bridge_l1"] = estimate_json(e.Var_bridge_l1, goldman_bridge_variance());
    j["quadrature"] = {{"E_l1_sq", rs}, {"goldman_bridge_variance", goldman_bridge_variance()}};
    emit(path, j.dump(2) + "\n", out);
    return std::isfinite(e.E_l1.value) ? kOk : kNumericFailure;
}

// --- exact -----------------------------------------------------------------

int cmd_exact(const std::string& model_spec, std::size_t steps, const std::string& path, std::ostream& out) {
    const IncrementModel model = parse_model(model_spec);
    const ExactMoments ex = enumerate_exact(model, steps);
    json j = {{"model", to_spec(model)}, {"steps", steps},     {"EL", ex.EL},
              {"VarL", ex.VarL},         {"EA", ex.EA},        {"VarA", ex.VarA}};
    if (steps >= 1) j["sw_EL"] = sw_expected_perimeter(exact_norm_means(model, steps));
    if (steps >= 2) {
        j["bnb_EA"] = bnb_expected_area(
            [&](std::size_t m, std::size_t k) { return exact_triangle_mean(model, m, k); }, steps);
    }
    try {
        const MartingaleCheck mc = martingale_decomposition_check(model, steps);
        j["mdiff_lhs"] = mc.lhs;
        j["mdiff_rhs"] = mc.rhs;
        const bool ok = std::abs(mc.lhs - mc.rhs) <= 1e-12 * std::max(1.0, std::abs(mc.lhs));
        j["mdiff_check"] = ok ? "ok" : "mismatch";
    } catch (const Error& e) {
        if (e.code() != ErrorCode::SupportTooLarge) throw;
        j["mdiff_check"] = "skipped";
    }
    emit(path, j.dump(2) + "\n", out);
    return kOk;
}

// --- report ----------------------------------------------------------------

struct CsvRow {
    double n = 0, mean_L = 0, se_L = 0, var_L = 0, se_varL = 0, mean_A = 0, se_A = 0, var_A = 0, se_varA = 0,
           mean_r = 0;
};

std::vector<CsvRow> parse_simulate_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    std::vector<CsvRow> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "n,mean_L,se_L,var_L,se_varL,mean_A,se_A,var_A,se_varA,mean_r") {
                throw Error(ErrorCode::ParseError, "unexpected CSV header: " + line);
            }
            header_seen = true;
            continue;
        }
        std::vector<double> v;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            try {
                std::size_t used = 0;
                v.push_back(std::stod(cell, &used));
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw Error(ErrorCode::ParseError, "bad CSV cell '" + cell + "'");
            }
        }
        if (v.size() != 10) throw Error(ErrorCode::ParseError, "CSV row needs 10 columns: " + line);
        rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9]});
    }
    if (rows.empty()) throw Error(ErrorCode::ParseError, "CSV has no data rows");
    return rows;
}

json report_json(const std::vector<LimitReport>& reports) {
    json arr = json::array();
    for (const auto& r : reports) {
        arr.push_back({{"quantity", r.quantity},
                       {"theoretical", opt(r.theoretical)},
                       {"bound_low", opt(r.bound_low)},
                       {"bound_high", opt(r.bound_high)},
                       {"estimate", r.estimate ? json(r.estimate->value) : json(nullptr)},
                       {"std_error", r.estimate ? json(r.estimate->std_error) : json(nullptr)},
                       {"verdict", std::string(to_string(r.verdict))}});
    }
    return arr;
}

int cmd_report(const std::string& csv_path, const std::string& limits_path, const std::string& out_path,
               std::ostream& out) {
    const auto rows = parse_simulate_csv(read_file(csv_path));
    json lim;
    try {
        lim = json::parse(read_file(limits_path));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("limits JSON: ") + e.what());
    }
    if (!lim.contains("constants") || !lim["constants"].is_object() || !lim.contains("moments")) {
        throw Error(ErrorCode::ParseError, "limits JSON lacks constants/moments");
    }
    const CsvRow& last = rows.back();
    const double n = last.n;
    if (!(n >= 1.0)) throw Error(ErrorCode::InvalidArgument, "report needs a final checkpoint n >= 1");

    std::vector<NamedValue> constants;
    std::vector<NamedBounds> bounds;
    std::vector<NamedEstimate> estimates;
    const json& c = lim["constants"];
    auto constant = [&](const char* name) -> std::optional<double> {
        if (c.contains(name) && c[name].is_number()) return c[name].get<double>();
        return std::nullopt;
    };
    auto bound = [&](const char* name) -> std::optional<double> {
        if (lim.contains("bounds") && lim["bounds"].contains(name) && lim["bounds"][name].is_number()) {
            return lim["bounds"][name].get<double>();
        }
        return std::nullopt;
    };
    auto add_constant = [&](const char* name, double est, double se) {
        if (auto v = constant(name)) {
            constants.push_back({name, *v});
            estimates.push_back({name, {est, se}});
        }
    };

    const double sn = std::sqrt(n);
    const bool drift = constant("2norm_mu").has_value();
    if (drift) {
        add_constant("2norm_mu", last.mean_L / n, last.se_L / n);
        add_constant("4sigma2_mu", last.var_L / n, last.se_varL / n);
        add_constant("area_drift_const", last.mean_A / (n * sn), last.se_A / (n * sn));
        const json& mom = lim["moments"];
        if (mom.contains("mu") && mom["mu"].is_array() && mom["mu"].size() == 2 && mom.contains("sigma2_perp") &&
            mom["sigma2_perp"].is_number()) {
            const double mx = mom["mu"][0].get<double>();
            const double my = mom["mu"][1].get<double>();
            const double scale = (mx * mx + my * my) * mom["sigma2_perp"].get<double>();
            if (auto lo = bound("vplus_low"), hi = bound("vplus_high"); lo && hi && scale > 0.0) {
                bounds.push_back({"varA_over_n3", *lo * scale, *hi * scale});
                estimates.push_back({"varA_over_n3", {last.var_A / (n * n * n), last.se_varA / (n * n * n)}});
            }
        }
    } else {
        add_constant("4E_norm_Y", last.mean_L / sn, last.se_L / sn);
        add_constant("pi_over_2_sqrt_det", last.mean_A / n, last.se_A / n);
        if (auto lo = bound("u0_low"), hi = bound("u0_high"); lo && hi) {
            bounds.push_back({"varL_over_n", lo, hi});
            estimates.push_back({"varL_over_n", {last.var_L / n, last.se_varL / n}});
        }
        const json& mom = lim["moments"];
        if (auto lo = bound("v0_low"), hi = bound("v0_high");
            lo && hi && mom.contains("det_sigma") && mom["det_sigma"].is_number()) {
            const double det = mom["det_sigma"].get<double>();
            bounds.push_back({"varA_over_n2", *lo * det, *hi * det});
            estimates.push_back({"varA_over_n2", {last.var_A / (n * n), last.se_varA / (n * n)}});
        }
    }
    if (auto ss = constant("ss_bound")) {
        bounds.push_back({"snyder_steele_varL_over_n", std::nullopt, *ss});
        estimates.push_back({"snyder_steele_varL_over_n", {last.var_L / n, last.se_varL / n}});
    }
    const auto reports = assemble_report(estimates, constants, bounds);
    emit(out_path, report_json(reports).dump(2) + "\n", out);
    return kOk;
}

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::NonFinite:
        case ErrorCode::NoConvergence:
            return kNumericFailure;
        default:
            return kConfigError;
    }
}

}  // namespace

void RunConfig::validate() const {
    parse_model(model);
    CheckpointSchedule::parse(schedule).resolve(steps);
    if (replicates < 1) throw Error(ErrorCode::InvalidReplicates, "replicates must be positive");
    const double work = static_cast<double>(steps) * static_cast<double>(replicates);
    if (!force && work > budget) {
        throw Error(ErrorCode::InvalidArgument, "steps * replicates = " + num(work) + " exceeds the budget " +
                                                    num(budget) + "; pass --force to run anyway");
    }
}

std::string RunConfig::to_json() const {
    const json j = {{"model", model},       {"steps", steps}, {"replicates", replicates}, {"seed", seed},
                    {"schedule", schedule}, {"out", out},     {"threads", threads},       {"force", force},
                    {"budget", budget}};
    return j.dump();
}

RunConfig RunConfig::from_json(std::string_view text) {
    try {
        const json j = json::parse(text);
        RunConfig c;
        c.model = j.at("model").get<std::string>();
        c.steps = j.at("steps").get<std::uint64_t>();
        c.replicates = j.at("replicates").get<std::uint64_t>();
        c.seed = j.at("seed").get<std::uint64_t>();
        c.schedule = j.at("schedule").get<std::string>();
        c.out = j.at("out").get<std::string>();
        c.threads = j.at("threads").get<unsigned>();
        c.force = j.at("force").get<bool>();
        c.budget = j.at("budget").get<double>();
        return c;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("run config: ") + e.what());
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Convex hulls of planar random walks: simulation and limit checks", "hullwalk"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    RunConfig sim;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates of E/Var of L_n, A_n and E r_n as CSV");
    simulate->add_option("--model", sim.model, "increment model")->required();
    simulate->add_option("--steps", sim.steps, "walk length n")->required();
    simulate->add_option("--replicates", sim.replicates, "number of independent walks");
    simulate->add_option("--seed", sim.seed, "master seed");
    simulate->add_option("--schedule", sim.schedule, "geom:start,ratio or list:n1,n2,...");
    simulate->add_option("--out", sim.out, "CSV output path (stdout if omitted)");
    simulate->add_option("--threads", sim.threads, "worker threads (0 = all)");
    simulate->add_option("--budget", sim.budget, "maximum steps*replicates without --force");
    simulate->add_flag("--force", sim.force, "ignore the budget guard");

    std::string lim_model;
    std::string lim_out;
    bool allow_heavy = false;
    auto* limits = app.add_subcommand("limits", "Limit constants and variance bounds for a model as JSON");
    limits->add_option("--model", lim_model, "increment model")->required();
    limits->add_option("--out", lim_out, "JSON output path (stdout if omitted)");
    limits->add_flag("--allow-heavy", allow_heavy, "accept infinite-variance models");

    RunConfig clt_cfg;
    clt_cfg.steps = 5000;
    clt_cfg.replicates = 10000;
    std::string hist_path;
    auto* clt = app.add_subcommand("clt", "KS test of the perimeter CLT for drifting walks");
    clt->add_option("--model", clt_cfg.model, "increment model")->required();
    clt->add_option("--steps", clt_cfg.steps, "walk length n");
    clt->add_option("--replicates", clt_cfg.replicates, "number of walks");
    clt->add_option("--seed", clt_cfg.seed, "master seed");
    clt->add_option("--threads", clt_cfg.threads, "worker threads (0 = all)");
    clt->add_option("--hist", hist_path, "histogram CSV path");
    clt->add_option("--out", clt_cfg.out, "verdict JSON path (stdout if omitted)");
    clt->add_flag("--force", clt_cfg.force, "ignore the budget guard");

    std::size_t grid = std::size_t{1} << 17;
    std::uint64_t const_reps = 2000;
    std::uint64_t const_seed = 7;
    unsigned const_threads = 0;
    std::string const_out;
    auto* constants = app.add_subcommand("constants", "Monte Carlo and quadrature Brownian hull constants");
    constants->add_option("--grid", grid, "time steps per unit interval");
    constants->add_option("--replicates", const_reps, "number of paths");
    constants->add_option("--seed", const_seed, "master seed");
    constants->add_option("--threads", const_threads, "worker threads (0 = all)");
    constants->add_option("--out", const_out, "JSON output path (stdout if omitted)");

    std::string exact_model;
    std::size_t exact_steps = 0;
    std::string exact_out;
    auto* exact = app.add_subcommand("exact", "Exact moments by enumeration plus identity checks");
    exact->add_option("--model", exact_model, "finite-support model")->required();
    exact->add_option("--steps", exact_steps, "walk length n")->required();
    exact->add_option("--out", exact_out, "JSON output path (stdout if omitted)");

    std::string rep_in;
    std::string rep_limits;
    std::string rep_out;
    auto* report = app.add_subcommand("report", "Compare a simulate CSV with a limits JSON");
    report->add_option("--in", rep_in, "CSV from simulate")->required();
    report->add_option("--limits", rep_limits, "JSON from limits")->required();
    report->add_option("--out", rep_out, "JSON output path (stdout if omitted)");

    std::vector<std::string> argv_store{"hullwalk"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(sim, out);
        if (limits->parsed()) {
            emit(lim_out, limits_json(parse_model(lim_model), allow_heavy).dump(2) + "\n", out);
            return kOk;
        }
        if (clt->parsed()) return cmd_clt(clt_cfg, hist_path, out);
        if (constants->parsed()) return cmd_constants(grid, const_reps, const_seed, const_threads, const_out, out);
        if (exact->parsed()) return cmd_exact(exact_model, exact_steps, exact_out, out);
        if (report->parsed()) return cmd_report(rep_in, rep_limits, rep_out, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return kConfigError;
}

}  // namespace hullwalk::cli
