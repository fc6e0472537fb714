// Command-line front end: every experiment behind one reproducible binary.
//
// Exit codes: 0 success, 2 invalid arguments, 3 numerical failure. Errors
// emit a one-line JSON diagnostic on stderr. All CSV output starts with a
// commented parameter echo (including a content hash of the effective
// configuration) so files are self-describing.

#include "CLI11.hpp"
#include "json.hpp"

#include "hopf/experiments.hpp"
#include "hopf/exponent.hpp"
#include "hopf/io.hpp"
#include "hopf/lyapunov.hpp"
#include "hopf/params.hpp"
#include "hopf/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

struct OutFile {
    std::ofstream file;
    std::ostream* os = &std::cout;

    explicit OutFile(const std::string& path) {
        if (!path.empty()) {
            file.open(path);
            if (!file)
                throw std::invalid_argument("cannot open output file: " +
                                            path);
            os = &file;
        }
    }
    std::ostream& stream() { return *os; }
};

using ParamEcho = std::map<std::string, std::string>;

void echo_comments(hopf::io::CsvWriter& csv, const ParamEcho& echo) {
    for (const auto& [k, v] : echo) csv.comment(k + " = " + v);
    csv.comment("config_hash = " + hopf::io::config_hash(echo));
}

json echo_json(const ParamEcho& echo) {
    json j;
    for (const auto& [k, v] : echo) j[k] = v;
    j["config_hash"] = hopf::io::config_hash(echo);
    return j;
}

std::string fmt(double v) { return hopf::io::format_g17(v); }

json estimate_json(const hopf::LyapunovEstimate& est) {
    json j;
    j["value"] = est.value;
    j["stderr"] = est.std_error;
    j["t_end"] = est.t_end;
    j["dt"] = est.dt;
    j["n_seeds"] = est.n_seeds;
    j["renorm_interval"] = est.renorm_interval;
    j["restarts"] = est.restarts;
    j["flagged"] = est.flagged;
    if (std::isfinite(est.min_radius)) j["min_radius"] = est.min_radius;
    j["per_seed"] = est.per_seed;
    return j;
}

void write_svg_scatter(const std::string& path, const std::vector<double>& xs,
                       const std::vector<double>& ys, double ref_radius) {
    std::ofstream svg(path);
    if (!svg)
        throw std::invalid_argument("cannot open svg file: " + path);
    double lim = 1.5 * ref_radius;
    for (std::size_t i = 0; i < xs.size(); ++i)
        lim = std::max({lim, std::abs(xs[i]), std::abs(ys[i])});
    const double s = 300.0 / lim;  // map [-lim, lim] to a 600px box
    auto px = [&](double v) { return 300.0 + s * v; };
    auto py = [&](double v) { return 300.0 - s * v; };
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='600' "
           "height='600' viewBox='0 0 600 600'>\n"
        << "<rect width='600' height='600' fill='white'/>\n"
        << "<circle cx='300' cy='300' r='" << s * ref_radius
        << "' fill='none' stroke='#999' stroke-dasharray='4 3'/>\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
        svg << "<circle cx='" << px(xs[i]) << "' cy='" << py(ys[i])
            << "' r='0.8' fill='#14466e' fill-opacity='0.5'/>\n";
    svg << "</svg>\n";
}

void write_svg_polyline(const std::string& path,
                        const std::vector<std::vector<double>>& xs,
                        const std::vector<std::vector<double>>& ys) {
    std::ofstream svg(path);
    if (!svg)
        throw std::invalid_argument("cannot open svg file: " + path);
    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (std::size_t c = 0; c < xs.size(); ++c)
        for (std::size_t i = 0; i < xs[c].size(); ++i) {
            xlo = std::min(xlo, xs[c][i]);
            xhi = std::max(xhi, xs[c][i]);
            ylo = std::min(ylo, ys[c][i]);
            yhi = std::max(yhi, ys[c][i]);
        }
    if (!(xhi > xlo)) xhi = xlo + 1.0;
    if (!(yhi > ylo)) yhi = ylo + 1.0;
    auto px = [&](double v) { return 40.0 + 520.0 * (v - xlo) / (xhi - xlo); };
    auto py = [&](double v) { return 560.0 - 520.0 * (v - ylo) / (yhi - ylo); };
    const char* colors[] = {"#14466e", "#b0413e", "#3d8361", "#8d6b94"};
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='600' "
           "height='600' viewBox='0 0 600 600'>\n"
        << "<rect width='600' height='600' fill='white'/>\n";
    for (std::size_t c = 0; c < xs.size(); ++c) {
        svg << "<polyline fill='none' stroke='" << colors[c % 4]
            << "' stroke-width='1' points='";
        for (std::size_t i = 0; i < xs[c].size(); ++i)
            svg << px(xs[c][i]) << "," << py(ys[c][i]) << " ";
        svg << "'/>\n";
    }
    svg << "</svg>\n";
}

// common option bundle; each subcommand registers the flags it honors
struct Opts {
    double alpha = 1.0, beta = 1.0, a = 1.0;
    double b_prime = 1.0, sigma_prime = 1.0, epsilon = 0.1;
    double dt = 1e-3, t_end = 1000.0;
    std::uint64_t seed = 1;
    std::size_t samples = 50000;
    int n_seeds = 8;
    std::string out, format = "csv", svg, init = "stationary";
    double zeta_max = 10.0;
    int points = 200;
    std::string epsilons = "0.5,0.25,0.1";
};

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size())
            throw std::invalid_argument("bad number in list: " + tok);
        vals.push_back(v);
    }
    if (vals.empty()) throw std::invalid_argument("empty number list");
    return vals;
}

int cmd_psi_curve(const Opts& o) {
    if (o.points < 2 || !(o.zeta_max > 0.0))
        throw std::invalid_argument("psi-curve needs points >= 2, zeta-max > 0");
    std::vector<double> grid(o.points);
    for (int i = 0; i < o.points; ++i)
        grid[i] = o.zeta_max * (i + 1) / static_cast<double>(o.points);
    const auto curve = hopf::psi_curve(grid);

    ParamEcho echo{{"subcommand", "psi-curve"},
                   {"points", std::to_string(o.points)},
                   {"zeta_max", fmt(o.zeta_max)}};
    OutFile outf(o.out);
    if (o.format == "json") {
        json j;
        j["params"] = echo_json(echo);
        json rows = json::array();
        for (const auto& p : curve)
            rows.push_back({{"zeta", p.zeta},
                            {"psi", p.value},
                            {"err", p.err_bound}});
        j["curve"] = rows;
        outf.stream() << j.dump(2) << "\n";
    } else {
        hopf::io::CsvWriter csv(outf.stream());
        echo_comments(csv, echo);
        csv.header({"zeta", "psi", "err"});
        for (const auto& p : curve) csv.row({p.zeta, p.value, p.err_bound});
    }
    if (!o.svg.empty()) {
        std::vector<double> xs, ys;
        for (const auto& p : curve) {
            xs.push_back(p.zeta);
            ys.push_back(p.value);
        }
        write_svg_polyline(o.svg, {xs}, {ys});
    }
    return 0;
}

int cmd_c0(const Opts& o) {
    const hopf::ThresholdResult res = hopf::chaos_threshold_detailed();
    json j;
    j["c0"] = res.value;
    j["psi_at_c0"] = res.exponent_at_root;
    j["bracket"] = {res.bracket_lo, res.bracket_hi};
    j["iterations"] = res.iterations;
    OutFile outf(o.out);
    outf.stream() << j.dump(2) << "\n";
    return 0;
}

int cmd_trajectories(const Opts& o) {
    // the two reference runs of the simplified model: same noise, shear
    // and dissipation fixed, noise level 1 then 2
    const double t_end = o.t_end;
    OutFile outf(o.out);
    hopf::io::CsvWriter csv(outf.stream());
    std::vector<std::vector<double>> sx, sy;
    for (int run = 0; run < 2; ++run) {
        const hopf::SimplifiedParams p{1.0, 1.0, run == 0 ? 1.0 : 2.0};
        ParamEcho echo{{"subcommand", "trajectories"},
                       {"run", std::to_string(run + 1)},
                       {"alpha_hat", fmt(p.alpha_hat)},
                       {"b_hat", fmt(p.b_hat)},
                       {"sigma_hat", fmt(p.sigma_hat)},
                       {"s0", fmt(0.0)},
                       {"theta0", fmt(1.0)},
                       {"t_end", fmt(t_end)},
                       {"dt", fmt(o.dt)},
                       {"seed", std::to_string(o.seed)}};
        echo_comments(csv, echo);
        csv.header({"t", "s", "theta"});
        const hopf::PathSample path =
            hopf::simulate_hat_path(p, 0.0, 1.0, t_end, o.dt, o.seed);
        for (std::size_t i = 0; i < path.t.size(); ++i)
            csv.row({path.t[i], path.s[i], path.theta[i]});
        sx.push_back(path.t);
        sy.push_back(path.theta);
    }
    if (!o.svg.empty()) write_svg_polyline(o.svg, sx, sy);
    return 0;
}

int cmd_attractor(const Opts& o) {
    hopf::AttractorInit init = hopf::AttractorInit::stationary;
    double t0 = 100.0;
    if (o.init.rfind("burnin", 0) == 0) {
        init = hopf::AttractorInit::burnin;
        const auto comma = o.init.find(',');
        if (comma != std::string::npos) {
            const std::string rest = o.init.substr(comma + 1);
            if (rest.rfind("T0=", 0) != 0)
                throw std::invalid_argument(
                    "init syntax: stationary | burnin[,T0=<time>]");
            t0 = std::stod(rest.substr(3));
        }
    } else if (o.init != "stationary") {
        throw std::invalid_argument(
            "init syntax: stationary | burnin[,T0=<time>]");
    }

    const hopf::ScaledHopfParams sp{
        o.alpha, o.beta, o.a, {o.b_prime, o.sigma_prime, o.epsilon}};
    const hopf::HopfParams p = sp.physical();
    const hopf::AttractorResult res = hopf::attractor_cloud(
        p, o.samples, o.t_end, o.dt, o.seed, init, t0);

    ParamEcho echo{{"subcommand", "attractor"},
                   {"alpha", fmt(p.alpha)},
                   {"beta", fmt(p.beta)},
                   {"a", fmt(p.a)},
                   {"b", fmt(p.b)},
                   {"sigma", fmt(p.sigma)},
                   {"samples", std::to_string(o.samples)},
                   {"t_end", fmt(o.t_end)},
                   {"dt", fmt(o.dt)},
                   {"seed", std::to_string(o.seed)},
                   {"init", o.init},
                   {"r_hat", fmt(res.r_hat)}};

    OutFile outf(o.out);
    if (o.format == "json") {
        json j;
        j["params"] = echo_json(echo);
        j["diameter"] = res.diameter;
        j["frozen"] = res.frozen;
        j["collapsed"] = res.collapsed;
        j["r_hat"] = res.r_hat;
        json pts = json::array();
        for (std::size_t i = 0; i < res.z1.size(); ++i)
            pts.push_back({res.z1[i], res.z2[i]});
        j["points"] = pts;
        outf.stream() << j.dump() << "\n";
    } else {
        hopf::io::CsvWriter csv(outf.stream());
        echo_comments(csv, echo);
        csv.comment("diameter = " + fmt(res.diameter));
        csv.comment("frozen = " + std::to_string(res.frozen));
        csv.header({"z1", "z2"});
        for (std::size_t i = 0; i < res.z1.size(); ++i)
            csv.row({res.z1[i], res.z2[i]});
    }
    if (!o.svg.empty()) write_svg_scatter(o.svg, res.z1, res.z2, res.r_hat);
    return 0;
}

int cmd_stationary(const Opts& o) {
    const hopf::SimplifiedParams hat =
        hopf::to_hat_params(o.alpha, o.a, o.b_prime, o.sigma_prime);
    const hopf::Histogram ref = hopf::empirical_angle_measure(
        hat, o.t_end, 10.0, o.dt, o.seed + 1000);

    hopf::WeakConvergenceConfig cfg;
    cfg.t_end = o.t_end;
    cfg.dt = o.dt;
    cfg.n_seeds = o.n_seeds;
    cfg.seed = o.seed;
    const auto rows = hopf::weak_convergence_diagnostic(
        o.alpha, o.a, o.b_prime, o.sigma_prime, {o.epsilon}, ref, cfg);
    const hopf::WeakConvergenceRow& row = rows.front();

    ParamEcho echo{{"subcommand", "stationary"},
                   {"alpha", fmt(o.alpha)},
                   {"a", fmt(o.a)},
                   {"b_prime", fmt(o.b_prime)},
                   {"sigma_prime", fmt(o.sigma_prime)},
                   {"epsilon", fmt(o.epsilon)},
                   {"t_end", fmt(o.t_end)},
                   {"dt", fmt(o.dt)},
                   {"n_seeds", std::to_string(o.n_seeds)},
                   {"seed", std::to_string(o.seed)}};

    json summary;
    summary["epsilon"] = row.eps;
    summary["w1_r"] = row.w1_r;
    summary["tv_psi"] = row.tv_psi;
    summary["mode_r"] = row.mode_r;
    summary["mean_r"] = row.mean_r;
    summary["stderr_mean_r"] = row.stderr_mean_r;
    summary["restarts"] = row.restarts;
    summary["params"] = echo_json(echo);

    OutFile outf(o.out);
    if (o.format == "json") {
        json j = summary;
        json rh = json::array(), ph = json::array();
        for (std::size_t i = 0; i < row.r_hist.bins(); ++i)
            rh.push_back({row.r_hist.edges[i], row.r_hist.edges[i + 1],
                          row.r_hist.weight[i]});
        for (std::size_t i = 0; i < row.psi_hist.bins(); ++i)
            ph.push_back({row.psi_hist.edges[i], row.psi_hist.edges[i + 1],
                          row.psi_hist.weight[i]});
        j["r_histogram"] = rh;
        j["psi_histogram"] = ph;
        outf.stream() << j.dump(2) << "\n";
    } else {
        hopf::io::CsvWriter csv(outf.stream());
        echo_comments(csv, echo);
        csv.header({"kind", "bin_lo", "bin_hi", "weight"});
        for (std::size_t i = 0; i < row.r_hist.bins(); ++i)
            outf.stream() << "r," << fmt(row.r_hist.edges[i]) << ","
                          << fmt(row.r_hist.edges[i + 1]) << ","
                          << fmt(row.r_hist.weight[i]) << "\n";
        for (std::size_t i = 0; i < row.psi_hist.bins(); ++i)
            outf.stream() << "psi," << fmt(row.psi_hist.edges[i]) << ","
                          << fmt(row.psi_hist.edges[i + 1]) << ","
                          << fmt(row.psi_hist.weight[i]) << "\n";
        // the machine-readable summary goes to stdout alongside the file
        std::cout << summary.dump() << "\n";
    }
    return 0;
}

int cmd_fk_check(const Opts& o) {
    hopf::EstimatorConfig cfg;
    cfg.t_end = o.t_end;
    cfg.dt = o.dt;
    cfg.n_seeds = o.n_seeds;
    cfg.seed = o.seed;
    const hopf::BlendedDecomposition dec = hopf::blended_decomposition(
        o.alpha, o.a, o.b_prime, o.sigma_prime, o.epsilon, cfg);

    json j;
    j["epsilon"] = dec.eps;
    j["term_I"] = dec.drift_full_mean;
    j["term_II"] = dec.drift_tilde_mean;
    j["term_III"] = dec.cutoff_drift_mean;
    j["term_IV"] = dec.noise_full_mean;
    j["term_V"] = dec.cutoff_noise_mean;
    j["stderrs"] = {dec.drift_full_se, dec.drift_tilde_se,
                    dec.cutoff_drift_se, dec.noise_full_se,
                    dec.cutoff_noise_se};
    j["norm_growth"] = dec.norm_growth_mean;
    j["norm_growth_stderr"] = dec.norm_growth_se;
    j["residual"] = dec.residual_mean;
    j["restarts"] = dec.restarts;
    j["T"] = dec.t_end;
    j["dt"] = dec.dt;
    j["seeds"] = dec.n_seeds;
    ParamEcho echo{{"subcommand", "fk-check"},
                   {"alpha", fmt(o.alpha)},
                   {"a", fmt(o.a)},
                   {"b_prime", fmt(o.b_prime)},
                   {"sigma_prime", fmt(o.sigma_prime)},
                   {"epsilon", fmt(o.epsilon)},
                   {"t_end", fmt(o.t_end)},
                   {"dt", fmt(o.dt)},
                   {"n_seeds", std::to_string(o.n_seeds)},
                   {"seed", std::to_string(o.seed)}};
    j["params"] = echo_json(echo);
    OutFile outf(o.out);
    outf.stream() << j.dump(2) << "\n";
    return 0;
}

int cmd_lyapunov(const Opts& o, const std::string& model) {
    hopf::EstimatorConfig cfg;
    cfg.t_end = o.t_end;
    cfg.dt = o.dt;
    cfg.n_seeds = o.n_seeds;
    cfg.seed = o.seed;

    hopf::LyapunovEstimate est;
    json extra;
    if (model == "hat") {
        const hopf::SimplifiedParams hat =
            hopf::to_hat_params(o.alpha, o.a, o.b_prime, o.sigma_prime);
        est = hopf::le_norm_growth_simplified(hat, cfg);
        extra["zeta"] = hat.zeta();
        extra["closed_form"] = hopf::simplified_lyapunov(hat);
    } else if (model == "rescaled") {
        est = hopf::le_norm_growth_rescaled(o.alpha, o.a, o.b_prime,
                                            o.sigma_prime, o.epsilon, cfg);
        extra["limit"] =
            2.0 * o.alpha *
            hopf::normalized_exponent(hopf::effective_zeta(
                o.alpha, o.a, o.b_prime, o.sigma_prime));
    } else if (model == "cartesian") {
        const hopf::ScaledHopfParams sp{
            o.alpha, o.beta, o.a, {o.b_prime, o.sigma_prime, o.epsilon}};
        est = hopf::le_norm_growth_cartesian(sp.physical(), cfg);
    } else if (model == "fk-hat") {
        const hopf::SimplifiedParams hat =
            hopf::to_hat_params(o.alpha, o.a, o.b_prime, o.sigma_prime);
        est = hopf::le_fk_hat(hat, cfg);
        extra["zeta"] = hat.zeta();
        extra["closed_form"] = hopf::simplified_lyapunov(hat);
    } else {
        throw std::invalid_argument(
            "model must be hat | rescaled | cartesian | fk-hat");
    }

    json j = estimate_json(est);
    j["model"] = model;
    for (auto& [k, v] : extra.items()) j[k] = v;
    ParamEcho echo{{"subcommand", "lyapunov"},
                   {"model", model},
                   {"alpha", fmt(o.alpha)},
                   {"beta", fmt(o.beta)},
                   {"a", fmt(o.a)},
                   {"b_prime", fmt(o.b_prime)},
                   {"sigma_prime", fmt(o.sigma_prime)},
                   {"epsilon", fmt(o.epsilon)},
                   {"t_end", fmt(o.t_end)},
                   {"dt", fmt(o.dt)},
                   {"n_seeds", std::to_string(o.n_seeds)},
                   {"seed", std::to_string(o.seed)}};
    j["params"] = echo_json(echo);
    OutFile outf(o.out);
    outf.stream() << j.dump(2) << "\n";
    return 0;
}

int cmd_sweep_epsilon(const Opts& o) {
    const std::vector<double> grid = parse_double_list(o.epsilons);
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] < grid[i - 1]))
            throw std::invalid_argument("epsilon grid must be descending");
    for (double e : grid)
        if (!(e > 0.0 && e <= 1.0))
            throw std::invalid_argument("epsilon values must be in (0, 1]");

    hopf::EstimatorConfig cfg;
    cfg.t_end = o.t_end;
    cfg.dt = o.dt;
    cfg.n_seeds = o.n_seeds;
    cfg.seed = o.seed;
    const hopf::SweepResult res = hopf::epsilon_sweep(
        o.alpha, o.beta, o.a, o.b_prime, o.sigma_prime, grid, cfg);

    ParamEcho echo{{"subcommand", "sweep-epsilon"},
                   {"alpha", fmt(o.alpha)},
                   {"beta", fmt(o.beta)},
                   {"a", fmt(o.a)},
                   {"b_prime", fmt(o.b_prime)},
                   {"sigma_prime", fmt(o.sigma_prime)},
                   {"epsilons", o.epsilons},
                   {"t_end", fmt(o.t_end)},
                   {"dt", fmt(o.dt)},
                   {"n_seeds", std::to_string(o.n_seeds)},
                   {"seed", std::to_string(o.seed)}};

    OutFile outf(o.out);
    if (o.format == "json") {
        json j;
        j["params"] = echo_json(echo);
        j["limit"] = res.limit;
        j["effective_zeta"] = res.effective_zeta;
        json rows = json::array();
        for (const auto& r : res.rows) {
            json jr{{"epsilon", r.eps},      {"lambda", r.lambda},
                    {"stderr", r.std_error}, {"limit", res.limit},
                    {"gap", r.gap},          {"restarts", r.restarts},
                    {"flagged", r.flagged},  {"min_radius", r.min_radius},
                    {"r_floor", r.r_floor}};
            if (std::isfinite(r.lambda_coarse_floor))
                jr["lambda_coarse_floor"] = r.lambda_coarse_floor;
            rows.push_back(jr);
        }
        j["rows"] = rows;
        outf.stream() << j.dump(2) << "\n";
    } else {
        hopf::io::CsvWriter csv(outf.stream());
        echo_comments(csv, echo);
        csv.comment("limit = " + fmt(res.limit) +
                    " (quadrature value approached as epsilon -> 0)");
        csv.comment("effective_zeta = " + fmt(res.effective_zeta));
        for (const auto& r : res.rows) {
            csv.comment("epsilon " + fmt(r.eps) + ": r_floor = " +
                        fmt(r.r_floor) + ", min_radius = " +
                        fmt(r.min_radius) +
                        (std::isfinite(r.lambda_coarse_floor)
                             ? ", lambda at 10x floor = " +
                                   fmt(r.lambda_coarse_floor)
                             : ", floor never approached (sensitivity nil)"));
        }
        csv.header({"epsilon", "lambda", "stderr", "limit", "gap",
                    "restarts"});
        for (const auto& r : res.rows)
            csv.row({r.eps, r.lambda, r.std_error, res.limit, r.gap,
                     static_cast<double>(r.restarts)});
    }
    return 0;
}

// Flat key=value config support: strip --config from the raw arguments,
// load the file, and append "--key=value" for every key not already given
// explicitly. Later CLI11 parsing then gives command-line flags precedence
// for free, and unknown keys fail loudly as unrecognized options.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config_path;
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size())
                throw std::invalid_argument("--config needs a file path");
            config_path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
        } else {
            kept.push_back(args[i]);
        }
    }
    if (config_path.empty()) return kept;

    const auto kv = hopf::io::parse_config_file(config_path);
    for (const auto& [key, value] : kv) {
        const std::string flag = "--" + key;
        bool given = false;
        for (const auto& arg : kept)
            if (arg == flag || arg.rfind(flag + "=", 0) == 0) {
                given = true;
                break;
            }
        if (!given) kept.push_back(flag + "=" + value);
    }
    return kept;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Noisy Hopf normal form: shear-induced chaos toolkit"};
    app.require_subcommand(1);

    Opts o;
    std::string model = "rescaled";
    std::string config_doc;  // registered per subcommand for --help only

    auto add_physics = [&](CLI::App* c) {
        c->add_option("--alpha", o.alpha, "linear instability")
            ->capture_default_str();
        c->add_option("--beta", o.beta, "rotation rate")
            ->capture_default_str();
        c->add_option("--a", o.a, "cubic damping")->capture_default_str();
        c->add_option("--b-prime", o.b_prime, "rescaled shear b' (b = b'/eps)")
            ->capture_default_str();
        c->add_option("--sigma-prime", o.sigma_prime,
                      "rescaled noise sigma' (sigma = eps sigma')")
            ->capture_default_str();
        c->add_option("--epsilon", o.epsilon, "scale parameter in (0, 1]")
            ->capture_default_str();
    };
    auto add_run = [&](CLI::App* c) {
        c->add_option("--seed", o.seed, "base RNG seed")
            ->capture_default_str();
        c->add_option("--dt", o.dt, "integrator step")->capture_default_str();
        c->add_option("--t-end", o.t_end, "simulated time")
            ->capture_default_str();
        c->add_option("--n-seeds", o.n_seeds, "independent seeds")
            ->capture_default_str();
    };
    auto add_config = [&](CLI::App* c) {
        c->add_option("--config", config_doc,
                      "flat key=value file; explicit flags take precedence");
    };
    auto add_out = [&](CLI::App* c) {
        c->add_option("--out", o.out, "output path (default stdout)");
        c->add_option("--format", o.format, "csv | json")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        c->add_option("--svg", o.svg, "also render an SVG to this path");
        add_config(c);
    };

    CLI::App* c_psi = app.add_subcommand(
        "psi-curve", "normalized exponent over a shear-ratio grid");
    c_psi->add_option("--points", o.points, "grid size")
        ->capture_default_str();
    c_psi->add_option("--zeta-max", o.zeta_max, "grid upper end")
        ->capture_default_str();
    add_out(c_psi);

    CLI::App* c_c0 = app.add_subcommand(
        "c0", "unique zero of the normalized exponent");
    c_c0->add_option("--out", o.out, "output path (default stdout)");
    add_config(c_c0);

    CLI::App* c_traj = app.add_subcommand(
        "trajectories", "two reference simplified-model paths from (0, 1)");
    c_traj->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
    c_traj->add_option("--dt", o.dt, "integrator step")
        ->capture_default_str();
    c_traj->add_option("--t-end", o.t_end, "simulated time")
        ->default_str("10");
    add_out(c_traj);

    CLI::App* c_att = app.add_subcommand(
        "attractor", "common-noise ensemble snapshot of the planar process");
    add_physics(c_att);
    c_att->get_option("--b-prime")->default_str("-10");
    c_att->get_option("--epsilon")->default_str("1");
    c_att->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
    c_att->add_option("--dt", o.dt, "integrator step")->default_str("0.002");
    c_att->add_option("--t-end", o.t_end, "simulated time")
        ->default_str("500");
    c_att->add_option("--samples", o.samples, "ensemble size")
        ->capture_default_str();
    c_att->add_option("--init", o.init,
                      "stationary | burnin[,T0=<time>] initialization")
        ->capture_default_str();
    add_out(c_att);

    CLI::App* c_stat = app.add_subcommand(
        "stationary", "stationary-measure histograms and weak-limit summary");
    add_physics(c_stat);
    add_run(c_stat);
    add_out(c_stat);

    CLI::App* c_fk = app.add_subcommand(
        "fk-check", "five-term blended log-norm decomposition");
    add_physics(c_fk);
    add_run(c_fk);
    c_fk->get_option("--t-end")->default_str("10000");
    c_fk->get_option("--dt")->default_str("0.0005");
    c_fk->add_option("--out", o.out, "output path (default stdout)");
    add_config(c_fk);

    CLI::App* c_lyap = app.add_subcommand(
        "lyapunov", "top Lyapunov exponent estimate");
    add_physics(c_lyap);
    add_run(c_lyap);
    c_lyap->add_option("--model", model,
                       "hat | rescaled | cartesian | fk-hat")
        ->capture_default_str();
    c_lyap->add_option("--out", o.out, "output path (default stdout)");
    add_config(c_lyap);

    CLI::App* c_sweep = app.add_subcommand(
        "sweep-epsilon", "Lyapunov estimates along a descending epsilon grid");
    add_physics(c_sweep);
    add_run(c_sweep);
    c_sweep->add_option("--epsilons", o.epsilons,
                        "comma-separated descending grid")
        ->capture_default_str();
    c_sweep->get_option("--n-seeds")->default_str("16");
    add_out(c_sweep);

    try {
        std::vector<std::string> args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());  // CLI11 wants reversed args
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << nlohmann::json{{"error", e.what()}, {"code", 2}}.dump()
                  << "\n";
        return 2;
    } catch (const std::exception& e) {  // config file problems
        std::cerr << nlohmann::json{{"error", e.what()}, {"code", 2}}.dump()
                  << "\n";
        return 2;
    }

    // defaults that differ per subcommand; variables are shared, so apply
    // only when the active subcommand did not receive the flag
    if (*c_traj && !c_traj->count("--t-end")) o.t_end = 10.0;
    if (*c_att) {
        if (!c_att->count("--b-prime")) o.b_prime = -10.0;
        if (!c_att->count("--epsilon")) o.epsilon = 1.0;
        if (!c_att->count("--dt")) o.dt = 2e-3;
        if (!c_att->count("--t-end")) o.t_end = 500.0;
    }
    if (*c_fk) {
        if (!c_fk->count("--t-end")) o.t_end = 1e4;
        if (!c_fk->count("--dt")) o.dt = 5e-4;
    }
    if (*c_sweep && !c_sweep->count("--n-seeds")) o.n_seeds = 16;

    try {
        if (*c_psi) return cmd_psi_curve(o);
        if (*c_c0) return cmd_c0(o);
        if (*c_traj) return cmd_trajectories(o);
        if (*c_att) return cmd_attractor(o);
        if (*c_stat) return cmd_stationary(o);
        if (*c_fk) return cmd_fk_check(o);
        if (*c_lyap) return cmd_lyapunov(o, model);
        if (*c_sweep) return cmd_sweep_epsilon(o);
        std::cerr << nlohmann::json{{"error", "no subcommand"}, {"code", 2}}
                         .dump()
                  << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << nlohmann::json{{"error", e.what()}, {"code", 2}}.dump()
                  << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << nlohmann::json{{"error", e.what()}, {"code", 2}}.dump()
                  << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"error", e.what()}, {"code", 3}}.dump()
                  << "\n";
        return 3;
    }
}
