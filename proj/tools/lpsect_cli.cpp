// Command-line front end: parse an experiment spec, dispatch to the library,
// and emit machine-readable reports (JSON records, CSV check tables).
//
// Exit codes: 0 success, 1 failed checks (or a non-converged solve),
// 2 usage error (bad flags, bad files, violated preconditions).

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpsect/exact.hpp"
#include "lpsect/gaussian.hpp"
#include "lpsect/lewis.hpp"
#include "lpsect/meanwidth.hpp"
#include "lpsect/parse.hpp"
#include "lpsect/projection.hpp"
#include "lpsect/section.hpp"
#include "lpsect/spaces.hpp"
#include "lpsect/subspace.hpp"
#include "lpsect/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

namespace {

using lpsect::Estimate;
using lpsect::MCConfig;
using lpsect::Space;
using lpsect::Subspace;
using lpsect::Vec;
using json = nlohmann::ordered_json;

// Config files are JSON objects whose keys mirror the long flag names;
// values given on the command line take precedence over file values. The
// file is expanded into extra argv flags before parsing, skipping any key
// already present, so every value passes through the normal validators.
std::vector<std::string> expand_config_args(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    std::string path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            break;
        }
    }
    if (path.empty()) return args;

    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    const nlohmann::json doc = nlohmann::json::parse(in);
    if (!doc.is_object()) throw std::runtime_error("config file must be a JSON object");

    auto given = [&args](const std::string& flag) {
        for (std::size_t i = 1; i < args.size(); ++i)
            if (args[i] == flag || args[i].rfind(flag + "=", 0) == 0) return true;
        return false;
    };
    for (const auto& [key, value] : doc.items()) {
        if (key == "config") continue;
        const std::string flag = "--" + key;
        if (given(flag)) continue;
        std::string sval;
        if (value.is_string())
            sval = value.get<std::string>();
        else if (value.is_boolean())
            sval = value.get<bool>() ? "true" : "false";
        else
            sval = value.dump();
        args.push_back(flag);
        args.push_back(std::move(sval));
    }
    return args;
}

int env_workers() {
    if (const char* s = std::getenv("LPSECT_WORKERS")) {
        const int w = std::atoi(s);
        if (w >= 1) return w;
    }
    return 1;
}

// All output is assembled in memory first and written through a temp file,
// so a failed run never leaves a partial output file behind.
void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open output file: " + tmp);
        os << content;
        if (!os.flush()) {
            std::remove(tmp.c_str());
            throw std::runtime_error("write failed: " + tmp);
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot rename output into place: " + path);
    }
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        atomic_write(out_path, content);
}

json estimate_json(const Estimate& e, json params) {
    json rec;
    rec["value"] = e.value;
    rec["std_error"] = e.std_error;
    rec["samples"] = e.samples;
    rec["seed"] = e.seed;
    rec["params"] = std::move(params);
    return rec;
}

std::vector<double> parse_csv_doubles(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string(what) + ": bad number '" + tok + "'");
        }
        if (pos != tok.size()) throw std::invalid_argument(std::string(what) + ": bad number '" + tok + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
    return out;
}

// Ensemble mini-grammar for the determinant lab:
//   wishart:m=<int>[,ridge=<real>]   GG^T/m + ridge*I with G an m x m Gaussian
//   diaguniform:m=<int>,lo=<real>,hi=<real>   diagonal with iid U[lo,hi] entries
lpsect::PSDSampler parse_ensemble(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon == std::string::npos ? spec.size() : colon);
    std::map<std::string, double> kv;
    if (colon != std::string::npos) {
        std::stringstream ss(spec.substr(colon + 1));
        std::string field;
        while (std::getline(ss, field, ',')) {
            const auto eq = field.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("ensemble: field '" + field + "' is not key=value");
            std::size_t pos = 0;
            const std::string val = field.substr(eq + 1);
            double v = 0.0;
            try {
                v = std::stod(val, &pos);
            } catch (const std::exception&) {
                throw std::invalid_argument("ensemble: bad number '" + val + "'");
            }
            if (pos != val.size()) throw std::invalid_argument("ensemble: bad number '" + val + "'");
            kv[field.substr(0, eq)] = v;
        }
    }
    auto need = [&kv](const char* key) {
        auto it = kv.find(key);
        if (it == kv.end()) throw std::invalid_argument(std::string("ensemble: missing field '") + key + "'");
        return it->second;
    };
    if (head == "wishart") {
        const double m = need("m");
        if (m != static_cast<int>(m) || m < 1) throw std::invalid_argument("ensemble: m must be a positive integer");
        const double ridge = kv.count("ridge") ? kv["ridge"] : 0.1;
        return lpsect::PSDSampler::wishart_like(static_cast<int>(m), ridge);
    }
    if (head == "diaguniform") {
        const double m = need("m");
        if (m != static_cast<int>(m) || m < 1) throw std::invalid_argument("ensemble: m must be a positive integer");
        return lpsect::PSDSampler::diagonal_uniform(static_cast<int>(m), need("lo"), need("hi"));
    }
    throw std::invalid_argument("ensemble: unknown kind '" + head + "' (expected wishart or diaguniform)");
}

// Shared Monte Carlo flags.
struct McOpts {
    std::uint64_t samples = 100000;
    std::uint64_t seed = 0;
    std::uint32_t chunk = 65536;
    int workers = env_workers();

    MCConfig config() const {
        if (workers < 1) throw std::invalid_argument("workers must be >= 1");
        if (chunk < 1) throw std::invalid_argument("chunk must be >= 1");
        return MCConfig{samples, seed, chunk, workers};
    }

    void add_flags(CLI::App* sub) {
        sub->add_option("--samples", samples, "Monte Carlo sample count")->capture_default_str();
        sub->add_option("--seed", seed, "random stream seed")->capture_default_str();
        sub->add_option("--chunk", chunk, "samples per reduction chunk (part of the reproducibility contract)")
            ->capture_default_str();
        sub->add_option("--workers", workers, "worker threads (default: LPSECT_WORKERS or 1)");
    }
};

void add_config_flag(CLI::App* sub, std::string& path) {
    sub->add_option("--config", path, "JSON config file; keys mirror the long flag names, flags override");
}

std::string dump(const json& rec) { return rec.dump(2) + "\n"; }

// volume: exact unit-ball volume of a composable space, with the formula used.
struct VolumeCmd {
    std::string space;
    std::string out;

    int run() const {
        const Space X = lpsect::parse_space(space);
        const auto v = lpsect::space_ball_volume(X);
        if (!v)
            throw std::invalid_argument("no closed-form volume for '" + X.describe() +
                                        "' (discrete-measure norms and q<1 powers have none)");
        json rec;
        rec["value"] = v->value;
        rec["log_value"] = v->log_value;
        rec["expression"] = v->expression;
        rec["space"] = X.describe();
        emit(out, dump(rec));
        return 0;
    }
};

// section: |B_p^n(X) cap E| for a block hyperplane (--theta) or a general
// subspace (--subspace-file, orthonormal rows).
struct SectionCmd {
    std::string space;
    double p = 0.0;
    int n = 0;
    std::string theta;
    std::string subspace_file;
    McOpts mc;
    std::string out;

    int run() const {
        const Space X = lpsect::parse_space(space);
        const MCConfig cfg = mc.config();
        json params;
        params["space"] = X.describe();
        params["p"] = p;
        params["n"] = n;
        params["chunk"] = cfg.chunk;
        params["workers"] = cfg.workers;

        if (theta.empty() == subspace_file.empty())
            throw std::invalid_argument("section: give exactly one of --theta and --subspace-file");

        json rec;
        if (!theta.empty()) {
            const Vec th = lpsect::parse_theta(theta, n);
            const int ell = X.dim() * (n - 1);
            if (ell > 8)
                std::cerr << "warning: section dimension " << ell
                          << " exceeds 8; the negative-moment estimator's variance grows quickly\n";
            params["theta"] = theta;
            const Estimate est = lpsect::section_volume(X, p, n, th, cfg);
            rec = estimate_json(est, params);
            if (p > 2.0 && n >= 2) {
                // For p > 2 no ordering against the e1 endpoint is known in
                // general; report both values (same seed) and assert nothing.
                const Vec e1 = lpsect::parse_theta("e1", n);
                const Estimate ref = lpsect::section_volume(X, p, n, e1, cfg);
                rec["e1_endpoint"] = {{"value", ref.value}, {"std_error", ref.std_error}};
                rec["note"] = "p > 2: e1-endpoint comparison reported as data only, no ordering asserted";
            }
        } else {
            const Subspace E = Subspace::load(subspace_file);
            if (E.dim() > 8)
                std::cerr << "warning: section dimension " << E.dim()
                          << " exceeds 8; the negative-moment estimator's variance grows quickly\n";
            params["subspace_file"] = subspace_file;
            params["subspace_dim"] = E.dim();
            rec = estimate_json(lpsect::section_volume(X, p, n, E, cfg), params);
        }
        emit(out, dump(rec));
        return 0;
    }
};

// project: |Proj_{H_theta}(K^n)| for the block hyperplane of --theta, or
// |Proj_F K| of the single body onto the subspace in --subspace-file.
struct ProjectCmd {
    std::string space;
    int n = 0;
    std::string theta;
    std::string subspace_file;
    double mem_tol = 1e-8;
    int multistarts = 8;
    McOpts mc;
    std::string out;

    int run() const {
        const Space X = lpsect::parse_space(space);
        const auto body = lpsect::ConvexBody::from_space(X);
        const MCConfig cfg = mc.config();
        lpsect::MembershipConfig mem;
        mem.tol = mem_tol;
        mem.multistarts = multistarts;
        if (!(mem.tol > 0.0)) throw std::invalid_argument("project: --mem-tol must be positive");
        if (mem.multistarts < 1) throw std::invalid_argument("project: --multistarts must be >= 1");

        json params;
        params["space"] = X.describe();
        params["chunk"] = cfg.chunk;
        params["workers"] = cfg.workers;

        if (theta.empty() == subspace_file.empty())
            throw std::invalid_argument("project: give exactly one of --theta and --subspace-file");

        json rec;
        if (!theta.empty()) {
            const Vec th = lpsect::parse_theta(theta, n);
            params["n"] = n;
            params["theta"] = theta;
            if (lpsect::space_ball_volume(X)) {
                const auto check = lpsect::projection_lower_bound_check(body, n, th, mem, cfg);
                rec = estimate_json(check.proj, params);
                rec["lower_bound"] = check.bound;
                rec["bound_holds"] = check.holds;
            } else {
                rec = estimate_json(lpsect::projection_volume(body, n, th, mem, cfg), params);
            }
        } else {
            const Subspace F = Subspace::load(subspace_file);
            params["subspace_file"] = subspace_file;
            params["subspace_dim"] = F.dim();
            auto gauge = [&body](std::span<const double> x) { return body.gauge(x); };
            const Estimate est =
                lpsect::projection_volume_gauge(gauge, X.circumradius_bound(), F, mem, cfg);
            rec = estimate_json(est, params);
        }
        emit(out, dump(rec));
        return 0;
    }
};

// laplace: E exp(-lambda ||G_theta||^p) for the Gaussian G_theta on H_theta.
struct LaplaceCmd {
    std::string space;
    double p = 0.0;
    int n = 0;
    std::string theta;
    double lambda = 1.0;
    McOpts mc;
    std::string out;

    int run() const {
        const Space X = lpsect::parse_space(space);
        const MCConfig cfg = mc.config();
        const Vec th = lpsect::parse_theta(theta, n);
        json params;
        params["space"] = X.describe();
        params["p"] = p;
        params["n"] = n;
        params["theta"] = theta;
        params["lambda"] = lambda;
        params["chunk"] = cfg.chunk;
        params["workers"] = cfg.workers;
        emit(out, dump(estimate_json(lpsect::laplace_estimate(X, p, n, th, lambda, cfg), params)));
        return 0;
    }
};

// lewis: bring a discrete measure into isotropic position for the given p.
// Exits 1 when the fixed-point iteration does not reach the tolerance.
struct LewisCmd {
    std::string measure_file;
    double p = 0.0;
    double tol = 1e-10;
    int max_iter = 10000;
    double damping = 0.5;
    std::string out;
    std::string out_measure;

    int run() const {
        const auto mu = lpsect::DiscreteMeasure::load(measure_file);
        const auto res = lpsect::lewis_solve(mu, p, {tol, max_iter, damping});
        json rec;
        rec["converged"] = res.converged;
        rec["residual"] = res.residual;
        rec["iterations"] = res.iterations;
        rec["m"] = res.transform.rows();
        std::vector<double> a;
        a.reserve(static_cast<std::size_t>(res.transform.rows()) * res.transform.cols());
        for (int i = 0; i < res.transform.rows(); ++i)
            for (int j = 0; j < res.transform.cols(); ++j) a.push_back(res.transform(i, j));
        rec["transform"] = a;
        rec["pushforward_mass"] = res.measure.total_mass();
        if (!res.diagnostic.empty()) rec["diagnostic"] = res.diagnostic;
        rec["params"] = {{"measure", measure_file}, {"p", p},       {"tol", tol},
                         {"max_iter", max_iter},    {"damping", damping}};
        if (!out_measure.empty()) {
            const std::string tmp = out_measure + ".tmp";
            res.measure.save(tmp);
            if (std::rename(tmp.c_str(), out_measure.c_str()) != 0) {
                std::remove(tmp.c_str());
                throw std::runtime_error("cannot rename output into place: " + out_measure);
            }
        }
        emit(out, dump(rec));
        return res.converged ? 0 : 1;
    }
};

// meanwidth: sphere average of the section norm over S(H_theta).
struct MeanWidthCmd {
    std::string space;
    double p = 0.0;
    int n = 0;
    std::string theta;
    McOpts mc;
    std::string out;

    int run() const {
        const Space X = lpsect::parse_space(space);
        const MCConfig cfg = mc.config();
        const Vec th = lpsect::parse_theta(theta, n);
        json params;
        params["space"] = X.describe();
        params["p"] = p;
        params["n"] = n;
        params["theta"] = theta;
        params["chunk"] = cfg.chunk;
        params["workers"] = cfg.workers;
        emit(out, dump(estimate_json(lpsect::mean_width_estimate(X, p, n, th, cfg), params)));
        return 0;
    }
};

// detlab: E det(sum_i alpha_i M_i)^{-r} over an i.i.d. PSD matrix ensemble.
struct DetlabCmd {
    std::string ensemble;
    std::string alpha;
    double r = 1.0;
    McOpts mc;
    std::string out;

    int run() const {
        const auto sampler = parse_ensemble(ensemble);
        const auto alphas = parse_csv_doubles(alpha, "--alpha");
        const MCConfig cfg = mc.config();
        json params;
        params["ensemble"] = ensemble;
        params["alpha"] = alphas;
        params["r"] = r;
        params["chunk"] = cfg.chunk;
        params["workers"] = cfg.workers;
        emit(out, dump(estimate_json(lpsect::det_schur_estimate(sampler, alphas, r, cfg), params)));
        return 0;
    }
};

// verify: run a named check suite and print one row per check.
// Exit 0 iff every check passes.
struct VerifyCmd {
    std::string suite;
    std::uint64_t seed = 0;
    int workers = env_workers();
    std::string format = "csv";
    std::string out;

    int run() const {
        if (workers < 1) throw std::invalid_argument("workers must be >= 1");
        const auto report = lpsect::verify_suite(suite, seed, workers);
        std::string content;
        if (format == "csv") {
            std::ostringstream os;
            lpsect::write_check_csv(os, report.rows);
            content = os.str();
        } else {
            json rows = json::array();
            for (const auto& row : report.rows)
                rows.push_back({{"check_id", row.id},
                                {"lhs", row.lhs},
                                {"rhs", row.rhs},
                                {"sigma_slack", row.sigma_slack},
                                {"pass", row.pass}});
            content = dump(json{{"suite", report.suite}, {"all_pass", report.all_pass()}, {"rows", rows}});
        }
        emit(out, content);
        return report.all_pass() ? 0 : 1;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sections, projections, and Gaussian functionals of l_p-sums of normed spaces"};
    app.require_subcommand(1);
    std::string config_path;

    VolumeCmd volume;
    {
        auto* sub = app.add_subcommand("volume", "exact unit-ball volume of a composable space");
        sub->add_option("--space", volume.space, "space spec, e.g. lq:q=1,m=4 or power:p=1,n=2(euclid:m=4)")
            ->required();
        sub->add_option("--out", volume.out, "output path (default: stdout)");
        add_config_flag(sub, config_path);
    }

    SectionCmd section;
    {
        auto* sub = app.add_subcommand("section", "hyperplane and subspace section volumes of B_p^n(X)");
        sub->add_option("--space", section.space, "block space X, e.g. lq:q=1,m=2")->required();
        sub->add_option("--p", section.p, "outer exponent p > 0")->required();
        sub->add_option("--n", section.n, "number of blocks")->required();
        auto* th = sub->add_option("--theta", section.theta, "block direction: diag, e1, or c1,...,cn (unit)");
        auto* sf = sub->add_option("--subspace-file", section.subspace_file,
                                   "orthonormal basis rows, whitespace-separated decimals");
        th->excludes(sf);
        section.mc.add_flags(sub);
        sub->add_option("--out", section.out, "output path (default: stdout)");
        add_config_flag(sub, config_path);
    }

    ProjectCmd project;
    {
        auto* sub = app.add_subcommand("project", "projection volumes of K^n onto H_theta or of K onto F");
        sub->add_option("--space", project.space, "body K as a space spec (convex kinds only)")->required();
        sub->add_option("--n", project.n, "number of blocks (theta mode)");
        auto* th = sub->add_option("--theta", project.theta, "block direction: diag, e1, or c1,...,cn (unit)");
        auto* sf = sub->add_option("--subspace-file", project.subspace_file,
                                   "project the single body onto this subspace instead");
        th->excludes(sf);
        sub->add_option("--mem-tol", project.mem_tol, "membership feasibility tolerance")->capture_default_str();
        sub->add_option("--multistarts", project.multistarts, "membership solver multistarts")
            ->capture_default_str();
        project.mc.add_flags(sub);
        sub->add_option("--out", project.out, "output path (default: stdout)");
        add_config_flag(sub, config_path);
    }

    LaplaceCmd laplace;
    {
        auto* sub = app.add_subcommand("laplace", "Laplace transform of the block Gaussian norm on H_theta");
        sub->add_option("--space", laplace.space, "block space X")->required();
        sub->add_option("--p", laplace.p, "outer exponent p > 0")->required();
        sub->add_option("--n", laplace.n, "number of blocks")->required();
        sub->add_option("--theta", laplace.theta, "block direction")->required();
        sub->add_option("--lambda", laplace.lambda, "transform parameter lambda > 0")->required();
        laplace.mc.add_flags(sub);
        sub->add_option("--out", laplace.out, "output path (default: stdout)");
        add_config_flag(sub, config_path);
    }

    LewisCmd lewis;
    {
        auto* sub = app.add_subcommand("lewis", "isotropic-position transform for a discrete measure");
        sub->add_option("--measure", lewis.measure_file,
                        "measure file, one atom per line: weight then unit direction entries")
            ->required();
        sub->add_option("--p", lewis.p, "exponent p > 0")->required();
        sub->add_option("--tol", lewis.tol, "isotropy residual tolerance")->capture_default_str();
        sub->add_option("--max-iter", lewis.max_iter, "iteration cap")->capture_default_str();
        sub->add_option("--damping", lewis.damping, "step damping in (0,1]")->capture_default_str();
        sub->add_option("--out", lewis.out, "output path (default: stdout)");
        sub->add_option("--out-measure", lewis.out_measure, "write the pushforward measure to this file");
        add_config_flag(sub, config_path);
    }

    MeanWidthCmd meanwidth;
    {
        auto* sub = app.add_subcommand("meanwidth", "mean width of the projected polar body via the section norm");
        sub->add_option("--space", meanwidth.space, "block space X")->required();
        sub->add_option("--p", meanwidth.p, "outer exponent p >= 1")->required();
        sub->add_option("--n", meanwidth.n, "number of blocks")->required();
        sub->add_option("--theta", meanwidth.theta, "block direction")->required();
        meanwidth.mc.add_flags(sub);
        sub->add_option("--out", meanwidth.out, "output path (default: stdout)");
        add_config_flag(sub, config_path);
    }

    DetlabCmd detlab;
    {
        auto* sub = app.add_subcommand("detlab", "negative determinant moments of PSD matrix mixtures");
        sub->add_option("--ensemble", detlab.ensemble,
                        "wishart:m=<int>[,ridge=<r>] or diaguniform:m=<int>,lo=<r>,hi=<r>")
            ->required();
        sub->add_option("--alpha", detlab.alpha, "mixture weights, comma-separated")->required();
        sub->add_option("--r", detlab.r, "moment order r > 0")->required();
        detlab.mc.add_flags(sub);
        sub->add_option("--out", detlab.out, "output path (default: stdout)");
        add_config_flag(sub, config_path);
    }

    VerifyCmd verify;
    {
        auto* sub = app.add_subcommand("verify", "run a check suite; one row per check, exit 0 iff all pass");
        std::vector<std::string> names = lpsect::verify_suite_names();
        names.push_back("all");
        sub->add_option("suite", verify.suite, "one of: exact, schur-sections, laplace, detlab, lewis, projections, meanwidth, all")
            ->required()
            ->check(CLI::IsMember(names));
        sub->add_option("--seed", verify.seed, "random stream seed")->capture_default_str();
        sub->add_option("--workers", verify.workers, "worker threads (default: LPSECT_WORKERS or 1)");
        sub->add_option("--format", verify.format, "csv or json")
            ->capture_default_str()
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", verify.out, "output path (default: stdout)");
        add_config_flag(sub, config_path);
    }

    std::vector<std::string> args;
    try {
        args = expand_config_args(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::vector<const char*> cargv;
    cargv.reserve(args.size());
    for (const std::string& s : args) cargv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("volume")) return volume.run();
        if (app.got_subcommand("section")) return section.run();
        if (app.got_subcommand("project")) return project.run();
        if (app.got_subcommand("laplace")) return laplace.run();
        if (app.got_subcommand("lewis")) return lewis.run();
        if (app.got_subcommand("meanwidth")) return meanwidth.run();
        if (app.got_subcommand("detlab")) return detlab.run();
        if (app.got_subcommand("verify")) return verify.run();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
