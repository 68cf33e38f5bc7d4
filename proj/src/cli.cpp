#include "povkit/cli.hpp"

#include "povkit/asymptotics.hpp"
#include "povkit/distributions.hpp"
#include "povkit/errors.hpp"
#include "povkit/gpi.hpp"
#include "povkit/inference.hpp"
#include "povkit/io.hpp"
#include "povkit/montecarlo.hpp"
#include "povkit/rng.hpp"
#include "povkit/sample.hpp"

#include <cmath>
#include <random>

#include <CLI11.hpp>

namespace povkit::cli {

namespace {

struct CommonFlags {
    std::string input;
    std::string model_spec;
    double line = 0.0;
    double y0 = 0.0;
    std::string index_name;
    double alpha = 1.0;
    double k = 1.0;
    std::string out_path;
    std::string format = "json";
};

void add_index_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--index", f.index_name, "index name")->required();
    cmd->add_option("--alpha", f.alpha, "index exponent (fgt/chakravarty/chu/ray)");
    cmd->add_option("--k", f.k, "kakwani rank-weight exponent");
}

void add_output_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--out", f.out_path, "output file (default stdout)");
    cmd->add_option("--format", f.format, "json or csv-table");
}

void emit(const io::Report& report, const CommonFlags& f, std::ostream& out) {
    const io::Format format = io::format_from_name(f.format);
    if (f.out_path.empty())
        io::write_report(report, format, out);
    else
        io::write_report_file(report, format, f.out_path);
}

void describe_index(io::Report& report, const IndexId& index) {
    switch (index.family) {
    case IndexFamily::fgt:
    case IndexFamily::chakravarty:
    case IndexFamily::chu:
    case IndexFamily::ray:
        report["alpha"] = index.alpha;
        break;
    case IndexFamily::kakwani:
        report["k"] = index.k;
        break;
    default:
        break;
    }
}

mc::CiMethod ci_method_from_name(const std::string& name) {
    if (name == "plugin") return mc::CiMethod::plugin;
    if (name == "bootstrap") return mc::CiMethod::bootstrap;
    if (name == "none" || name.empty()) return mc::CiMethod::none;
    throw ParseError("unknown CI method: " + name);
}

io::Report ci_report(const infer::ConfidenceInterval& ci) {
    io::Report report;
    report["estimate"] = ci.estimate;
    report["se"] = ci.se;
    report["level"] = ci.level;
    report["lo"] = ci.lo;
    report["hi"] = ci.hi;
    report["method"] = ci.method;
    report["n"] = ci.n;
    if (!ci.warning.empty()) report["warning"] = ci.warning;
    return report;
}

io::Report simulation_report(const mc::SimulationReport& rep) {
    io::Report report;
    report["mean_std"] = rep.mean_std;
    report["var_std"] = rep.var_std;
    report["ks_distance"] = rep.ks_distance;
    if (rep.coverage)
        report["coverage"] = *rep.coverage;
    else
        report["coverage"] = nullptr;
    report["reps_effective"] = rep.reps_effective;
    report["seed"] = rep.seed;
    return report;
}

// Engine-vs-closed-form audit over randomly generated samples; every config
// additionally passes through its JSON form before evaluation.
struct VerifyOutcome {
    std::size_t instances = 0;
    double max_rel_dev = 0.0;
    bool pass = false;
};

VerifyOutcome run_verify(std::size_t instances, std::uint64_t seed, std::size_t max_n) {
    constexpr double tolerance = 1e-10;
    VerifyOutcome outcome;
    outcome.instances = instances;

    for (std::size_t i = 1; i <= instances; ++i) {
        auto gen = std::mt19937_64(rng::substream_seed(seed, i));
        const auto u = [&] { return rng::uniform01(gen); };

        dist::ModelPtr model;
        switch (rng::uniform_index(gen, 4)) {
        case 0: model = dist::uniform(0.0, 0.5 + 2.0 * u()); break;
        case 1: model = dist::exponential(0.3 + 2.0 * u()); break;
        case 2: model = dist::pareto(0.5 + u(), 1.2 + 2.0 * u()); break;
        default: model = dist::lognormal(-0.5 + u(), 0.3 + u()); break;
        }
        const std::size_t n = 1 + rng::uniform_index(gen, max_n);
        const IncomeSample sample = dist::draw_sample(*model, n, gen());
        const PovertyContext ctx{model->quantile(0.05 + 0.9 * u())};

        const IndexId indices[] = {
            IndexId::fgt(3.0 * u()),         IndexId::ray(0.25 + 2.75 * u()),
            IndexId::chu(0.05 + 0.95 * u()), IndexId::sen(),
            IndexId::kakwani(3.0 * u()),     IndexId::shorrocks(),
            IndexId::thon(),
        };
        for (const IndexId& index : indices) {
            const double closed = compute_closed_form(index, sample, ctx);
            const auto config =
                gpi::config_from_json(gpi::to_json(gpi::builtin_config(index)));
            const double engine = gpi::evaluate(config, sample, ctx);
            const double dev = std::fabs(engine - closed) / (1.0 + std::fabs(closed));
            outcome.max_rel_dev = std::max(outcome.max_rel_dev, dev);
        }
    }
    outcome.pass = outcome.max_rel_dev <= tolerance;
    return outcome;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out, err);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

namespace {

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"poverty index toolkit", "povkit"};
    app.require_subcommand(1);

    CommonFlags f;
    std::string method = "plugin";
    double level = 0.95;
    std::size_t bootstrap_reps = 999;
    std::uint64_t seed = 42;
    std::size_t n = 1000;
    std::size_t reps = 1000;

    CLI::App* compute = app.add_subcommand("compute", "index value from a CSV income file");
    compute->add_option("--input", f.input, "CSV income file")->required();
    compute->add_option("--line", f.line, "poverty line")->required();
    compute->add_option("--y0", f.y0, "income support lower endpoint");
    add_index_flags(compute, f);
    add_output_flags(compute, f);

    CLI::App* ci = app.add_subcommand("ci", "confidence interval from a CSV income file");
    ci->add_option("--input", f.input, "CSV income file")->required();
    ci->add_option("--line", f.line, "poverty line")->required();
    ci->add_option("--y0", f.y0, "income support lower endpoint");
    add_index_flags(ci, f);
    ci->add_option("--method", method, "plugin or bootstrap");
    ci->add_option("--level", level, "confidence level");
    ci->add_option("--bootstrap-reps", bootstrap_reps, "bootstrap resamples");
    ci->add_option("--seed", seed, "bootstrap seed");
    add_output_flags(ci, f);

    CLI::App* theory = app.add_subcommand("theory", "limit-law center and variance");
    theory->add_option("--model", f.model_spec, "model spec, e.g. uniform:0,1")->required();
    theory->add_option("--line", f.line, "poverty line")->required();
    add_index_flags(theory, f);
    add_output_flags(theory, f);

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo check of the limit law");
    simulate->add_option("--model", f.model_spec, "model spec")->required();
    simulate->add_option("--line", f.line, "poverty line")->required();
    add_index_flags(simulate, f);
    simulate->add_option("--n", n, "sample size per replicate");
    simulate->add_option("--reps", reps, "replicates");
    simulate->add_option("--seed", seed, "simulation seed");
    std::string sim_method = "none";
    simulate->add_option("--method", sim_method, "CI method for coverage (plugin/bootstrap)");
    simulate->add_option("--level", level, "confidence level");
    simulate->add_option("--bootstrap-reps", bootstrap_reps, "bootstrap resamples");
    add_output_flags(simulate, f);

    CLI::App* verify = app.add_subcommand("verify", "engine vs closed-form audit");
    verify->add_option("--reps", reps, "audit instances");
    verify->add_option("--seed", seed, "audit seed");
    verify->add_option("--n", n, "maximum sample size");
    add_output_flags(verify, f);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n' << app.help();
        return 2;
    }

    if (compute->parsed()) {
        const IndexId index = index_from_name(f.index_name, f.alpha, f.k);
        const IncomeSample sample = io::read_incomes_csv(f.input, f.y0);
        const PovertyContext ctx{f.line};
        io::Report report;
        report["index"] = f.index_name;
        describe_index(report, index);
        report["n"] = sample.size();
        report["poor"] = count_poor(sample, ctx);
        report["value"] = compute_closed_form(index, sample, ctx);
        emit(report, f, out);
        return 0;
    }

    if (ci->parsed()) {
        const IndexId index = index_from_name(f.index_name, f.alpha, f.k);
        const IncomeSample sample = io::read_incomes_csv(f.input, f.y0);
        const PovertyContext ctx{f.line};
        const mc::CiMethod m = ci_method_from_name(method);
        if (m == mc::CiMethod::none) throw ParseError("ci requires --method plugin or bootstrap");
        const infer::ConfidenceInterval interval =
            m == mc::CiMethod::plugin
                ? infer::plugin_ci(index, sample, ctx, level)
                : infer::bootstrap_ci(index, sample, ctx, level, bootstrap_reps, seed);
        emit(ci_report(interval), f, out);
        return 0;
    }

    if (theory->parsed()) {
        const IndexId index = index_from_name(f.index_name, f.alpha, f.k);
        const dist::ModelPtr model = dist::parse_model(f.model_spec);
        const asymp::LimitLaw law = asymp::limit_law(index, *model, f.line);
        io::Report report;
        report["D"] = law.D;
        report["variance"] = law.variance;
        report["transformed_center"] = law.transformed_center;
        report["transformed_variance"] = law.transformed_variance;
        emit(report, f, out);
        return 0;
    }

    if (simulate->parsed()) {
        mc::SimulationPlan plan;
        plan.index = index_from_name(f.index_name, f.alpha, f.k);
        plan.model = dist::parse_model(f.model_spec);
        plan.line = f.line;
        plan.n = n;
        plan.reps = reps;
        plan.seed = seed;
        plan.ci_method = ci_method_from_name(sim_method);
        plan.level = level;
        plan.bootstrap_reps = bootstrap_reps;
        emit(simulation_report(mc::run_simulation(plan)), f, out);
        return 0;
    }

    // verify
    const VerifyOutcome outcome = run_verify(reps, seed, n);
    io::Report report;
    report["instances"] = outcome.instances;
    report["max_rel_dev"] = outcome.max_rel_dev;
    report["tolerance"] = 1e-10;
    report["config_roundtrip"] = true;
    report["pass"] = outcome.pass;
    emit(report, f, out);
    if (!outcome.pass) {
        err << "verify: engine and closed forms disagree (max rel dev "
            << io::format_double(outcome.max_rel_dev) << ")\n";
        return 1;
    }
    return 0;
}

} // namespace

} // namespace povkit::cli
