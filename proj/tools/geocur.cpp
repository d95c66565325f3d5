// Experiment CLI: evaluation utilities plus the convergence/inequality
// drivers. Every run writes CSV tables and a JSON verdict under --out;
// exit code 0 = all verdicts pass, 1 = a verdict failed, 2 = bad config.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "geocur/experiments.hpp"

namespace fs = std::filesystem;
using namespace geocur;

namespace {

struct Options {
    std::string config;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out = ".";
    int jobs = 1;
    bool plot_data = false;
};

json load_config(const Options& opt) {
    if (opt.config.empty()) return json::object();
    std::ifstream in(opt.config);
    if (!in) throw ConfigError("cannot open config file: " + opt.config);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path.string());
    out << text;
}

// Persist a driver result and report its verdict on stdout.
int finish(const DriverResult& res, const Options& opt) {
    fs::create_directories(opt.out);
    fs::path dir(opt.out);
    for (const auto& [stem, csv] : res.tables) write_text(dir / (stem + ".csv"), csv);
    if (opt.plot_data)
        for (const auto& [stem, csv] : res.plots) write_text(dir / (stem + ".csv"), csv);
    write_text(dir / (res.name + "_verdict.json"), res.verdict.dump(2) + "\n");
    std::cout << res.name << ": " << (res.pass ? "PASS" : "FAIL") << "\n"
              << res.verdict.dump(2) << "\n";
    return res.pass ? 0 : 1;
}

// A utility run with no pass/fail claims: tables only, exit 0.
int finish_tables(const std::string& name, const std::map<std::string, std::string>& tables,
                  const Options& opt) {
    fs::create_directories(opt.out);
    fs::path dir(opt.out);
    for (const auto& [stem, csv] : tables) {
        write_text(dir / (stem + ".csv"), csv);
        std::cout << csv;
    }
    std::cout << name << ": OK\n";
    return 0;
}

std::vector<Box> boxes_or_default(const json& cfg) {
    if (cfg.contains("boxes")) return boxes_from_json(cfg.at("boxes"));
    return default_base_boxes();
}

int run_liouville(const Options& opt) {
    json cfg = load_config(opt);
    std::vector<Box> boxes = boxes_or_default(cfg);
    double tol = cfg.value("quad_tol", 1e-8);
    CsvWriter csv({"box", "a", "b", "c", "d", "closed_form", "quadrature", "gap"});
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        const Box& Q = boxes[i];
        double exact = liouville_box(Q);
        std::string quad = "nan", gap = "nan";
        try {
            double q = liouville_quad(Q, tol);
            quad = fmt_double(q);
            gap = fmt_double(std::abs(q - exact));
        } catch (const Error&) {
        }
        csv.add_row({std::to_string(i), fmt_double(Q.a().angle), fmt_double(Q.b().angle),
                     fmt_double(Q.c().angle), fmt_double(Q.d().angle), fmt_double(exact),
                     quad, gap});
    }
    return finish_tables("liouville", {{"liouville", csv.str()}}, opt);
}

int run_quake_eval(const Options& opt) {
    json cfg = load_config(opt);
    FiniteLamination lam;
    if (cfg.contains("lamination"))
        lam = lamination_from_json(cfg.at("lamination"));
    else if (cfg.contains("lamination_file"))
        lam = load_lamination(cfg.at("lamination_file").get<std::string>());
    else
        lam = FiniteLamination(
            {Leaf(Geodesic(cayley_to_disk(0.0), cayley_to_disk(kInf)), 1.0)});
    double t = cfg.value("scale", 1.0);
    BoundaryPoint base(cfg.value("base_ref", 0.5 * std::numbers::pi));
    EarthquakeMap E = build_earthquake(lam.scaled(t), detail::clear_base(lam, base.angle));

    CsvWriter bmap({"breakpoint", "image"});
    for (double bp : E.boundary.breakpoints())
        bmap.add_row({fmt_double(bp), fmt_double(E.boundary(BoundaryPoint(bp)).angle)});
    if (cfg.contains("angles"))
        for (double a : cfg.at("angles").get<std::vector<double>>())
            bmap.add_row({fmt_double(a), fmt_double(E.boundary(BoundaryPoint(a)).angle)});

    std::vector<Box> boxes = boxes_or_default(cfg);
    CsvWriter vals({"box", "pullback_value", "scaled_value"});
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        std::string v = "nan", s = "nan";
        try {
            double x = liouville_value(E, boxes[i]);
            v = fmt_double(x);
            s = fmt_double(x / t);
        } catch (const Error&) {
        }
        vals.add_row({std::to_string(i), v, s});
    }

    fs::create_directories(opt.out);
    write_text(fs::path(opt.out) / "quake_map.json", to_json(E.boundary).dump(2) + "\n");
    return finish_tables("quake-eval",
                         {{"quake_boundary", bmap.str()}, {"quake_values", vals.str()}},
                         opt);
}

int run_supnorm(const Options& opt) {
    json cfg = load_config(opt);
    Current alpha = cfg.contains("current") ? current_from_json(cfg.at("current"))
                                            : Current::liouville_base();
    IsometrySampler sampler;
    if (cfg.contains("sampler")) sampler = sampler_from_json(cfg.at("sampler"));
    if (opt.seed_set) sampler.seed = substream(opt.seed, "sampler");
    double est = sup_norm_estimate(alpha, sampler);
    CsvWriter csv({"sup_norm_estimate", "sampler_count", "sampler_seed"});
    csv.add_row({fmt_double(est), std::to_string(sampler.count),
                 std::to_string(sampler.seed)});
    return finish_tables("supnorm", {{"supnorm", csv.str()}}, opt);
}

int run_converge(const std::string& variant, const Options& opt) {
    json cfg = load_config(opt);
    if (variant == "theorem71") {
        Theorem71Spec spec = cfg.empty() ? Theorem71Spec::nested_default()
                                         : theorem71_spec_from_json(cfg);
        if (opt.seed_set) spec.sampler.seed = substream(opt.seed, "sampler");
        return finish(run_theorem71(spec, opt.jobs), opt);
    }
    if (variant == "lemma61") {
        Lemma61Spec spec =
            cfg.empty() ? Lemma61Spec::banded_default() : lemma61_spec_from_json(cfg);
        return finish(run_lemma61(spec, opt.jobs), opt);
    }
    throw ConfigError("converge variant must be theorem71 or lemma61");
}

int run_ineq(const std::string& variant, const Options& opt) {
    json cfg = load_config(opt);
    if (variant == "prop93") {
        Prop93Spec spec = prop93_spec_from_json(cfg);
        if (opt.seed_set) spec.seed = substream(opt.seed, "prop93");
        return finish(run_prop93(spec, opt.jobs), opt);
    }
    if (variant == "lemma92") return finish(run_lemma92(lemma92_spec_from_json(cfg), opt.jobs), opt);
    if (variant == "lemma94") {
        Lemma94Spec spec = lemma94_spec_from_json(cfg);
        if (opt.seed_set) spec.seed = substream(opt.seed, "lemma94");
        return finish(run_lemma94(spec, opt.jobs), opt);
    }
    throw ConfigError("ineq variant must be prop93, lemma92 or lemma94");
}

int run_bonahon_cmd(const Options& opt) {
    BonahonSpec spec = bonahon_spec_from_json(load_config(opt));
    if (opt.seed_set) {
        spec.seed = substream(opt.seed, "bonahon");
        spec.sampler.seed = substream(opt.seed, "sampler");
    }
    return finish(run_bonahon_and_supnorm(spec, opt.jobs), opt);
}

int run_mcg_cmd(const Options& opt) {
    json cfg = load_config(opt);
    McgSpec spec = cfg.empty() ? McgSpec::reference() : mcg_spec_from_json(cfg);
    return finish(run_mcg(spec, opt.jobs), opt);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geocur: Liouville measures, earthquakes and geodesic currents"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--config", opt.config, "JSON config file")->expected(1);
    app.add_option("--seed", opt.seed, "master seed for all random substreams")
        ->expected(1);
    app.add_option("--out", opt.out, "output directory")->expected(1);
    app.add_option("--jobs", opt.jobs, "worker threads")->expected(1);
    app.add_flag("--plot-data", opt.plot_data, "also write plot-series CSV files");

    std::string variant;
    CLI::App* liou = app.add_subcommand("liouville", "closed form vs quadrature on boxes");
    CLI::App* quake = app.add_subcommand("quake-eval", "evaluate an earthquake boundary map");
    CLI::App* conv = app.add_subcommand("converge", "scaled-pullback convergence drivers");
    conv->add_option("variant", variant, "theorem71 | lemma61")->required();
    CLI::App* ineq = app.add_subcommand("ineq", "inequality and monotonicity drivers");
    ineq->add_option("variant", variant, "prop93 | lemma92 | lemma94")->required();
    CLI::App* bona = app.add_subcommand("bonahon", "cocycle identity, sup norms, dichotomy");
    CLI::App* mcg = app.add_subcommand("mcg", "pushforward of a convergent family");
    CLI::App* sup = app.add_subcommand("supnorm", "sup-norm estimate of a current");

    CLI11_PARSE(app, argc, argv);
    opt.seed_set = app.count("--seed") > 0;

    try {
        if (liou->parsed()) return run_liouville(opt);
        if (quake->parsed()) return run_quake_eval(opt);
        if (conv->parsed()) return run_converge(variant, opt);
        if (ineq->parsed()) return run_ineq(variant, opt);
        if (bona->parsed()) return run_bonahon_cmd(opt);
        if (mcg->parsed()) return run_mcg_cmd(opt);
        if (sup->parsed()) return run_supnorm(opt);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
