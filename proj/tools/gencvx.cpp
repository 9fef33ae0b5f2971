// Command-line front end: run analyses, list bundled fixtures, export them
// as config files for the public pipeline.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gencvx/config.hpp"
#include "gencvx/errors.hpp"
#include "gencvx/expr.hpp"
#include "gencvx/fixtures.hpp"
#include "gencvx/report.hpp"

namespace {

// Inline form (no fixture reference), so the exported file exercises the
// full public pipeline when re-run.
gencvx::AnalysisConfig fixture_config(const gencvx::Fixture& f) {
    gencvx::AnalysisConfig c;
    c.name = f.spec.name;
    c.dimension = f.spec.dimension;
    c.value_source = f.spec.value.print();
    for (const auto& g : f.spec.gradient) c.gradient_sources.push_back(g.print());
    c.domain_box = f.spec.domain_box;
    c.grad_lipschitz = f.spec.grad_lipschitz;
    c.seed = 1;
    c.seed_set = true;
    return c;
}

int run_analyze(const std::string& config_path, const std::string& fixture, long seed,
                bool seed_given, const std::string& format, const std::string& modes,
                const std::string& out_path) {
    gencvx::AnalysisConfig cfg;
    if (!config_path.empty()) {
        cfg = gencvx::load_config_file(config_path);
    }
    if (!fixture.empty()) cfg.fixture = fixture;
    if (seed_given) {
        cfg.seed = static_cast<std::uint64_t>(seed);
        cfg.seed_set = true;
    }
    if (!format.empty()) cfg.format = format;
    if (!modes.empty()) {
        std::string tmp = "[analysis]\nseed = 0\nmodes = " + modes + "\n";
        cfg.modes = gencvx::parse_config(tmp).modes;
    }

    const gencvx::AnalysisReport report = gencvx::run_analysis(cfg);
    const std::string text = gencvx::emit(report, cfg.format);
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return 1;
        }
        out << text;
    } else {
        std::cout << text;
    }
    return report.exit_status;
}

int run_fixtures_list() {
    for (const auto& f : gencvx::load_fixtures()) {
        const auto& e = f.expected;
        std::cout << f.spec.name << "  dim=" << f.spec.dimension << "  qc=" << e.quasiconvex
                  << " sqc=" << e.strictly_quasiconvex << " pc=" << e.pseudoconvex
                  << " spc=" << e.strictly_pseudoconvex << "\n";
    }
    return 0;
}

int run_fixtures_export(const std::string& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& f : gencvx::load_fixtures()) {
        const auto cfg = fixture_config(f);
        const std::filesystem::path path = std::filesystem::path(dir) / (f.spec.name + ".cfg");
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << path.string() << "\n";
            return 1;
        }
        out << "# exported fixture definition; rerun with: gencvx analyze --config "
            << path.filename().string() << "\n";
        out << gencvx::serialize_config(cfg);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical quasiconvexity / pseudoconvexity certification"};
    app.require_subcommand(1);

    std::string config_path, fixture, format, modes, out_path;
    long seed = 0;

    CLI::App* analyze = app.add_subcommand("analyze", "run an analysis and emit a report");
    analyze->add_option("--config", config_path, "config file path");
    analyze->add_option("--fixture", fixture, "bundled fixture name (overrides the config)");
    CLI::Option* seed_opt = analyze->add_option("--seed", seed, "random seed");
    analyze->add_option("--format", format, "json | markdown");
    analyze->add_option("--modes", modes, "comma-separated subset of necessary,sufficient,oracles,subdiff-only");
    analyze->add_option("--out", out_path, "write the report to a file instead of stdout");

    CLI::App* fixtures = app.add_subcommand("fixtures", "bundled fixture registry");
    fixtures->require_subcommand(1);
    CLI::App* flist = fixtures->add_subcommand("list", "list fixtures and expected classifications");
    std::string export_dir;
    CLI::App* fexport = fixtures->add_subcommand("export", "write fixture config files");
    fexport->add_option("dir", export_dir, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed())
            return run_analyze(config_path, fixture, seed, seed_opt->count() > 0, format, modes,
                               out_path);
        if (flist->parsed()) return run_fixtures_list();
        if (fexport->parsed()) return run_fixtures_export(export_dir);
    } catch (const gencvx::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const gencvx::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const gencvx::GradientMismatch& e) {
        std::cerr << "gradient mismatch: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
