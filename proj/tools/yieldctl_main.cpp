#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "yieldctl/gbdt.hpp"
#include "yieldctl/pipeline.hpp"

namespace {

int exit_code(yieldctl::Stage stage) {
    switch (stage) {
        case yieldctl::Stage::config: return 2;
        case yieldctl::Stage::synth: return 3;
        case yieldctl::Stage::ingest: return 4;
        case yieldctl::Stage::oversample: return 5;
        case yieldctl::Stage::train: return 6;
        case yieldctl::Stage::explain: return 7;
        case yieldctl::Stage::ranges: return 8;
        case yieldctl::Stage::validate: return 9;
        case yieldctl::Stage::report: return 10;
    }
    return 1;
}

struct Options {
    std::string config_path;
    std::string out_dir;
    std::string model_variant;
    std::uint64_t master_seed = 0;
    bool seed_set = false;
    bool plots = false;
};

yieldctl::PipelineConfig load_config(const Options& opt) {
    yieldctl::PipelineConfig cfg = yieldctl::PipelineConfig::load(opt.config_path);
    if (!opt.model_variant.empty()) {
        try {
            cfg.model.variant = yieldctl::variant_from_name(opt.model_variant);
        } catch (const std::exception& e) {
            throw yieldctl::StageError(yieldctl::Stage::config, e.what());
        }
    }
    if (opt.seed_set) cfg.reseed(opt.master_seed);
    if (opt.plots) cfg.plots = true;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Process-control pipeline: defect classifiers, Shapley attribution, "
                 "ICE/PDP control ranges and defect-rate validation"};
    app.require_subcommand(1);

    Options opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opt.config_path, "pipeline configuration file")
            ->required();
        cmd->add_option("--out", opt.out_dir, "artifact output directory")->required();
        cmd->add_option("--model", opt.model_variant,
                        "model variant override: exact-greedy | goss-leafwise");
        cmd->add_option("--seed", opt.master_seed, "master seed override for every stage")
            ->each([&](const std::string&) { opt.seed_set = true; });
        cmd->add_flag("--plots", opt.plots, "emit ICE/PDP SVG plots");
    };

    struct Verb {
        const char* name;
        const char* help;
        void (*stage)(const yieldctl::PipelineConfig&, const std::filesystem::path&);
    };
    const Verb verbs[] = {
        {"run", "run the full pipeline end to end", &yieldctl::run_pipeline},
        {"synth", "generate a synthetic dataset artifact", &yieldctl::stage_synth},
        {"ingest", "load, quality-check and split the input data", &yieldctl::stage_ingest},
        {"oversample", "balance the training split with SMOTE", &yieldctl::stage_oversample},
        {"train", "fit the boosted-tree model and evaluate it", &yieldctl::stage_train},
        {"explain", "compute Shapley attributions and select main features",
         &yieldctl::stage_explain},
        {"ranges", "derive ICE/PDP control ranges for the main features", &yieldctl::stage_ranges},
        {"validate", "filter the test split by the control ranges and compare defect rates",
         &yieldctl::stage_validate},
        {"report", "re-render the summary from existing artifacts", &yieldctl::stage_report},
    };

    for (const Verb& verb : verbs) add_common(app.add_subcommand(verb.name, verb.help));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    const std::string chosen = app.get_subcommands().front()->get_name();
    try {
        const yieldctl::PipelineConfig cfg = load_config(opt);
        for (const Verb& verb : verbs) {
            if (chosen == verb.name) {
                verb.stage(cfg, opt.out_dir);
                return 0;
            }
        }
        std::cerr << "unknown subcommand: " << chosen << '\n';
        return 1;
    } catch (const yieldctl::StageError& e) {
        std::cerr << "[" << yieldctl::stage_name(e.stage) << "] " << e.what() << '\n';
        return exit_code(e.stage);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
