#include "yieldctl/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "yieldctl/csv.hpp"
#include "yieldctl/ice.hpp"
#include "yieldctl/plot.hpp"
#include "yieldctl/rng.hpp"
#include "yieldctl/shapley.hpp"
#include "yieldctl/validate.hpp"

namespace yieldctl {

namespace fs = std::filesystem;

std::string stage_name(Stage stage) {
    switch (stage) {
        case Stage::config: return "config";
        case Stage::synth: return "synth";
        case Stage::ingest: return "ingest";
        case Stage::oversample: return "oversample";
        case Stage::train: return "train";
        case Stage::explain: return "explain";
        case Stage::ranges: return "ranges";
        case Stage::validate: return "validate";
        case Stage::report: return "report";
    }
    return "unknown";
}

namespace {

[[noreturn]] void fail(Stage stage, const std::string& message) {
    throw StageError(stage, message);
}

template <typename Fn>
void guarded(Stage stage, Fn&& fn) {
    try {
        fn();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        fail(stage, e.what());
    }
}

fs::path need(const fs::path& out_dir, const char* name, Stage stage, const char* producer) {
    fs::path path = out_dir / name;
    if (!fs::exists(path))
        fail(stage, std::string("missing ") + name + " artifact in " + out_dir.string() +
                        " (run '" + producer + "' first)");
    return path;
}

ShapEstimator estimator_from_name(const std::string& name) {
    if (name == "tree-exact") return ShapEstimator::tree_exact;
    if (name == "subset-exact") return ShapEstimator::subset_exact;
    if (name == "sampled") return ShapEstimator::sampled;
    throw Error("unknown shap.estimator '" + name +
                "' (expected tree-exact, subset-exact or sampled)");
}

std::string estimator_name(ShapEstimator estimator) {
    switch (estimator) {
        case ShapEstimator::tree_exact: return "tree-exact";
        case ShapEstimator::subset_exact: return "subset-exact";
        case ShapEstimator::sampled: return "sampled";
    }
    return "unknown";
}

PlantedFeature parse_planted(const std::string& text) {
    // index:sweet_lower:sweet_upper
    const std::size_t c1 = text.find(':');
    const std::size_t c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw Error("synth.relevant entry '" + text + "' must look like index:lower:upper");
    PlantedFeature pf;
    pf.feature = static_cast<std::size_t>(
        parse_double_strict(text.substr(0, c1), "in synth.relevant"));
    pf.sweet_lower = parse_double_strict(text.substr(c1 + 1, c2 - c1 - 1), "in synth.relevant");
    pf.sweet_upper = parse_double_strict(text.substr(c2 + 1), "in synth.relevant");
    return pf;
}

}  // namespace

PipelineConfig PipelineConfig::from_config(const ConfigFile& file) {
    PipelineConfig cfg;

    const std::string input = file.get_string("data.input", "");
    if (!input.empty()) cfg.input = fs::path(input);
    cfg.target_column = file.get_string("data.target", cfg.target_column);
    cfg.keep = file.get_list("data.keep");
    cfg.iqr_k = file.get_double("data.iqr_k", cfg.iqr_k);

    cfg.test_fraction = file.get_double("split.test_fraction", cfg.test_fraction);
    cfg.split_seed = file.get_u64("split.seed", cfg.split_seed);

    cfg.smote.k = file.get_size("smote.k", cfg.smote.k);
    cfg.smote.seed = file.get_u64("smote.seed", cfg.smote.seed);
    cfg.smote.standardize = file.get_bool("smote.standardize", cfg.smote.standardize);
    if (file.has("smote.target_count"))
        cfg.smote.target_count = file.get_size("smote.target_count", 0);

    cfg.model.variant =
        variant_from_name(file.get_string("model.variant", variant_name(cfg.model.variant)));
    cfg.model.n_trees = file.get_size("gbdt.n_trees", cfg.model.n_trees);
    cfg.model.max_depth = file.get_size("gbdt.max_depth", cfg.model.max_depth);
    cfg.model.max_leaves = file.get_size("gbdt.max_leaves", cfg.model.max_leaves);
    cfg.model.learning_rate = file.get_double("gbdt.learning_rate", cfg.model.learning_rate);
    cfg.model.lambda = file.get_double("gbdt.lambda", cfg.model.lambda);
    cfg.model.gamma = file.get_double("gbdt.gamma", cfg.model.gamma);
    cfg.model.min_child_weight =
        file.get_double("gbdt.min_child_weight", cfg.model.min_child_weight);
    cfg.model.goss_a = file.get_double("gbdt.a", cfg.model.goss_a);
    cfg.model.goss_b = file.get_double("gbdt.b", cfg.model.goss_b);
    cfg.model.seed = file.get_u64("gbdt.seed", cfg.model.seed);

    cfg.cv_enabled = file.get_bool("cv.enabled", cfg.cv_enabled);
    cfg.cv_k = file.get_size("cv.k", cfg.cv_k);
    cfg.cv_seed = file.get_u64("cv.seed", cfg.cv_seed);

    cfg.estimator =
        estimator_from_name(file.get_string("shap.estimator", estimator_name(cfg.estimator)));
    cfg.shap_background = file.get_size("shap.background", cfg.shap_background);
    cfg.shap_instances = file.get_size("shap.instances", cfg.shap_instances);
    cfg.shap_permutations = file.get_size("shap.permutations", cfg.shap_permutations);
    cfg.shap_seed = file.get_u64("shap.seed", cfg.shap_seed);

    cfg.selection_threshold = file.get_double("selection.threshold", cfg.selection_threshold);

    if (file.has("ice.alphas")) cfg.alphas = file.get_double_list("ice.alphas");
    cfg.ice_max_instances = file.get_size("ice.max_instances", cfg.ice_max_instances);
    cfg.ice_seed = file.get_u64("ice.seed", cfg.ice_seed);

    cfg.plots = file.get_bool("out.plots", cfg.plots);

    const bool synth_configured =
        file.has("synth.rows") || file.has("synth.features") || file.has("synth.seed") ||
        file.has("synth.base_defect_prob") || file.has("synth.out_defect_prob") ||
        file.has("synth.noise") || file.has("synth.range_lower") ||
        file.has("synth.range_upper") || !file.get_list("synth.relevant").empty();
    if (synth_configured) {
        SynthConfig sc;
        sc.n_rows = file.get_size("synth.rows", sc.n_rows);
        sc.n_features = file.get_size("synth.features", sc.n_features);
        for (const std::string& entry : file.get_list("synth.relevant"))
            sc.relevant.push_back(parse_planted(entry));
        sc.base_defect_prob = file.get_double("synth.base_defect_prob", sc.base_defect_prob);
        sc.out_defect_prob = file.get_double("synth.out_defect_prob", sc.out_defect_prob);
        sc.noise_scale = file.get_double("synth.noise", sc.noise_scale);
        sc.range_lower = file.get_double("synth.range_lower", sc.range_lower);
        sc.range_upper = file.get_double("synth.range_upper", sc.range_upper);
        sc.seed = file.get_u64("synth.seed", sc.seed);
        cfg.synth = sc;
    }

    const auto unread = file.unread_keys();
    if (!unread.empty()) {
        std::string joined;
        for (const auto& key : unread) joined += (joined.empty() ? "" : ", ") + key;
        throw Error("unknown config keys: " + joined);
    }

    if (cfg.input && cfg.synth)
        throw Error("config provides both data.input and synth.*; choose one data source");
    if (!cfg.input && !cfg.synth)
        throw Error("config needs a data source: either data.input or synth.*");
    if (!(cfg.test_fraction > 0.0 && cfg.test_fraction < 1.0))
        throw Error("split.test_fraction must lie in (0,1)");
    if (!(cfg.selection_threshold > 0.0 && cfg.selection_threshold <= 1.0))
        throw Error("selection.threshold must lie in (0,1]");
    if (cfg.alphas.empty()) throw Error("ice.alphas must not be empty");
    for (double alpha : cfg.alphas)
        if (!(alpha > 0.0)) throw Error("ice.alphas entries must be positive");
    if (cfg.smote.k < 1) throw Error("smote.k must be >= 1");
    return cfg;
}

PipelineConfig PipelineConfig::load(const fs::path& path) {
    try {
        return from_config(ConfigFile::parse(path));
    } catch (const std::exception& e) {
        throw StageError(Stage::config, e.what());
    }
}

void PipelineConfig::reseed(std::uint64_t master) {
    split_seed = derive_seed(master, 1);
    smote.seed = derive_seed(master, 2);
    model.seed = derive_seed(master, 3);
    cv_seed = derive_seed(master, 4);
    shap_seed = derive_seed(master, 5);
    ice_seed = derive_seed(master, 6);
    if (synth) synth->seed = derive_seed(master, 7);
}

namespace {

ProcessDataset load_artifact(const fs::path& path, const PipelineConfig& cfg) {
    return load_csv(path, cfg.target_column);
}

std::string size_str(std::size_t value) { return std::to_string(value); }

}  // namespace

void stage_synth(const PipelineConfig& cfg, const fs::path& out_dir) {
    guarded(Stage::synth, [&] {
        if (!cfg.synth) throw Error("config has no synth.* section");
        fs::create_directories(out_dir);
        auto [ds, truth] = generate(*cfg.synth);
        save_csv(ds, out_dir / artifact::data, cfg.target_column);

        std::vector<std::vector<std::string>> rows;
        for (const PlantedFeature& pf : truth.relevant)
            rows.push_back({size_str(pf.feature), ds.feature_names()[pf.feature],
                            format_double(pf.sweet_lower), format_double(pf.sweet_upper)});
        write_csv(out_dir / artifact::ground_truth,
                  {"feature", "name", "sweet_lower", "sweet_upper"}, rows);
    });
}

void stage_ingest(const PipelineConfig& cfg, const fs::path& out_dir) {
    guarded(Stage::ingest, [&] {
        fs::create_directories(out_dir);
        fs::path input;
        if (cfg.input) {
            input = *cfg.input;
            if (!fs::exists(input)) throw Error("input file does not exist: " + input.string());
        } else {
            input = need(out_dir, artifact::data, Stage::ingest, "synth");
        }

        ProcessDataset ds = load_artifact(input, cfg);
        if (!cfg.keep.empty()) ds = select_features(ds, cfg.keep);

        QualityReport quality = quality_check(ds, cfg.iqr_k);
        std::vector<std::vector<std::string>> rows;
        for (std::size_t j = 0; j < ds.cols(); ++j)
            rows.push_back({ds.feature_names()[j], size_str(quality.missing_count[j]),
                            size_str(quality.outlier_count[j])});
        write_csv(out_dir / artifact::quality, {"feature", "missing_count", "outlier_count"},
                  rows);

        SplitPair pair = split(ds, cfg.test_fraction, cfg.split_seed);
        save_csv(pair.train, out_dir / artifact::train_split, cfg.target_column);
        save_csv(pair.test, out_dir / artifact::test_split, cfg.target_column);
    });
}

void stage_oversample(const PipelineConfig& cfg, const fs::path& out_dir) {
    guarded(Stage::oversample, [&] {
        const fs::path train_path =
            need(out_dir, artifact::train_split, Stage::oversample, "ingest");
        ProcessDataset train = load_artifact(train_path, cfg);
        ProcessDataset balanced = oversample(train, cfg.smote);
        save_csv(balanced, out_dir / artifact::oversampled, cfg.target_column);
    });
}

void stage_train(const PipelineConfig& cfg, const fs::path& out_dir) {
    guarded(Stage::train, [&] {
        const fs::path train_path = need(out_dir, artifact::oversampled, Stage::train, "oversample");
        const fs::path test_path = need(out_dir, artifact::test_split, Stage::train, "ingest");
        ProcessDataset train_set = load_artifact(train_path, cfg);
        ProcessDataset test_set = load_artifact(test_path, cfg);

        BoostedEnsemble ens = train(train_set, cfg.model);
        save_model(ens, out_dir / artifact::model);

        ConfusionMatrix cm = evaluate(ens, test_set);
        write_csv(out_dir / artifact::eval,
                  {"tp", "fp", "tn", "fn", "accuracy_percent", "accuracy_display"},
                  {{size_str(cm.tp), size_str(cm.fp), size_str(cm.tn), size_str(cm.fn),
                    format_double(cm.accuracy_percent()), format_percent2(cm.accuracy_percent())}});

        std::vector<std::vector<std::string>> cv_rows;
        if (cfg.cv_enabled) {
            CvResult cv = cross_validate(train_set, cfg.model, cfg.cv_k, cfg.cv_seed);
            for (std::size_t f = 0; f < cv.folds.size(); ++f) {
                const auto& fold = cv.folds[f];
                cv_rows.push_back({size_str(f + 1),
                                   fold.degenerate ? "" : format_double(fold.accuracy),
                                   fold.degenerate ? "1" : "0"});
            }
            cv_rows.push_back({"mean",
                               std::isnan(cv.mean_accuracy) ? "" : format_double(cv.mean_accuracy),
                               "0"});
        }
        write_csv(out_dir / artifact::cv, {"fold", "accuracy", "degenerate"}, cv_rows);
    });
}

void stage_explain(const PipelineConfig& cfg, const fs::path& out_dir) {
    guarded(Stage::explain, [&] {
        const fs::path model_path = need(out_dir, artifact::model, Stage::explain, "train");
        const fs::path train_path =
            need(out_dir, artifact::oversampled, Stage::explain, "oversample");
        BoostedEnsemble ens = load_model(model_path);
        ProcessDataset train_set = load_artifact(train_path, cfg);

        std::vector<std::size_t> instance_rows;
        if (train_set.rows() <= cfg.shap_instances) {
            instance_rows.resize(train_set.rows());
            for (std::size_t i = 0; i < train_set.rows(); ++i) instance_rows[i] = i;
        } else {
            Rng rng(derive_seed(cfg.shap_seed, 1));
            instance_rows =
                sample_without_replacement(train_set.rows(), cfg.shap_instances, rng);
        }

        ProcessDataset background = train_set;
        if (train_set.rows() > cfg.shap_background) {
            Rng rng(derive_seed(cfg.shap_seed, 2));
            background = take_rows(
                train_set, sample_without_replacement(train_set.rows(), cfg.shap_background, rng));
        }

        RawModel raw = raw_scorer(ens);
        std::vector<std::vector<double>> phi;
        phi.reserve(instance_rows.size());
        for (std::size_t k = 0; k < instance_rows.size(); ++k) {
            auto row = train_set.row(instance_rows[k]);
            switch (cfg.estimator) {
                case ShapEstimator::tree_exact:
                    phi.push_back(shapley_tree_exact(ens, row, background));
                    break;
                case ShapEstimator::subset_exact:
                    phi.push_back(shapley_exact(raw, row, background, ens.n_features));
                    break;
                case ShapEstimator::sampled:
                    phi.push_back(shapley_sampled(raw, row, background, ens.n_features,
                                                  cfg.shap_permutations,
                                                  derive_seed(cfg.shap_seed, 100 + k)));
                    break;
            }
        }

        ShapleyReport report = build_report(std::move(phi), cfg.selection_threshold);

        std::vector<std::string> phi_header{"instance"};
        for (const auto& name : train_set.feature_names()) phi_header.push_back(name);
        std::vector<std::vector<std::string>> phi_rows;
        for (std::size_t k = 0; k < instance_rows.size(); ++k) {
            std::vector<std::string> row{size_str(instance_rows[k])};
            for (double value : report.phi[k]) row.push_back(format_double(value));
            phi_rows.push_back(std::move(row));
        }
        write_csv(out_dir / artifact::phi, phi_header, phi_rows);

        std::vector<std::vector<std::string>> rank_rows;
        for (std::size_t r = 0; r < report.importance.order.size(); ++r) {
            const std::size_t feature = report.importance.order[r];
            const bool selected = r < report.main_features.size();
            rank_rows.push_back({size_str(r + 1), train_set.feature_names()[feature],
                                 format_double(report.importance.mean_abs[feature]),
                                 format_double(report.importance.cumulative_ratio[r]),
                                 selected ? "1" : "0"});
        }
        write_csv(out_dir / artifact::shapley,
                  {"rank", "feature", "mean_abs", "cumulative_ratio", "selected"}, rank_rows);
    });
}

void stage_ranges(const PipelineConfig& cfg, const fs::path& out_dir) {
    guarded(Stage::ranges, [&] {
        const fs::path model_path = need(out_dir, artifact::model, Stage::ranges, "train");
        const fs::path train_path = need(out_dir, artifact::train_split, Stage::ranges, "ingest");
        const fs::path shapley_path = need(out_dir, artifact::shapley, Stage::ranges, "explain");

        BoostedEnsemble ens = load_model(model_path);
        ProcessDataset train_set = load_artifact(train_path, cfg);

        CsvTable ranked = read_csv(shapley_path);
        const std::size_t name_col = ranked.column_index("feature");
        const std::size_t selected_col = ranked.column_index("selected");
        std::vector<std::size_t> main_features;
        for (const auto& row : ranked.rows)
            if (row[selected_col] == "1")
                main_features.push_back(train_set.feature_index(row[name_col]));

        ProbModel prob = prob_scorer(ens);
        std::vector<std::vector<std::string>> curve_rows;
        std::vector<std::vector<std::string>> range_rows;
        for (std::size_t feature : main_features) {
            IceSurface surface =
                ice_surface(prob, train_set, feature, cfg.ice_max_instances, cfg.ice_seed);
            const std::string& name = train_set.feature_names()[feature];
            for (std::size_t q = 0; q < surface.curves.size(); ++q)
                for (std::size_t p = 0; p < surface.grid.size(); ++p)
                    curve_rows.push_back({name, format_double(surface.grid[p]),
                                          size_str(surface.instance_rows[q]),
                                          format_double(surface.curves[q][p])});
            for (std::size_t p = 0; p < surface.grid.size(); ++p)
                curve_rows.push_back(
                    {name, format_double(surface.grid[p]), "pdp", format_double(surface.pdp[p])});

            for (double alpha : cfg.alphas) {
                ControlRange range = control_range(surface.pdp, surface.grid, alpha, feature);
                range_rows.push_back({name, format_double(alpha), format_double(range.lower),
                                      format_double(range.upper)});
            }
            if (cfg.plots) {
                fs::create_directories(out_dir / "plots");
                write_ice_svg(surface, name, out_dir / "plots" / ("ice_" + name + ".svg"));
            }
        }
        write_csv(out_dir / artifact::ice_curves,
                  {"feature", "grid_value", "instance", "prediction"}, curve_rows);
        write_csv(out_dir / artifact::ranges, {"feature", "alpha", "lower", "upper"}, range_rows);
    });
}

void stage_validate(const PipelineConfig& cfg, const fs::path& out_dir) {
    guarded(Stage::validate, [&] {
        const fs::path test_path = need(out_dir, artifact::test_split, Stage::validate, "ingest");
        const fs::path ranges_path = need(out_dir, artifact::ranges, Stage::validate, "ranges");
        ProcessDataset test_set = load_artifact(test_path, cfg);

        CsvTable table = read_csv(ranges_path);
        const std::size_t name_col = table.column_index("feature");
        const std::size_t alpha_col = table.column_index("alpha");
        const std::size_t lower_col = table.column_index("lower");
        const std::size_t upper_col = table.column_index("upper");

        std::vector<std::pair<double, std::vector<ControlRange>>> per_alpha;
        for (const auto& row : table.rows) {
            ControlRange range;
            range.feature = test_set.feature_index(row[name_col]);
            range.alpha = parse_double_strict(row[alpha_col], "in ranges.csv");
            range.lower = parse_double_strict(row[lower_col], "in ranges.csv");
            range.upper = parse_double_strict(row[upper_col], "in ranges.csv");
            auto slot = std::find_if(per_alpha.begin(), per_alpha.end(),
                                     [&](const auto& entry) { return entry.first == range.alpha; });
            if (slot == per_alpha.end()) {
                per_alpha.push_back({range.alpha, {range}});
            } else {
                slot->second.push_back(range);
            }
        }

        ValidationReport report = validation_report(test_set, per_alpha);

        std::vector<std::vector<std::string>> rows;
        for (const ValidationRow& row : report.per_alpha)
            rows.push_back({format_double(row.alpha), size_str(row.rate.normal),
                            size_str(row.rate.defect),
                            row.rate.percent ? format_double(*row.rate.percent) : "",
                            format_rate(row.rate), row.improved ? "1" : "0"});
        rows.push_back({"original", size_str(report.baseline.normal),
                        size_str(report.baseline.defect),
                        report.baseline.percent ? format_double(*report.baseline.percent) : "",
                        format_rate(report.baseline), "0"});
        write_csv(out_dir / artifact::validation,
                  {"alpha", "normal", "defect", "defect_rate_raw", "defect_rate", "improved"},
                  rows);

        std::ofstream table_out(out_dir / artifact::validation_table);
        if (!table_out) throw Error("cannot write validation table");
        table_out << render_validation_table(report);
    });
}

void stage_report(const PipelineConfig& cfg, const fs::path& out_dir) {
    guarded(Stage::report, [&] {
        (void)cfg;
        const fs::path quality_path = need(out_dir, artifact::quality, Stage::report, "ingest");
        const fs::path train_path = need(out_dir, artifact::train_split, Stage::report, "ingest");
        const fs::path test_path = need(out_dir, artifact::test_split, Stage::report, "ingest");
        const fs::path oversampled_path =
            need(out_dir, artifact::oversampled, Stage::report, "oversample");
        const fs::path eval_path = need(out_dir, artifact::eval, Stage::report, "train");
        const fs::path cv_path = need(out_dir, artifact::cv, Stage::report, "train");
        const fs::path shapley_path = need(out_dir, artifact::shapley, Stage::report, "explain");
        const fs::path ranges_path = need(out_dir, artifact::ranges, Stage::report, "ranges");
        const fs::path validation_path =
            need(out_dir, artifact::validation_table, Stage::report, "validate");

        auto count_labels = [&](const fs::path& path) {
            CsvTable table = read_csv(path);
            const std::size_t target = table.column_index(cfg.target_column);
            std::size_t normal = 0, defect = 0;
            for (const auto& row : table.rows) (row[target] == "0" ? defect : normal) += 1;
            return std::pair<std::size_t, std::size_t>{normal, defect};
        };
        const auto [train_normal, train_defect] = count_labels(train_path);
        const auto [test_normal, test_defect] = count_labels(test_path);
        const auto [over_normal, over_defect] = count_labels(oversampled_path);

        std::ostringstream out;
        out << "yieldctl pipeline summary\n";
        out << "=========================\n\n";

        CsvTable quality = read_csv(quality_path);
        std::size_t outlier_features = 0;
        const std::size_t outlier_col = quality.column_index("outlier_count");
        for (const auto& row : quality.rows)
            if (row[outlier_col] != "0") ++outlier_features;
        out << "features: " << quality.rows.size() << " (" << outlier_features
            << " with IQR-fence outliers)\n";
        out << "train split: " << train_normal << " normal / " << train_defect << " defective\n";
        out << "test split:  " << test_normal << " normal / " << test_defect << " defective\n";
        out << "oversampled train: " << over_normal << " normal / " << over_defect
            << " defective\n\n";

        CsvTable eval = read_csv(eval_path);
        out << "test accuracy: " << eval.rows.front()[eval.column_index("accuracy_display")]
            << "% (tp " << eval.rows.front()[eval.column_index("tp")] << ", fp "
            << eval.rows.front()[eval.column_index("fp")] << ", tn "
            << eval.rows.front()[eval.column_index("tn")] << ", fn "
            << eval.rows.front()[eval.column_index("fn")] << ")\n";

        auto short_num = [](const std::string& exact) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.4g", parse_double_strict(exact, "in summary"));
            return std::string(buf);
        };

        CsvTable cv = read_csv(cv_path);
        if (!cv.rows.empty()) {
            out << "cross-validation accuracy:";
            const std::size_t fold_col = cv.column_index("fold");
            const std::size_t acc_col = cv.column_index("accuracy");
            for (const auto& row : cv.rows)
                out << ' ' << row[fold_col] << '='
                    << (row[acc_col].empty() ? "n/a" : short_num(row[acc_col]));
            out << '\n';
        }
        out << '\n';

        CsvTable ranked = read_csv(shapley_path);
        out << "main features (cumulative |shapley| selection):\n";
        const std::size_t sel_col = ranked.column_index("selected");
        const std::size_t feat_col = ranked.column_index("feature");
        const std::size_t mean_col = ranked.column_index("mean_abs");
        const std::size_t ratio_col = ranked.column_index("cumulative_ratio");
        for (const auto& row : ranked.rows)
            if (row[sel_col] == "1")
                out << "  " << row[feat_col] << "  mean|phi|=" << short_num(row[mean_col])
                    << "  cumulative=" << short_num(row[ratio_col]) << '\n';
        out << '\n';

        CsvTable ranges = read_csv(ranges_path);
        out << "control ranges:\n";
        const std::size_t rf = ranges.column_index("feature");
        const std::size_t ra = ranges.column_index("alpha");
        const std::size_t rl = ranges.column_index("lower");
        const std::size_t ru = ranges.column_index("upper");
        for (const auto& row : ranges.rows)
            out << "  " << row[rf] << "  alpha=" << row[ra] << "  [" << short_num(row[rl]) << ", "
                << short_num(row[ru]) << "]\n";
        out << '\n';

        std::ifstream validation(validation_path);
        out << "validation (filtered test set):\n" << validation.rdbuf();

        std::ofstream summary(out_dir / artifact::summary);
        if (!summary) throw Error("cannot write summary");
        summary << out.str();
    });
}

void run_pipeline(const PipelineConfig& cfg, const fs::path& out_dir) {
    if (cfg.synth) stage_synth(cfg, out_dir);
    stage_ingest(cfg, out_dir);
    stage_oversample(cfg, out_dir);
    stage_train(cfg, out_dir);
    stage_explain(cfg, out_dir);
    stage_ranges(cfg, out_dir);
    stage_validate(cfg, out_dir);
    stage_report(cfg, out_dir);
}

}  // namespace yieldctl
