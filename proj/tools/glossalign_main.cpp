#include <cstdint>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "glossalign/core.hpp"
#include "glossalign/dtw.hpp"
#include "glossalign/gloss.hpp"
#include "glossalign/io.hpp"
#include "glossalign/losses.hpp"
#include "glossalign/pipeline.hpp"
#include "glossalign/selection.hpp"
#include "glossalign/verification.hpp"

namespace {

using namespace glossalign;

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            raise(Errc::parse_error, "cannot parse '" + item + "' as a number");
        }
    }
    if (values.empty()) raise(Errc::parse_error, "expected a comma-separated list of numbers");
    return values;
}

/// Token ids from a dim-1 integer sequence; reserved ids stay out of datasets.
std::vector<int> content_tokens(const Sequence& seq, const std::string& field) {
    std::vector<int> ids = seq.to_tokens();
    for (int id : ids) {
        if (id < 3) raise(Errc::parse_error, field + " token ids must be >= 3 (0..2 are reserved)");
    }
    return ids;
}

struct AlignArgs {
    std::string input, out, cost = "euclidean";
};

int run_align(const AlignArgs& args) {
    const std::vector<PairRecord> dataset = read_dataset(args.input);
    const TargetMap targets = precompute_targets(dataset, cost_kind_from_string(args.cost));
    std::ostringstream out;
    for (const PairRecord& pair : dataset) {
        out << align_record_to_json(pair.id, targets.at(pair.id)).dump() << '\n';
    }
    atomic_write_file(args.out, out.str());
    std::cout << "aligned " << dataset.size() << " pairs -> " << args.out << "\n";
    return 0;
}

struct FilterArgs {
    std::string input, out, cost = "euclidean";
    double threshold = 0.5;
};

int run_filter(const FilterArgs& args) {
    const std::vector<PairRecord> dataset = read_dataset(args.input);
    const TargetMap targets = precompute_targets(dataset, cost_kind_from_string(args.cost));
    const std::vector<PairRecord> kept = filter_dataset(dataset, targets, args.threshold);
    write_dataset(kept, args.out);

    json dropped = json::array();
    for (const PairRecord& pair : dataset) {
        const PairTarget& target = targets.at(pair.id);
        if (target.norm_cost > args.threshold) {
            dropped.push_back(json{{"id", pair.id}, {"norm_cost", target.norm_cost}});
        }
    }
    std::cout << json{{"kept", kept.size()},
                      {"total", dataset.size()},
                      {"threshold", args.threshold},
                      {"dropped", std::move(dropped)}}
                     .dump()
              << "\n";
    return 0;
}

struct TrainGlossArgs {
    std::string input, out, report;
    int epochs = 100;
    double lr = 0.15;
    std::uint64_t seed = 0;
    int embed_dim = 16;
    int hidden_dim = 32;
    double momentum = 0.9;
};

int run_train_gloss(const TrainGlossArgs& args) {
    const std::vector<PairRecord> dataset = read_dataset(args.input);
    if (dataset.empty()) raise(Errc::empty_sequence, "dataset is empty");

    std::vector<TokenPair> pairs;
    int max_id = 3;
    pairs.reserve(dataset.size());
    for (const PairRecord& pair : dataset) {
        TokenPair tp;
        tp.input = content_tokens(pair.source, "source");
        tp.target = pair.gloss_ids ? *pair.gloss_ids : content_tokens(pair.summary, "summary");
        for (int id : tp.target) {
            if (id < 3) raise(Errc::parse_error, "gloss token ids must be >= 3 (0..2 are reserved)");
        }
        for (int id : tp.input) max_id = std::max(max_id, id);
        for (int id : tp.target) max_id = std::max(max_id, id);
        pairs.push_back(std::move(tp));
    }

    const Vocabulary vocab = Vocabulary::sized(max_id - 2);
    GlossModel model(GlossDims{vocab.size(), args.embed_dim, args.hidden_dim}, args.seed);
    const GlossTrainConfig config{args.epochs, args.lr, args.seed, args.momentum};
    const std::vector<GlossEpoch> epochs = train(model, pairs, config);

    atomic_write_file(args.out, gloss_checkpoint_json(model, vocab).dump(2) + "\n");
    if (!args.report.empty()) {
        json arr = json::array();
        for (const GlossEpoch& e : epochs) {
            arr.push_back(json{{"epoch", e.epoch}, {"loss", e.loss}, {"exact_match", e.exact_match}});
        }
        const json report{{"config", json{{"epochs", args.epochs},
                                          {"lr", args.lr},
                                          {"seed", args.seed},
                                          {"embed_dim", args.embed_dim},
                                          {"hidden_dim", args.hidden_dim},
                                          {"momentum", args.momentum}}},
                          {"epochs", arr},
                          {"final", json{{"loss", epochs.back().loss},
                                         {"exact_match", epochs.back().exact_match},
                                         {"epochs", epochs.size()}}}};
        atomic_write_file(args.report, report.dump(2) + "\n");
    }
    std::cout << "trained gloss model on " << pairs.size() << " pairs; final exact-match "
              << epochs.back().exact_match << "\n";
    return 0;
}

struct TrainFilterArgs {
    std::string input, out, report, mode = "dsrf", cost = "euclidean", normalization = "none";
    int epochs = 30;
    double lr = 0.5;
    std::uint64_t seed = 0;
    double threshold = 0.5;
    double lambda_sp = 1.0;
    double lambda_ce = 1.0;
};

RunConfig build_run_config(const TrainFilterArgs& args) {
    RunConfig config;
    config.mode = run_mode_from_string(args.mode);
    config.epochs = args.epochs;
    config.lr = args.lr;
    config.seed = args.seed;
    config.filter_threshold = args.threshold;
    config.loss.lambda_sp = args.lambda_sp;
    config.loss.lambda_ce = args.lambda_ce;
    config.loss.normalization = normalization_from_string(args.normalization);
    return config;
}

int run_train_filter(const TrainFilterArgs& args) {
    const std::vector<PairRecord> dataset = read_dataset(args.input);
    const RunConfig config = build_run_config(args);
    const CostKind cost = cost_kind_from_string(args.cost);
    const TargetMap targets = precompute_targets(dataset, cost);
    const std::vector<PairRecord> retained =
        mode_filters(config.mode) ? filter_dataset(dataset, targets, config.filter_threshold) : dataset;
    if (retained.empty()) raise(Errc::empty_sequence, "no pairs retained after filtering");

    const FilterTrainResult result = train_result_filter(retained, targets, config);
    atomic_write_file(args.out, scorer_checkpoint_json(result.scorer).dump(2) + "\n");
    if (!args.report.empty()) {
        atomic_write_file(args.report, report_file_json(config, result.epochs).dump(2) + "\n");
    }
    std::cout << "trained scorer (" << args.mode << ") on " << retained.size() << " of "
              << dataset.size() << " pairs; final accuracy " << result.epochs.back().accuracy << "\n";
    return 0;
}

struct EfficiencyArgs {
    std::string input, out, cost = "euclidean", normalization = "none";
    int budget = 30;
    double lr = 0.5;
    std::uint64_t seed = 0;
    double threshold = 0.5;
    double lambda_sp = 1.0;
    double lambda_ce = 1.0;
};

int run_efficiency(const EfficiencyArgs& args) {
    const std::vector<PairRecord> dataset = read_dataset(args.input);
    RunConfig config;
    config.epochs = args.budget;
    config.lr = args.lr;
    config.seed = args.seed;
    config.filter_threshold = args.threshold;
    config.loss.lambda_sp = args.lambda_sp;
    config.loss.lambda_ce = args.lambda_ce;
    config.loss.normalization = normalization_from_string(args.normalization);

    const EfficiencyResult result = run_efficiency_experiment(dataset, config, cost_kind_from_string(args.cost));
    atomic_write_file(args.out, efficiency_report_json(config, result).dump(2) + "\n");
    for (const auto& [mode, epochs] : result.modes) {
        std::cout << mode << ": final accuracy " << epochs.back().accuracy << " (trained on "
                  << epochs.back().pairs_retained << " pairs)\n";
    }
    return 0;
}

struct OracleCheckArgs {
    int max_len = 5;
    int trials = 500;
    std::uint64_t seed = 20240901;
};

int run_oracle_check(const OracleCheckArgs& args) {
    if (args.max_len < 1 || args.max_len > static_cast<int>(kOracleMaxLen)) {
        throw CLI::ValidationError("--max-len must be in 1.." + std::to_string(kOracleMaxLen));
    }
    bool ok = true;
    auto report = [&ok](const std::string& name, const CheckStats& stats) {
        ok = ok && stats.passed();
        std::cout << (stats.passed() ? "ok   " : "FAIL ") << name << " (" << stats.cases << " cases)";
        if (!stats.passed()) std::cout << ": " << stats.first_failure;
        std::cout << "\n";
    };
    report("dtw exhaustive / alphabet {0,1,2} len<=" + std::to_string(std::min(args.max_len, 5)),
           check_dtw_exhaustive(std::min(args.max_len, 5)));
    report("dtw random dyadic len<=" + std::to_string(args.max_len),
           check_dtw_random(args.max_len, args.trials, args.seed));
    report("monotonic decode random dyadic dims<=" + std::to_string(args.max_len),
           check_decode_random(args.max_len, args.trials, args.seed + 1));
    return ok ? 0 : 1;
}

struct LossArgs {
    std::string truth, pred, kind;
    double epsilon = 1e-12;
};

int run_loss(const LossArgs& args) {
    const AlignmentVector truth(parse_number_list(args.truth));
    const AlignmentVector pred(parse_number_list(args.pred));
    double value = 0.0;
    if (args.kind == "ce") {
        value = cross_entropy_alignment(pred, truth, args.epsilon);
    } else if (args.kind == "sp") {
        value = sp_loss(truth, pred);
    } else {
        value = l2_loss(truth, pred);
    }
    std::printf("%.6f\n", value);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sequence alignment, data-pair selection and gloss training toolkit"};
    app.require_subcommand(1);

    AlignArgs align_args;
    CLI::App* align = app.add_subcommand("align", "DTW-align each pair and emit path, 1D vector and normalized cost");
    align->add_option("--input", align_args.input, "pairs JSONL")->required();
    align->add_option("--cost", align_args.cost, "local cost function")
        ->check(CLI::IsMember({"abs", "euclidean", "token"}));
    align->add_option("--out", align_args.out, "output JSONL")->required();

    FilterArgs filter_args;
    CLI::App* filter = app.add_subcommand("filter", "drop pairs whose normalized DTW cost exceeds the threshold");
    filter->add_option("--input", filter_args.input, "pairs JSONL")->required();
    filter->add_option("--threshold", filter_args.threshold, "max normalized cost to keep");
    filter->add_option("--cost", filter_args.cost, "local cost function")
        ->check(CLI::IsMember({"abs", "euclidean", "token"}));
    filter->add_option("--out", filter_args.out, "retained pairs JSONL")->required();

    TrainGlossArgs gloss_args;
    CLI::App* train_gloss = app.add_subcommand("train-gloss", "train the token-to-gloss model");
    train_gloss->add_option("--input", gloss_args.input, "pairs JSONL with token sources")->required();
    train_gloss->add_option("--epochs", gloss_args.epochs, "training epochs")->check(CLI::PositiveNumber);
    train_gloss->add_option("--lr", gloss_args.lr, "learning rate");
    train_gloss->add_option("--seed", gloss_args.seed, "rng seed")->required();
    train_gloss->add_option("--out", gloss_args.out, "model checkpoint path")->required();
    train_gloss->add_option("--report", gloss_args.report, "optional report JSON path");
    train_gloss->add_option("--embed-dim", gloss_args.embed_dim)->check(CLI::PositiveNumber);
    train_gloss->add_option("--hidden-dim", gloss_args.hidden_dim)->check(CLI::PositiveNumber);
    train_gloss->add_option("--momentum", gloss_args.momentum);

    TrainFilterArgs tf_args;
    CLI::App* train_filter = app.add_subcommand("train-filter", "train the selection scorer against DTW targets");
    train_filter->add_option("--mode", tf_args.mode, "training configuration")
        ->check(CLI::IsMember({"base", "ds", "rf", "dsrf"}));
    train_filter->add_option("--input", tf_args.input, "pairs JSONL")->required();
    train_filter->add_option("--epochs", tf_args.epochs)->check(CLI::PositiveNumber);
    train_filter->add_option("--lr", tf_args.lr);
    train_filter->add_option("--seed", tf_args.seed, "rng seed")->required();
    train_filter->add_option("--out", tf_args.out, "scorer checkpoint path")->required();
    train_filter->add_option("--report", tf_args.report, "optional report JSON path");
    train_filter->add_option("--threshold", tf_args.threshold);
    train_filter->add_option("--lambda-sp", tf_args.lambda_sp);
    train_filter->add_option("--lambda-ce", tf_args.lambda_ce);
    train_filter->add_option("--cost", tf_args.cost)->check(CLI::IsMember({"abs", "euclidean", "token"}));
    train_filter->add_option("--normalization", tf_args.normalization)
        ->check(CLI::IsMember({"min-max", "none"}));

    EfficiencyArgs eff_args;
    CLI::App* efficiency = app.add_subcommand("efficiency", "compare the four training configurations");
    efficiency->add_option("--input", eff_args.input, "pairs JSONL")->required();
    efficiency->add_option("--budget", eff_args.budget, "epochs per mode")->check(CLI::PositiveNumber);
    efficiency->add_option("--seed", eff_args.seed, "rng seed")->required();
    efficiency->add_option("--out", eff_args.out, "report JSON path")->required();
    efficiency->add_option("--lr", eff_args.lr);
    efficiency->add_option("--threshold", eff_args.threshold);
    efficiency->add_option("--lambda-sp", eff_args.lambda_sp);
    efficiency->add_option("--lambda-ce", eff_args.lambda_ce);
    efficiency->add_option("--cost", eff_args.cost)->check(CLI::IsMember({"abs", "euclidean", "token"}));
    efficiency->add_option("--normalization", eff_args.normalization)
        ->check(CLI::IsMember({"min-max", "none"}));

    OracleCheckArgs oracle_args;
    CLI::App* oracle = app.add_subcommand("oracle-check", "run the DTW and decode oracle equivalence suites");
    oracle->add_option("--max-len", oracle_args.max_len, "max sequence length / grid dim");
    oracle->add_option("--trials", oracle_args.trials, "random cases per suite")->check(CLI::PositiveNumber);
    oracle->add_option("--seed", oracle_args.seed, "rng seed");

    LossArgs loss_args;
    CLI::App* loss = app.add_subcommand("loss", "evaluate a loss on two alignment vectors");
    loss->add_option("--truth", loss_args.truth, "comma-separated values")->required();
    loss->add_option("--pred", loss_args.pred, "comma-separated values")->required();
    loss->add_option("--kind", loss_args.kind, "loss kind")
        ->required()
        ->check(CLI::IsMember({"ce", "sp", "l2"}));
    loss->add_option("--epsilon", loss_args.epsilon);

    try {
        app.parse(argc, argv);
        if (align->parsed()) return run_align(align_args);
        if (filter->parsed()) return run_filter(filter_args);
        if (train_gloss->parsed()) return run_train_gloss(gloss_args);
        if (train_filter->parsed()) return run_train_filter(tf_args);
        if (efficiency->parsed()) return run_efficiency(eff_args);
        if (oracle->parsed()) return run_oracle_check(oracle_args);
        if (loss->parsed()) return run_loss(loss_args);
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    } catch (const glossalign::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
