#pragma once

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "json.hpp"

#include "glossalign/core.hpp"
#include "glossalign/gloss.hpp"
#include "glossalign/pipeline.hpp"
#include "glossalign/selection.hpp"

namespace glossalign {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Atomic file writes
// ---------------------------------------------------------------------------

/// Write-temp-then-rename so consumers never observe partial output.
inline void atomic_write_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) raise(Errc::parse_error, "cannot open '" + tmp + "' for writing");
        out << content;
        if (!out.good()) raise(Errc::parse_error, "failed writing '" + tmp + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        raise(Errc::parse_error, "cannot rename temp file onto '" + path + "': " + ec.message());
    }
}

// ---------------------------------------------------------------------------
// Sequences and pair records
// ---------------------------------------------------------------------------

inline json sequence_to_json(const Sequence& seq) {
    json rows = json::array();
    for (const FeatureVector& frame : seq.frames()) rows.push_back(frame);
    return rows;
}

inline Sequence sequence_from_json(const json& rows, const std::string& field) {
    if (!rows.is_array()) raise(Errc::parse_error, field + " must be an array of frames");
    std::vector<FeatureVector> frames;
    frames.reserve(rows.size());
    for (const json& row : rows) {
        if (!row.is_array()) raise(Errc::parse_error, field + " frames must be arrays of numbers");
        FeatureVector frame;
        frame.reserve(row.size());
        for (const json& v : row) {
            if (!v.is_number()) raise(Errc::parse_error, field + " frames must contain numbers");
            frame.push_back(v.get<double>());
        }
        frames.push_back(std::move(frame));
    }
    return Sequence(std::move(frames));
}

inline json pair_to_json(const PairRecord& pair) {
    json j;
    j["id"] = pair.id;
    j["source"] = sequence_to_json(pair.source);
    j["summary"] = sequence_to_json(pair.summary);
    if (pair.gloss_ids) j["gloss"] = *pair.gloss_ids;
    return j;
}

inline PairRecord pair_from_json(const json& j) {
    if (!j.is_object()) raise(Errc::parse_error, "record must be a JSON object");
    if (!j.contains("id") || !j["id"].is_string() || j["id"].get<std::string>().empty()) {
        raise(Errc::parse_error, "record needs a non-empty string 'id'");
    }
    if (!j.contains("source") || !j.contains("summary")) {
        raise(Errc::parse_error, "record needs 'source' and 'summary' arrays");
    }
    PairRecord pair{j["id"].get<std::string>(), sequence_from_json(j["source"], "source"),
                    sequence_from_json(j["summary"], "summary"), {}};
    if (j.contains("gloss")) {
        if (!j["gloss"].is_array()) raise(Errc::parse_error, "'gloss' must be an array of token ids");
        std::vector<int> ids;
        ids.reserve(j["gloss"].size());
        for (const json& v : j["gloss"]) {
            if (!v.is_number_integer()) raise(Errc::parse_error, "'gloss' entries must be integers");
            ids.push_back(v.get<int>());
        }
        pair.gloss_ids = std::move(ids);
    }
    return pair;
}

/// Parse JSON-Lines pair records; blank lines are ignored, duplicate ids are
/// rejected.
inline std::vector<PairRecord> parse_dataset(std::istream& in, const std::string& origin) {
    std::vector<PairRecord> pairs;
    std::set<std::string> ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            raise(Errc::parse_error, origin + ":" + std::to_string(line_no) + ": " + e.what());
        }
        try {
            pairs.push_back(pair_from_json(j));
        } catch (const Error& e) {
            throw Error(e.code(), origin + ":" + std::to_string(line_no) + ": " + e.what());
        }
        if (!ids.insert(pairs.back().id).second) {
            raise(Errc::parse_error,
                  origin + ":" + std::to_string(line_no) + ": duplicate id '" + pairs.back().id + "'");
        }
    }
    return pairs;
}

inline std::vector<PairRecord> read_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::parse_error, "cannot open dataset '" + path + "'");
    return parse_dataset(in, path);
}

inline std::string dataset_to_jsonl(const std::vector<PairRecord>& pairs) {
    std::ostringstream out;
    for (const PairRecord& pair : pairs) out << pair_to_json(pair).dump() << '\n';
    return out.str();
}

inline void write_dataset(const std::vector<PairRecord>& pairs, const std::string& path) {
    atomic_write_file(path, dataset_to_jsonl(pairs));
}

// ---------------------------------------------------------------------------
// Alignment output records
// ---------------------------------------------------------------------------

inline json align_record_to_json(const std::string& id, const PairTarget& target) {
    json j;
    j["id"] = id;
    json steps = json::array();
    for (const PathStep& s : target.path.steps()) steps.push_back(json::array({s.q, s.t}));
    j["path"] = std::move(steps);
    j["alignment"] = target.truth_vec.values();
    j["norm_cost"] = target.norm_cost;
    return j;
}

// ---------------------------------------------------------------------------
// Run configs and reports
// ---------------------------------------------------------------------------

inline json loss_config_to_json(const LossConfig& cfg) {
    return json{{"lambda_sp", cfg.lambda_sp},
                {"lambda_ce", cfg.lambda_ce},
                {"epsilon", cfg.epsilon},
                {"normalization", to_string(cfg.normalization)}};
}

inline json run_config_to_json(const RunConfig& cfg) {
    return json{{"mode", to_string(cfg.mode)},  {"loss", loss_config_to_json(cfg.loss)},
                {"epochs", cfg.epochs},         {"lr", cfg.lr},
                {"seed", cfg.seed},             {"filter_threshold", cfg.filter_threshold}};
}

/// EpochReports serialize without wall-clock so identical seeded runs produce
/// byte-identical files.
inline json epoch_reports_to_json(const std::vector<EpochReport>& epochs) {
    json arr = json::array();
    for (const EpochReport& e : epochs) {
        arr.push_back(json{{"epoch", e.epoch},
                           {"loss", e.loss},
                           {"accuracy", e.accuracy},
                           {"pairs_retained", e.pairs_retained}});
    }
    return arr;
}

inline json final_summary_json(const std::vector<EpochReport>& epochs) {
    if (epochs.empty()) return json::object();
    const EpochReport& last = epochs.back();
    return json{{"loss", last.loss},
                {"accuracy", last.accuracy},
                {"pairs_retained", last.pairs_retained},
                {"epochs", epochs.size()}};
}

inline json report_file_json(const RunConfig& cfg, const std::vector<EpochReport>& epochs) {
    return json{{"config", run_config_to_json(cfg)},
                {"epochs", epoch_reports_to_json(epochs)},
                {"final", final_summary_json(epochs)}};
}

inline json efficiency_report_json(const RunConfig& cfg, const EfficiencyResult& result) {
    json modes = json::object();
    for (const auto& [mode, epochs] : result.modes) {
        modes[mode] = json{{"epochs", epoch_reports_to_json(epochs)}, {"final", final_summary_json(epochs)}};
    }
    return json{{"config", run_config_to_json(cfg)}, {"modes", std::move(modes)}};
}

// ---------------------------------------------------------------------------
// Checkpoints
// ---------------------------------------------------------------------------

inline json gloss_checkpoint_json(const GlossModel& model, const Vocabulary& vocab) {
    json weights;
    for (const ConstParamRef& p : param_refs(model)) weights[p.name] = *p.values;
    std::vector<std::string> content(vocab.tokens().begin() + 3, vocab.tokens().end());
    return json{{"kind", "gloss-model"},
                {"dims", json{{"vocab", model.dims.vocab},
                              {"embed", model.dims.embed},
                              {"hidden", model.dims.hidden}}},
                {"seed", model.seed},
                {"vocab", content},
                {"weights", std::move(weights)}};
}

struct GlossCheckpoint {
    GlossModel model;
    Vocabulary vocab;
};

inline GlossCheckpoint gloss_checkpoint_from_json(const json& j) {
    try {
        if (j.at("kind").get<std::string>() != "gloss-model") {
            raise(Errc::parse_error, "not a gloss-model checkpoint");
        }
        GlossDims dims{j.at("dims").at("vocab").get<int>(), j.at("dims").at("embed").get<int>(),
                       j.at("dims").at("hidden").get<int>()};
        GlossModel model(dims, j.at("seed").get<std::uint64_t>());
        for (const ParamRef& p : param_refs(model)) {
            const auto values = j.at("weights").at(p.name).get<std::vector<double>>();
            if (values.size() != p.values->size()) {
                raise(Errc::parse_error, std::string("weight array '") + p.name + "' has wrong length");
            }
            *p.values = values;
        }
        Vocabulary vocab(j.at("vocab").get<std::vector<std::string>>());
        if (vocab.size() != dims.vocab) raise(Errc::parse_error, "vocab size disagrees with dims");
        return GlossCheckpoint{std::move(model), std::move(vocab)};
    } catch (const json::exception& e) {
        raise(Errc::parse_error, std::string("malformed gloss checkpoint: ") + e.what());
    }
}

inline json scorer_checkpoint_json(const SelectionScorer& scorer) {
    return json{{"kind", "selection-scorer"},
                {"dim", scorer.dim()},
                {"seed", scorer.seed()},
                {"weights", scorer.weights().data()},
                {"bias", scorer.bias()}};
}

inline SelectionScorer scorer_checkpoint_from_json(const json& j) {
    try {
        if (j.at("kind").get<std::string>() != "selection-scorer") {
            raise(Errc::parse_error, "not a selection-scorer checkpoint");
        }
        SelectionScorer scorer(j.at("dim").get<std::size_t>(), j.at("seed").get<std::uint64_t>());
        const auto weights = j.at("weights").get<std::vector<double>>();
        if (weights.size() != scorer.weights().data().size()) {
            raise(Errc::parse_error, "weight array has wrong length");
        }
        scorer.weights().data() = weights;
        scorer.bias() = j.at("bias").get<double>();
        return scorer;
    } catch (const json::exception& e) {
        raise(Errc::parse_error, std::string("malformed scorer checkpoint: ") + e.what());
    }
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::parse_error, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        raise(Errc::parse_error, path + ": " + e.what());
    }
}

}  // namespace glossalign
