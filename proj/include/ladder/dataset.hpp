#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "ladder/model.hpp"
#include "ladder/query.hpp"
#include "ladder/verbalize.hpp"

namespace ladder {

inline constexpr const char* kEngineVersion = "ladder-engine/1.0.0";

// Fully materialized benchmark item. `meta` carries everything needed to
// re-derive the record independently (params, instance fields, seed).
struct QuestionRecord {
    std::string id;
    std::string graph;
    std::string story_id;
    Alignment alignment = Alignment::Commonsensical;
    QueryType query_type = QueryType::MarginalProb;
    int rung = 1;
    std::string given_info;
    std::string question;
    Answer answer = Answer::Yes;
    double value = 0.0;
    std::string estimand;
    std::string reasoning;

    struct Meta {
        std::uint64_t seed = 0;
        std::string engine_version;
        std::vector<std::string> flags;
        nlohmann::ordered_json params;
        int target_value = 1;
        int do_value = 1;
        bool direction_negated = false;
        std::vector<std::string> candidate_set;
        Assignment evidence;
        int within_cell_index = 0;
    } meta;
};

struct GenConfig {
    int total = 0;
    std::uint64_t seed = 0;
    std::array<double, 3> alignment_mix{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    int quota_min = 50;   // per (graph, query, story) combination, full scale
    int quota_max = 100;
    int rejection_budget = 1000;
    int parallelism = 0;  // 0 = hardware concurrency
    const StoryRegistry* stories = nullptr;  // null = builtin registry

    void validate() const;
};

struct DatasetStats {
    int total = 0;
    std::map<int, int> by_rung;
    std::map<std::string, int> by_query;
    std::map<std::string, int> by_graph;
    std::map<std::string, int> by_alignment;
    double positive_fraction = 0.0;
    double mean_question_sentences = 0.0;
    double mean_question_words = 0.0;
    double mean_reasoning_sentences = 0.0;
    double mean_reasoning_words = 0.0;
    double mean_nodes_per_graph = 0.0;
    double mean_edges_per_graph = 0.0;

    nlohmann::ordered_json to_json() const;
    std::string to_text() const;
};

// Deterministic end-to-end generation: identical config => byte-identical
// JSONL. Records come out sorted by cell id, then within-cell index.
std::vector<QuestionRecord> generate(const GenConfig& config);

DatasetStats compute_stats(const std::vector<QuestionRecord>& records);

nlohmann::ordered_json record_to_json(const QuestionRecord& record);
QuestionRecord record_from_json(const nlohmann::ordered_json& j);

void write_jsonl(const std::vector<QuestionRecord>& records, std::ostream& out);
void write_jsonl(const std::vector<QuestionRecord>& records, const std::string& path);
std::vector<QuestionRecord> read_jsonl(std::istream& in);
std::vector<QuestionRecord> read_jsonl(const std::string& path);

struct VerifyFailure {
    std::string id;
    std::string reason;
};

struct VerifyResult {
    int checked = 0;
    std::vector<VerifyFailure> failures;
    bool ok() const { return failures.empty(); }
};

// Re-derives every record from its metadata: replays the full pipeline from
// the stored seed, re-checks value/answer from the stored params, and
// re-applies the oracle gate.
VerifyResult verify_records(const std::vector<QuestionRecord>& records,
                            const StoryRegistry* stories = nullptr);

}  // namespace ladder
