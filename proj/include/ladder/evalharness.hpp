#pragma once

#include <atomic>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ladder/dataset.hpp"

namespace ladder {

struct DecodingConfig {
    double temperature = 0.0;
    int max_tokens = 1024;
};

struct Completion {
    std::string text;
    long long total_tokens = -1;  // -1 when the provider reports no usage
};

// Provider-agnostic chat contract: prompt text in, completion text out.
// Implementations must be safe to share across worker threads.
class ModelClient {
public:
    virtual ~ModelClient() = default;
    virtual Completion send(const std::string& prompt, const DecodingConfig& config) = 0;
};

// Deterministic client for tests: scripted replies or a reply function.
class MockClient : public ModelClient {
public:
    explicit MockClient(std::vector<std::string> scripted);
    explicit MockClient(std::function<std::string(const std::string&)> reply);
    Completion send(const std::string& prompt, const DecodingConfig& config) override;

private:
    std::vector<std::string> scripted_;
    std::atomic<size_t> next_{0};
    std::function<std::string(const std::string&)> reply_;
};

// OpenAI-style chat-completions endpoint client. Retries transient failures
// with exponential backoff, at most five attempts.
class HttpClient : public ModelClient {
public:
    HttpClient(std::string endpoint_url, std::string auth_token, std::string model);
    Completion send(const std::string& prompt, const DecodingConfig& config) override;

private:
    std::string url_;
    std::string token_;
    std::string model_;
};

// The five chain-of-thought subquestions, in CI-engine order.
std::vector<std::string> chain_subquestions(const QuestionRecord& record);

// v(s_M) = concat(q, s_1, r_1, ..., s_{M-1}, r_{M-1}, s_M)
std::string assemble_prompt(const QuestionRecord& record,
                            const std::vector<std::string>& subquestions,
                            const std::vector<std::string>& responses, size_t step);

enum class FinalAnswer { Yes, No, Unknown };
const char* final_answer_word(FinalAnswer a);

// Case-insensitive verdict search; numeric-only replies map to Unknown.
FinalAnswer parse_final_answer(const std::string& text);

struct Transcript {
    std::string record_id;
    std::vector<std::pair<std::string, std::string>> steps;  // (subquestion, response)
    FinalAnswer final = FinalAnswer::Unknown;
    bool errored = false;
    std::string error;
    double elapsed_ms = 0.0;
    long long total_tokens = -1;  // summed across steps when reported

    nlohmann::ordered_json to_json() const;
    static Transcript from_json(const nlohmann::json& j);
};

void write_transcripts(const std::vector<Transcript>& transcripts, const std::string& path);
std::vector<Transcript> read_transcripts(const std::string& path);

// Runs the chain for every record; per-record chains are sequential, records
// run concurrently up to `parallelism` (0 = logical cores). Failures after
// retries produce an errored transcript, never abort the batch.
std::vector<Transcript> run(const std::vector<QuestionRecord>& records, ModelClient& client,
                            int parallelism = 0, bool full_chain = true);

struct StratumAccuracy {
    int graded = 0;
    int correct = 0;
    double accuracy() const { return graded ? 100.0 * correct / graded : 0.0; }
};

struct Report {
    StratumAccuracy overall;
    std::map<int, StratumAccuracy> by_rung;
    std::map<std::string, StratumAccuracy> by_alignment;
    std::map<std::string, StratumAccuracy> by_query_type;
    double unknown_rate = 0.0;  // fraction of graded transcripts
    // Structured comparisons for chain steps 1 and 2, when parseable.
    std::optional<double> step1_edge_f1;
    std::optional<double> step2_query_type_accuracy;

    nlohmann::ordered_json to_json() const;
    std::string to_text() const;
};

// Accuracy against ground truth; unknown counts as incorrect. Throws when a
// transcript id has no matching record.
Report grade(const std::vector<Transcript>& transcripts,
             const std::vector<QuestionRecord>& records);

}  // namespace ladder
