#include "ladder/evalharness.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "httplib.h"

#include "ladder/graph.hpp"

namespace ladder {

MockClient::MockClient(std::vector<std::string> scripted) : scripted_(std::move(scripted)) {}

MockClient::MockClient(std::function<std::string(const std::string&)> reply)
    : reply_(std::move(reply)) {}

Completion MockClient::send(const std::string& prompt, const DecodingConfig&) {
    if (reply_) return {reply_(prompt), -1};
    const size_t i = next_.fetch_add(1);
    if (i >= scripted_.size()) throw std::runtime_error("mock client: script exhausted");
    return {scripted_[i], -1};
}

namespace {

struct ParsedUrl {
    std::string host;
    int port = 80;
    std::string path = "/";
    bool https = false;
};

ParsedUrl parse_url(const std::string& url) {
    ParsedUrl out;
    std::string rest = url;
    if (rest.rfind("https://", 0) == 0) {
        out.https = true;
        out.port = 443;
        rest = rest.substr(8);
    } else if (rest.rfind("http://", 0) == 0) {
        rest = rest.substr(7);
    } else {
        throw std::invalid_argument("endpoint URL must start with http:// or https://");
    }
    const size_t slash = rest.find('/');
    std::string hostport = slash == std::string::npos ? rest : rest.substr(0, slash);
    out.path = slash == std::string::npos ? "/" : rest.substr(slash);
    const size_t colon = hostport.find(':');
    if (colon == std::string::npos) {
        out.host = hostport;
    } else {
        out.host = hostport.substr(0, colon);
        out.port = std::stoi(hostport.substr(colon + 1));
    }
    if (out.host.empty()) throw std::invalid_argument("endpoint URL has no host");
    return out;
}

}  // namespace

HttpClient::HttpClient(std::string endpoint_url, std::string auth_token, std::string model)
    : url_(std::move(endpoint_url)), token_(std::move(auth_token)), model_(std::move(model)) {
    const ParsedUrl parsed = parse_url(url_);
    if (parsed.https)
        throw std::invalid_argument(
            "https endpoints need TLS support that is not compiled in; use an http endpoint "
            "or a local proxy");
}

Completion HttpClient::send(const std::string& prompt, const DecodingConfig& config) {
    const ParsedUrl parsed = parse_url(url_);
    nlohmann::json body;
    body["model"] = model_;
    body["temperature"] = config.temperature;
    body["max_tokens"] = config.max_tokens;
    body["messages"] = nlohmann::json::array({{{"role", "user"}, {"content", prompt}}});
    const std::string payload = body.dump();

    std::string last_error;
    for (int attempt = 0; attempt < 5; ++attempt) {
        if (attempt > 0)
            std::this_thread::sleep_for(std::chrono::milliseconds(500 << (attempt - 1)));
        httplib::Client client(parsed.host, parsed.port);
        client.set_connection_timeout(10, 0);
        client.set_read_timeout(120, 0);
        httplib::Headers headers;
        if (!token_.empty()) headers.emplace("Authorization", "Bearer " + token_);
        auto res = client.Post(parsed.path, headers, payload, "application/json");
        if (!res) {
            last_error = "connection failed";
            continue;
        }
        if (res->status == 429 || res->status >= 500) {
            last_error = "HTTP " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200)
            throw std::runtime_error("endpoint returned HTTP " + std::to_string(res->status) +
                                     ": " + res->body);
        const auto j = nlohmann::json::parse(res->body);
        Completion out;
        out.text = j.at("choices").at(0).at("message").at("content").get<std::string>();
        if (j.contains("usage") && j["usage"].contains("total_tokens"))
            out.total_tokens = j["usage"]["total_tokens"].get<long long>();
        return out;
    }
    throw std::runtime_error("endpoint unreachable after 5 attempts: " + last_error);
}

std::vector<std::string> chain_subquestions(const QuestionRecord&) {
    return {
        "Extract the causal graph: Identify the causal graph that depicts the relationships in "
        "the scenario. The diagram should simply consist of edges denoted in \"var1 -> var2\" "
        "format, separated by commas.",
        "Determine the query type: Identify the type of query implied by the main question. "
        "Choices include \"marginal probability\", \"conditional probability\", \"average "
        "treatment effect\", \"backdoor adjustment set\", \"collider bias\", \"explaining away "
        "effect\", \"normal counterfactual question\", \"average treatment effect on treated\", "
        "\"natural direct effect\" or \"natural indirect effect\".",
        "Formalize the query: Translate the query into its formal mathematical expression based "
        "on its type, utilizing the \"do(.)\" notation or counterfactual notations as needed. "
        "Then, based on the graph structure, derive the estimand: simplify the expression into "
        "one that can be computed from lower-rung probabilities.",
        "Collect all the available data: Extract all the probabilities and conditional "
        "probabilities stated in the scenario.",
        "Given all the information above, solve for the query. Answer step by step.",
    };
}

std::string assemble_prompt(const QuestionRecord& record,
                            const std::vector<std::string>& subquestions,
                            const std::vector<std::string>& responses, size_t step) {
    if (step >= subquestions.size()) throw std::invalid_argument("assemble_prompt: bad step");
    std::string prompt = record.given_info + "\n" + record.question;
    for (size_t i = 0; i < step; ++i) {
        prompt += "\n\n" + subquestions[i];
        if (i < responses.size()) prompt += "\n\n" + responses[i];
    }
    prompt += "\n\n" + subquestions[step];
    return prompt;
}

const char* final_answer_word(FinalAnswer a) {
    switch (a) {
        case FinalAnswer::Yes: return "yes";
        case FinalAnswer::No: return "no";
        case FinalAnswer::Unknown: return "unknown";
    }
    return "unknown";
}

namespace {

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

bool word_at(const std::string& text, size_t pos, const std::string& word) {
    if (text.compare(pos, word.size(), word) != 0) return false;
    if (pos > 0 && is_word_char(text[pos - 1])) return false;
    const size_t end = pos + word.size();
    if (end < text.size() && is_word_char(text[end])) return false;
    return true;
}

std::string lowercase(const std::string& text) {
    std::string out = text;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

FinalAnswer parse_final_answer(const std::string& text) {
    const std::string low = lowercase(text);
    // Leading verdict.
    size_t start = low.find_first_not_of(" \t\n\"'*");
    if (start != std::string::npos) {
        if (word_at(low, start, "yes")) return FinalAnswer::Yes;
        if (word_at(low, start, "no")) return FinalAnswer::No;
    }
    // Trailing verdict.
    size_t end = low.find_last_not_of(" \t\n.!\"'*");
    if (end != std::string::npos) {
        for (const auto& [word, val] :
             {std::pair<std::string, FinalAnswer>{"yes", FinalAnswer::Yes},
              std::pair<std::string, FinalAnswer>{"no", FinalAnswer::No}}) {
            if (end + 1 >= word.size()) {
                const size_t pos = end + 1 - word.size();
                if (word_at(low, pos, word)) return val;
            }
        }
    }
    // "answer is yes/no" patterns, last occurrence wins.
    FinalAnswer found = FinalAnswer::Unknown;
    for (const char* pattern : {"answer is", "answer:", "answer to the question is"}) {
        size_t pos = 0;
        while ((pos = low.find(pattern, pos)) != std::string::npos) {
            size_t after = pos + std::strlen(pattern);
            while (after < low.size() &&
                   (low[after] == ' ' || low[after] == '"' || low[after] == '\'' ||
                    low[after] == ':'))
                ++after;
            if (after < low.size()) {
                if (word_at(low, after, "yes")) found = FinalAnswer::Yes;
                if (word_at(low, after, "no")) found = FinalAnswer::No;
            }
            ++pos;
        }
    }
    return found;
}

nlohmann::ordered_json Transcript::to_json() const {
    nlohmann::ordered_json j;
    j["record_id"] = record_id;
    j["steps"] = nlohmann::ordered_json::array();
    for (const auto& [s, r] : steps) j["steps"].push_back({{"subquestion", s}, {"response", r}});
    j["final"] = final_answer_word(final);
    j["errored"] = errored;
    j["error"] = error;
    j["elapsed_ms"] = elapsed_ms;
    j["total_tokens"] = total_tokens;
    return j;
}

Transcript Transcript::from_json(const nlohmann::json& j) {
    Transcript t;
    t.record_id = j.at("record_id").get<std::string>();
    for (const auto& step : j.at("steps"))
        t.steps.emplace_back(step.at("subquestion").get<std::string>(),
                             step.at("response").get<std::string>());
    const std::string f = j.at("final").get<std::string>();
    t.final = f == "yes" ? FinalAnswer::Yes : f == "no" ? FinalAnswer::No : FinalAnswer::Unknown;
    t.errored = j.at("errored").get<bool>();
    t.error = j.at("error").get<std::string>();
    t.elapsed_ms = j.at("elapsed_ms").get<double>();
    t.total_tokens = j.value("total_tokens", -1LL);
    return t;
}

void write_transcripts(const std::vector<Transcript>& transcripts, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    for (const auto& t : transcripts) out << t.to_json().dump() << "\n";
}

std::vector<Transcript> read_transcripts(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::vector<Transcript> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            out.push_back(Transcript::from_json(nlohmann::json::parse(line)));
        } catch (const std::exception& e) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

namespace {

Transcript run_single(const QuestionRecord& record, ModelClient& client, bool full_chain) {
    Transcript t;
    t.record_id = record.id;
    const auto started = std::chrono::steady_clock::now();
    const auto subs = chain_subquestions(record);
    std::vector<std::string> responses;
    const size_t first = full_chain ? 0 : subs.size() - 1;
    try {
        for (size_t step = first; step < subs.size(); ++step) {
            const std::string prompt = assemble_prompt(record, subs, responses, step);
            const Completion completion = client.send(prompt, DecodingConfig{});
            if (completion.total_tokens >= 0)
                t.total_tokens =
                    (t.total_tokens < 0 ? 0 : t.total_tokens) + completion.total_tokens;
            t.steps.emplace_back(subs[step], completion.text);
            responses.push_back(completion.text);
        }
        t.final = parse_final_answer(responses.back());
    } catch (const std::exception& e) {
        t.errored = true;
        t.error = e.what();
        t.final = FinalAnswer::Unknown;
    }
    t.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                             started)
                       .count();
    return t;
}

}  // namespace

std::vector<Transcript> run(const std::vector<QuestionRecord>& records, ModelClient& client,
                            int parallelism, bool full_chain) {
    std::vector<Transcript> out(records.size());
    const int requested =
        parallelism > 0 ? parallelism
                        : std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
    const unsigned workers = static_cast<unsigned>(
        std::max(1, std::min<int>(requested, static_cast<int>(records.size() ? records.size()
                                                                             : 1))));
    if (workers == 1) {
        for (size_t i = 0; i < records.size(); ++i)
            out[i] = run_single(records[i], client, full_chain);
        return out;
    }
    std::atomic<size_t> cursor{0};
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            for (size_t i = cursor.fetch_add(1); i < records.size(); i = cursor.fetch_add(1))
                out[i] = run_single(records[i], client, full_chain);
        });
    }
    for (auto& t : threads) t.join();
    return out;
}

namespace {

// Edge F1 of a "A -> B, C -> D" style response against the true edge set.
std::optional<double> edge_f1(const std::string& response, const CgteSpec& spec) {
    std::set<std::pair<std::string, std::string>> predicted;
    std::istringstream in(response);
    std::string token;
    std::string text = response;
    size_t pos = 0;
    while ((pos = text.find("->", pos)) != std::string::npos) {
        size_t lhs_end = pos;
        while (lhs_end > 0 && (text[lhs_end - 1] == ' ')) --lhs_end;
        size_t lhs_start = lhs_end;
        while (lhs_start > 0 && is_word_char(text[lhs_start - 1])) --lhs_start;
        size_t rhs_start = pos + 2;
        while (rhs_start < text.size() && text[rhs_start] == ' ') ++rhs_start;
        size_t rhs_end = rhs_start;
        while (rhs_end < text.size() && is_word_char(text[rhs_end])) ++rhs_end;
        if (lhs_end > lhs_start && rhs_end > rhs_start)
            predicted.emplace(text.substr(lhs_start, lhs_end - lhs_start),
                              text.substr(rhs_start, rhs_end - rhs_start));
        pos = rhs_end;
    }
    if (predicted.empty()) return std::nullopt;
    std::set<std::pair<std::string, std::string>> truth;
    for (const auto& [a, b] : spec.dag.edges()) truth.emplace(a, b);
    int tp = 0;
    for (const auto& e : predicted)
        if (truth.count(e)) ++tp;
    const double precision = static_cast<double>(tp) / static_cast<double>(predicted.size());
    const double recall = static_cast<double>(tp) / static_cast<double>(truth.size());
    if (precision + recall == 0) return 0.0;
    return 2 * precision * recall / (precision + recall);
}

const std::map<QueryType, std::string>& query_type_phrases() {
    static const std::map<QueryType, std::string> phrases = {
        {QueryType::MarginalProb, "marginal probability"},
        {QueryType::CondProb, "conditional probability"},
        {QueryType::Ate, "average treatment effect"},
        {QueryType::AdjustmentSet, "backdoor adjustment set"},
        {QueryType::ColliderBias, "collider bias"},
        {QueryType::ExplainingAway, "explaining away effect"},
        {QueryType::CounterfactualProb, "normal counterfactual question"},
        {QueryType::Att, "average treatment effect on treated"},
        {QueryType::Nde, "natural direct effect"},
        {QueryType::Nie, "natural indirect effect"},
    };
    return phrases;
}

}  // namespace

Report grade(const std::vector<Transcript>& transcripts,
             const std::vector<QuestionRecord>& records) {
    std::map<std::string, const QuestionRecord*> by_id;
    for (const auto& r : records) by_id[r.id] = &r;

    Report report;
    int unknown = 0;
    double f1_sum = 0.0;
    int f1_count = 0;
    int qt_correct = 0, qt_count = 0;
    for (const auto& t : transcripts) {
        auto it = by_id.find(t.record_id);
        if (it == by_id.end())
            throw std::invalid_argument("transcript id '" + t.record_id +
                                        "' has no matching record");
        const QuestionRecord& rec = *it->second;
        const bool correct =
            (t.final == FinalAnswer::Yes && rec.answer == Answer::Yes) ||
            (t.final == FinalAnswer::No && rec.answer == Answer::No);
        if (t.final == FinalAnswer::Unknown) ++unknown;
        auto tally = [&](StratumAccuracy& s) {
            s.graded += 1;
            if (correct) s.correct += 1;
        };
        tally(report.overall);
        tally(report.by_rung[rec.rung]);
        tally(report.by_alignment[alignment_name(rec.alignment)]);
        tally(report.by_query_type[query_type_name(rec.query_type)]);

        if (t.steps.size() >= 2) {
            if (auto f1 = edge_f1(t.steps[0].second, catalog(rec.graph))) {
                f1_sum += *f1;
                ++f1_count;
            }
            ++qt_count;
            if (lowercase(t.steps[1].second).find(query_type_phrases().at(rec.query_type)) !=
                std::string::npos)
                ++qt_correct;
        }
    }
    if (report.overall.graded > 0)
        report.unknown_rate = static_cast<double>(unknown) / report.overall.graded;
    if (f1_count > 0) report.step1_edge_f1 = f1_sum / f1_count;
    if (qt_count > 0)
        report.step2_query_type_accuracy = 100.0 * qt_correct / qt_count;
    return report;
}

nlohmann::ordered_json Report::to_json() const {
    nlohmann::ordered_json j;
    j["overall_accuracy"] = overall.accuracy();
    j["graded"] = overall.graded;
    j["unknown_rate"] = unknown_rate;
    j["by_rung"] = nlohmann::ordered_json::object();
    for (const auto& [r, s] : by_rung) j["by_rung"][std::to_string(r)] = s.accuracy();
    j["by_alignment"] = nlohmann::ordered_json::object();
    for (const auto& [a, s] : by_alignment) j["by_alignment"][a] = s.accuracy();
    j["by_query_type"] = nlohmann::ordered_json::object();
    for (const auto& [q, s] : by_query_type) j["by_query_type"][q] = s.accuracy();
    if (step1_edge_f1) j["step1_edge_f1"] = *step1_edge_f1;
    if (step2_query_type_accuracy) j["step2_query_type_accuracy"] = *step2_query_type_accuracy;
    return j;
}

std::string Report::to_text() const {
    std::ostringstream out;
    char buf[128];
    std::snprintf(buf, sizeof buf, "overall accuracy: %6.2f  (graded %d, unknown rate %.3f)\n",
                  overall.accuracy(), overall.graded, unknown_rate);
    out << buf;
    out << "by rung:     ";
    for (const auto& [r, s] : by_rung) {
        std::snprintf(buf, sizeof buf, " %d=%.2f", r, s.accuracy());
        out << buf;
    }
    out << "\nby alignment:";
    for (const auto& [a, s] : by_alignment) {
        std::snprintf(buf, sizeof buf, " %s=%.2f", a.c_str(), s.accuracy());
        out << buf;
    }
    out << "\nby query:    ";
    for (const auto& [q, s] : by_query_type) {
        std::snprintf(buf, sizeof buf, " %s=%.2f", q.c_str(), s.accuracy());
        out << buf;
    }
    out << "\n";
    if (step1_edge_f1) {
        std::snprintf(buf, sizeof buf, "step 1 edge F1: %.3f\n", *step1_edge_f1);
        out << buf;
    }
    if (step2_query_type_accuracy) {
        std::snprintf(buf, sizeof buf, "step 2 query-type accuracy: %.2f\n",
                      *step2_query_type_accuracy);
        out << buf;
    }
    return out.str();
}

}  // namespace ladder
