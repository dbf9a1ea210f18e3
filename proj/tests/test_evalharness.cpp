#include "doctest.h"

#include <cmath>

#include "ladder/dataset.hpp"
#include "ladder/evalharness.hpp"

using namespace ladder;

namespace {

std::vector<QuestionRecord> sample_records(int n, std::uint64_t seed) {
    GenConfig c;
    c.total = n;
    c.seed = seed;
    c.parallelism = 1;
    return generate(c);
}

MockClient correct_mock(const std::vector<QuestionRecord>& records) {
    // Keyed on the record's full prompt prefix; bare question texts repeat.
    std::map<std::string, std::string> by_prompt;
    for (const auto& r : records)
        by_prompt[r.given_info + "\n" + r.question] = answer_word(r.answer);
    return MockClient([by_prompt](const std::string& prompt) {
        for (const auto& [q, a] : by_prompt)
            if (prompt.rfind(q, 0) == 0) return "Therefore, the answer is " + a + ".";
        return std::string("no idea");
    });
}

}  // namespace

TEST_CASE("the chain has five subquestions in the CI-engine order") {
    const auto records = sample_records(2, 1);
    const auto subs = chain_subquestions(records[0]);
    REQUIRE(subs.size() == 5);
    CHECK(subs[0].find("causal graph") != std::string::npos);
    CHECK(subs[1].find("query type") != std::string::npos);
    CHECK(subs[2].find("estimand") != std::string::npos);
    CHECK(subs[3].find("available data") != std::string::npos);
    CHECK(subs[4] ==
          "Given all the information above, solve for the query. Answer step by step.");
}

TEST_CASE("prompt assembly concatenates the full history") {
    const auto records = sample_records(1, 2);
    const auto subs = chain_subquestions(records[0]);
    const std::vector<std::string> responses{"r-one", "r-two", "r-three"};
    const std::string p0 = assemble_prompt(records[0], subs, {}, 0);
    CHECK(p0.find(records[0].question) != std::string::npos);
    CHECK(p0.find(subs[0]) != std::string::npos);
    CHECK(p0.find(subs[1]) == std::string::npos);
    const std::string p3 = assemble_prompt(records[0], subs, responses, 3);
    for (const auto& r : responses) CHECK(p3.find(r) != std::string::npos);
    for (int i = 0; i <= 3; ++i) CHECK(p3.find(subs[static_cast<size_t>(i)]) != std::string::npos);
    CHECK(p3.find(subs[4]) == std::string::npos);
    CHECK_THROWS_AS(assemble_prompt(records[0], subs, responses, 9), std::invalid_argument);
}

TEST_CASE("final-answer parsing") {
    CHECK(parse_final_answer("... therefore the answer is Yes.") == FinalAnswer::Yes);
    CHECK(parse_final_answer("No.") == FinalAnswer::No);
    CHECK(parse_final_answer("YES") == FinalAnswer::Yes);
    CHECK(parse_final_answer("The computation gives 0.62, so the answer is no.") ==
          FinalAnswer::No);
    CHECK(parse_final_answer("0.40") == FinalAnswer::Unknown);
    CHECK(parse_final_answer("I do not know.") == FinalAnswer::Unknown);
    CHECK(parse_final_answer("It cannot be determined.") == FinalAnswer::Unknown);
    // "no" embedded in words must not match.
    CHECK(parse_final_answer("unknown") == FinalAnswer::Unknown);
    CHECK(parse_final_answer("The answer is \"Yes\".") == FinalAnswer::Yes);
}

TEST_CASE("scripted all-correct mock scores 100 everywhere") {
    const auto records = sample_records(60, 3);
    auto mock = correct_mock(records);
    const auto transcripts = run(records, mock, 2);
    REQUIRE(transcripts.size() == records.size());
    const Report report = grade(transcripts, records);
    CHECK(report.overall.accuracy() == 100.0);
    for (const auto& [r, s] : report.by_rung) CHECK(s.accuracy() == 100.0);
    for (const auto& [a, s] : report.by_alignment) CHECK(s.accuracy() == 100.0);
    CHECK(report.unknown_rate == 0.0);
}

TEST_CASE("chain integrity: every prompt embeds all earlier responses") {
    const auto records = sample_records(10, 4);
    auto mock = correct_mock(records);
    const auto transcripts = run(records, mock, 1);
    for (size_t i = 0; i < transcripts.size(); ++i) {
        const auto& t = transcripts[i];
        REQUIRE(t.steps.size() == 5);
        const auto subs = chain_subquestions(records[i]);
        std::vector<std::string> responses;
        for (size_t step = 0; step < t.steps.size(); ++step) {
            const std::string prompt = assemble_prompt(records[i], subs, responses, step);
            for (const auto& r : responses) CHECK(prompt.find(r) != std::string::npos);
            responses.push_back(t.steps[step].second);
        }
    }
}

TEST_CASE("oracle answers never leak into prompts") {
    const auto records = sample_records(20, 5);
    for (const auto& rec : records) {
        const auto subs = chain_subquestions(rec);
        for (size_t step = 0; step < subs.size(); ++step) {
            const std::string prompt = assemble_prompt(rec, subs, {}, step);
            CHECK(prompt.find(rec.reasoning) == std::string::npos);
            const std::string verdict = std::string("the overall answer to the question is");
            CHECK(prompt.find(verdict) == std::string::npos);
        }
    }
}

TEST_CASE("garbage responses grade as unknown and incorrect") {
    const auto records = sample_records(8, 6);
    MockClient garbage([](const std::string&) { return std::string("!!@#$ 12345"); });
    const auto transcripts = run(records, garbage, 1);
    for (const auto& t : transcripts) CHECK(t.final == FinalAnswer::Unknown);
    const Report report = grade(transcripts, records);
    CHECK(report.overall.accuracy() == 0.0);
    CHECK(report.unknown_rate == 1.0);
}

TEST_CASE("client failures yield errored transcripts, not batch aborts") {
    const auto records = sample_records(4, 7);
    MockClient flaky([](const std::string& prompt) -> std::string {
        if (prompt.find("solve for the query") != std::string::npos)
            throw std::runtime_error("boom");
        return "ok";
    });
    const auto transcripts = run(records, flaky, 2);
    REQUIRE(transcripts.size() == records.size());
    for (const auto& t : transcripts) {
        CHECK(t.errored);
        CHECK(t.final == FinalAnswer::Unknown);
        CHECK(t.error.find("boom") != std::string::npos);
    }
}

TEST_CASE("majority-class mock lands near 50 on a balanced set") {
    const auto records = sample_records(400, 8);
    MockClient yes([](const std::string&) { return std::string("Yes."); });
    const auto transcripts = run(records, yes, 2);
    const Report report = grade(transcripts, records);
    CHECK(report.overall.accuracy() > 48.0);
    CHECK(report.overall.accuracy() < 52.0);
}

TEST_CASE("grade joins strictly by id") {
    const auto records = sample_records(3, 9);
    auto mock = correct_mock(records);
    auto transcripts = run(records, mock, 1);
    transcripts[0].record_id = "nonexistent";
    CHECK_THROWS_AS(grade(transcripts, records), std::invalid_argument);
    CHECK(grade({}, records).overall.graded == 0);
}

TEST_CASE("step-level comparisons parse graph edges and query types") {
    const auto records = sample_records(6, 10);
    MockClient structured([&](const std::string& prompt) -> std::string {
        if (prompt.find("Extract the causal graph") != std::string::npos &&
            prompt.rfind("separated by commas.") == prompt.size() - 20)
            return "X -> M, M -> Y";
        if (prompt.find("Determine the query type") != std::string::npos &&
            prompt.find("Choices include") == prompt.rfind("Choices include"))
            return "This is a \"marginal probability\" question.";
        return "The answer is yes.";
    });
    const auto transcripts = run(records, structured, 1);
    const Report report = grade(transcripts, records);
    CHECK(report.step1_edge_f1.has_value());
    CHECK(report.step2_query_type_accuracy.has_value());
    // The scripted edges exactly match the chain graph.
    bool has_chain = false;
    for (const auto& r : records) has_chain = has_chain || r.graph == "chain";
    if (has_chain) CHECK(*report.step1_edge_f1 > 0.0);
}

TEST_CASE("transcripts persist as JSONL") {
    const auto records = sample_records(5, 11);
    auto mock = correct_mock(records);
    const auto transcripts = run(records, mock, 1);
    const std::string path = "/tmp/ladder_test_transcripts.jsonl";
    write_transcripts(transcripts, path);
    const auto back = read_transcripts(path);
    REQUIRE(back.size() == transcripts.size());
    for (size_t i = 0; i < back.size(); ++i)
        CHECK(back[i].to_json().dump() == transcripts[i].to_json().dump());
    std::remove(path.c_str());
}

TEST_CASE("report renders as text and JSON") {
    const auto records = sample_records(30, 12);
    auto mock = correct_mock(records);
    const Report report = grade(run(records, mock, 1), records);
    const std::string text = report.to_text();
    CHECK(text.find("overall accuracy") != std::string::npos);
    CHECK(text.find("100.00") != std::string::npos);
    const auto j = report.to_json();
    CHECK(j["overall_accuracy"] == 100.0);
    CHECK(j.contains("by_rung"));
}

TEST_CASE("zero records run to an empty transcript stream") {
    MockClient mock(std::vector<std::string>{});
    CHECK(run({}, mock, 4).empty());
}
