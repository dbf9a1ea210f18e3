#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "ladder/dataset.hpp"
#include "ladder/engine.hpp"
#include "ladder/evalharness.hpp"
#include "ladder/graph.hpp"

namespace {

using namespace ladder;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;

std::vector<QuestionRecord> load_records(const std::string& path) {
    if (path == "-") return read_jsonl(std::cin);
    return read_jsonl(path);
}

void emit(const std::string& path, const std::string& payload) {
    if (path.empty() || path == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << payload;
}

std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return v ? std::string(v) : fallback;
}

int cmd_generate(int size, std::uint64_t seed, const std::string& out_path,
                 const std::vector<double>& mix, int parallelism,
                 const std::string& stories_path) {
    GenConfig config;
    config.total = size;
    config.seed = seed;
    config.parallelism = parallelism;
    if (!mix.empty()) {
        if (mix.size() != 3) throw CLI::ValidationError("--alignment-mix needs 3 fractions");
        config.alignment_mix = {mix[0], mix[1], mix[2]};
    }
    StoryRegistry custom;
    if (!stories_path.empty()) {
        std::ifstream in(stories_path);
        if (!in) throw std::runtime_error("cannot open stories file '" + stories_path + "'");
        custom = StoryRegistry::from_json(nlohmann::json::parse(in));
        config.stories = &custom;
    }
    const auto records = generate(config);
    if (out_path.empty() || out_path == "-") {
        write_jsonl(records, std::cout);
    } else {
        write_jsonl(records, out_path);
    }
    std::cerr << "generated " << records.size() << " records (seed " << seed << ")\n";
    return kExitOk;
}

int cmd_answer(const std::string& graph, const std::string& query, const std::string& params_path,
               const std::vector<std::string>& candidate_set, int do_value, int target_value,
               const std::vector<std::string>& evidence) {
    const CgteSpec& spec = catalog(graph);
    std::ifstream in(params_path);
    if (!in) throw std::runtime_error("cannot open params file '" + params_path + "'");
    const Params params = Params::from_json(spec.dag, nlohmann::json::parse(in));
    params.validate(spec.dag);

    QueryInstance qinst;
    qinst.type = query_type_from(query);
    qinst.graph = graph;
    qinst.do_value = do_value;
    qinst.target_value = target_value;
    qinst.candidate_set = candidate_set;
    for (const auto& e : evidence) {
        const auto eq = e.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--evidence entries look like NODE=0|1");
        qinst.evidence[e.substr(0, eq)] = std::stoi(e.substr(eq + 1));
    }
    if (qinst.type == QueryType::CounterfactualProb && qinst.evidence.empty() && graph != "IV")
        qinst.evidence[spec.treatment] = 1 - qinst.do_value;
    validate_instance(qinst);

    const Estimand estimand = derive_estimand(spec, qinst);
    auto terms = required_data(estimand);
    fill_data_values(spec, params, terms);
    const double value = evaluate(estimand, terms);
    const double truth = oracle(spec, params, qinst);
    const Answer answer = decide_answer(qinst.type, value);

    std::cout << "estimand: " << render_estimand(estimand) << "\n";
    std::cout << "data:\n";
    for (const auto& t : terms) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", t.value);
        std::cout << "  " << render_data_term_symbol(t) << " = " << buf << "\n";
    }
    char value4[32], oracle4[32];
    std::snprintf(value4, sizeof value4, "%.4f", value);
    std::snprintf(oracle4, sizeof oracle4, "%.4f", truth);
    std::cout << "value: " << value4 << " (oracle " << oracle4 << ")\n";
    std::cout << "answer: " << (answer == Answer::Yes ? "Yes" : "No") << "\n";
    return kExitOk;
}

int cmd_verify(const std::string& in_path) {
    const auto records = load_records(in_path);
    const auto result = verify_records(records);
    if (result.ok()) {
        std::cerr << "verified " << result.checked << " records, all consistent\n";
        return kExitOk;
    }
    for (const auto& f : result.failures)
        std::cout << "MISMATCH " << f.id << ": " << f.reason << "\n";
    std::cerr << result.failures.size() << " of " << result.checked << " records failed\n";
    return kExitVerifyFailed;
}

int cmd_stats(const std::string& in_path, bool as_json) {
    const auto records = load_records(in_path);
    const auto stats = compute_stats(records);
    if (as_json)
        std::cout << stats.to_json().dump(2) << "\n";
    else
        std::cout << stats.to_text();
    return kExitOk;
}

int cmd_prompts(const std::string& in_path, const std::string& out_path) {
    const auto records = load_records(in_path);
    std::ostringstream out;
    for (const auto& r : records) {
        nlohmann::ordered_json j;
        j["id"] = r.id;
        j["question"] = r.given_info + "\n" + r.question;
        j["subquestions"] = chain_subquestions(r);
        out << j.dump() << "\n";
    }
    emit(out_path, out.str());
    std::cerr << "wrote prompt chains for " << records.size() << " records\n";
    return kExitOk;
}

int cmd_eval(const std::string& in_path, std::string endpoint, std::string model,
             std::string token, const std::string& mock_mode, int parallelism, int max_records,
             const std::string& transcripts_path, const std::string& report_path,
             bool report_json) {
    auto records = load_records(in_path);
    if (max_records > 0 && static_cast<int>(records.size()) > max_records)
        records.resize(static_cast<size_t>(max_records));

    std::unique_ptr<ModelClient> client;
    if (mock_mode == "correct") {
        // Keyed by the record's full prompt prefix, which every chain prompt
        // starts with.
        std::map<std::string, std::string> by_prompt;
        for (const auto& r : records)
            by_prompt[r.given_info + "\n" + r.question] = answer_word(r.answer);
        client = std::make_unique<MockClient>([by_prompt](const std::string& prompt) {
            for (const auto& [prefix, answer] : by_prompt)
                if (prompt.rfind(prefix, 0) == 0) return "The answer is " + answer + ".";
            return std::string("unparseable");
        });
    } else if (mock_mode == "yes") {
        client = std::make_unique<MockClient>(
            [](const std::string&) { return std::string("Yes."); });
    } else if (!mock_mode.empty()) {
        throw CLI::ValidationError("--mock must be 'correct' or 'yes'");
    } else {
        if (endpoint.empty()) endpoint = env_or("LADDER_ENDPOINT", "");
        if (model.empty()) model = env_or("LADDER_MODEL", "");
        if (token.empty()) token = env_or("LADDER_API_TOKEN", "");
        if (endpoint.empty())
            throw CLI::ValidationError(
                "eval needs --endpoint (or LADDER_ENDPOINT) unless --mock is used");
        client = std::make_unique<HttpClient>(endpoint, token, model);
    }

    const auto transcripts = run(records, *client, parallelism);
    if (!transcripts_path.empty()) write_transcripts(transcripts, transcripts_path);
    const Report report = grade(transcripts, records);
    const std::string payload =
        report_json ? report.to_json().dump(2) + "\n" : report.to_text();
    emit(report_path, payload);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ladder: causal reasoning benchmark engine"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "generate a benchmark JSONL file");
    int size = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out_path = "-";
    std::vector<double> mix;
    int parallelism = 0;
    std::string stories_path;
    gen->add_option("--size", size, "number of records")->required();
    gen->add_option("--seed", seed, "master seed")->required()->each([&](const std::string&) {
        seed_set = true;
    });
    gen->add_option("--out", out_path, "output path ('-' = stdout)");
    gen->add_option("--alignment-mix", mix,
                    "three fractions: commonsensical, anti-commonsensical, nonsensical");
    gen->add_option("--parallelism", parallelism, "worker threads (0 = logical cores)");
    gen->add_option("--stories", stories_path, "custom story registry JSON");

    // answer
    auto* ans = app.add_subcommand("answer", "answer a single query on a catalog graph");
    std::string graph, query, params_path;
    std::vector<std::string> candidate_set, evidence;
    int do_value = 1, target_value = 1;
    ans->add_option("--graph", graph, "catalog graph name")->required();
    ans->add_option("--query", query, "query type (snake_case)")->required();
    ans->add_option("--params", params_path, "CBN parameter JSON file")->required();
    ans->add_option("--candidate-set", candidate_set, "adjustment-set candidate nodes");
    ans->add_option("--do", do_value, "treatment value for counterfactuals");
    ans->add_option("--target", target_value, "outcome target value");
    ans->add_option("--evidence", evidence, "counterfactual evidence entries NODE=0|1");

    // verify
    auto* ver = app.add_subcommand("verify", "re-derive every record; exit 2 on any mismatch");
    std::string verify_in;
    ver->add_option("--in", verify_in, "records JSONL ('-' = stdin)")->required();

    // stats
    auto* sta = app.add_subcommand("stats", "dataset statistics");
    std::string stats_in;
    bool stats_json = false;
    sta->add_option("--in", stats_in, "records JSONL ('-' = stdin)")->required();
    sta->add_flag("--json", stats_json, "emit JSON instead of text");

    // prompts
    auto* pro = app.add_subcommand("prompts", "emit chain-of-thought prompt chains (no network)");
    std::string prompts_in, prompts_out = "-";
    pro->add_option("--in", prompts_in, "records JSONL ('-' = stdin)")->required();
    pro->add_option("--out", prompts_out, "output path ('-' = stdout)");

    // eval
    auto* eva = app.add_subcommand("eval", "run the subquestion chain against a model");
    std::string eval_in, endpoint, model, token, mock_mode, transcripts_path, report_path = "-";
    int eval_parallelism = 0, max_records = 0;
    bool report_json = false;
    eva->add_option("--in", eval_in, "records JSONL ('-' = stdin)")->required();
    eva->add_option("--endpoint", endpoint, "chat-completions endpoint URL (http)");
    eva->add_option("--model", model, "model name");
    eva->add_option("--token", token, "bearer token (or LADDER_API_TOKEN)");
    eva->add_option("--mock", mock_mode, "offline client: 'correct' or 'yes'");
    eva->add_option("--parallelism", eval_parallelism, "concurrent records (0 = logical cores)");
    eva->add_option("--max-records", max_records, "evaluate only the first N records");
    eva->add_option("--transcripts-out", transcripts_path, "write transcripts JSONL");
    eva->add_option("--report-out", report_path, "report path ('-' = stdout)");
    eva->add_flag("--report-json", report_json, "emit the report as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        if (gen->parsed())
            return cmd_generate(size, seed, out_path, mix, parallelism, stories_path);
        if (ans->parsed())
            return cmd_answer(graph, query, params_path, candidate_set, do_value, target_value,
                              evidence);
        if (ver->parsed()) return cmd_verify(verify_in);
        if (sta->parsed()) return cmd_stats(stats_in, stats_json);
        if (pro->parsed()) return cmd_prompts(prompts_in, prompts_out);
        if (eva->parsed())
            return cmd_eval(eval_in, endpoint, model, token, mock_mode, eval_parallelism,
                            max_records, transcripts_path, report_path, report_json);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
