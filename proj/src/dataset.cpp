#include "ladder/dataset.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "ladder/engine.hpp"
#include "ladder/graph.hpp"

namespace ladder {

void GenConfig::validate() const {
    if (total < 0) throw std::invalid_argument("GenConfig: negative total");
    if (quota_min < 50 || quota_max > 100 || quota_min > quota_max)
        throw std::invalid_argument("GenConfig: quotas must lie within [50,100]");
    double mix = alignment_mix[0] + alignment_mix[1] + alignment_mix[2];
    if (std::fabs(mix - 1.0) > 1e-9)
        throw std::invalid_argument("GenConfig: alignment fractions must sum to 1");
    for (double f : alignment_mix)
        if (f < 0.0) throw std::invalid_argument("GenConfig: negative alignment fraction");
    if (rejection_budget <= 0) throw std::invalid_argument("GenConfig: rejection budget <= 0");
}

namespace {

constexpr double kOracleTolerance = 1e-9;
constexpr double kMinCompliance = 0.05;

// Table 1 rung split of the released data: 3288 / 3288 / 3984 of 10560.
constexpr double kRungShare[3] = {3288.0 / 10560.0, 3288.0 / 10560.0, 3984.0 / 10560.0};

double pair_weight(QueryType type) {
    // Rung 2 is weighted toward ATE ("more samples for ATE"); other rungs are
    // uniform across their graph x query pairs.
    switch (type) {
        case QueryType::Ate: return 20.0;
        case QueryType::AdjustmentSet: return 18.0;
        case QueryType::ColliderBias: return 11.0;
        case QueryType::ExplainingAway: return 11.0;
        default: return 1.0;
    }
}

struct PairDesc {
    const CgteSpec* spec = nullptr;
    QueryType type = QueryType::MarginalProb;
    int count = 0;
};

std::vector<int> largest_remainder(int total, const std::vector<double>& weights) {
    const double sum = [&] {
        double s = 0;
        for (double w : weights) s += w;
        return s;
    }();
    std::vector<int> out(weights.size(), 0);
    if (total <= 0 || sum <= 0) return out;
    std::vector<std::pair<double, size_t>> rema;
    int assigned = 0;
    for (size_t i = 0; i < weights.size(); ++i) {
        double share = total * weights[i] / sum;
        out[i] = static_cast<int>(share);
        assigned += out[i];
        rema.emplace_back(-(share - out[i]), i);  // negative: sort ascending = largest first
    }
    std::sort(rema.begin(), rema.end());
    for (int k = 0; k < total - assigned; ++k) out[rema[static_cast<size_t>(k)].second] += 1;
    return out;
}

// Params sampler with the per-graph instance constraints.
Params sample_instance_params(Rng& rng, const CgteSpec& spec, QueryType type) {
    Params p = Params::sample(rng, spec.dag);
    if (spec.name == "IV") {
        // No defiers: theta_X must be monotone in Z for both values of U.
        // X's parents are [Z, U]; bit 0 is Z, bit 1 is U.
        int x = spec.dag.index_of("X");
        for (int u = 0; u <= 1; ++u) {
            int off = u ? 2 : 0;
            double z0 = p.theta(x, off + 0), z1 = p.theta(x, off + 1);
            if (z1 < z0) {
                p.set(x, off + 0, z1);
                p.set(x, off + 1, z0);
            }
        }
    }
    if (spec.name == "arrowhead" && (type == QueryType::Nde || type == QueryType::Nie)) {
        // Unconfound the mediator mechanism: theta_M ignores U so the
        // mediation-formula estimand is exact. M's parents are [X, U].
        int m = spec.dag.index_of("M");
        p.set(m, 2, p.theta(m, 0));
        p.set(m, 3, p.theta(m, 1));
    }
    return p;
}

double adjustment_gap(const CgteSpec& spec, const Params& params,
                      const std::vector<std::string>& s) {
    const std::string& x = spec.treatment;
    const std::string& y = spec.outcome;
    double worst = 0.0;
    for (int xv : {0, 1}) {
        double adjusted = 0.0;
        const size_t n = s.size();
        for (size_t mask = 0; mask < (1ull << n); ++mask) {
            Assignment sv;
            for (size_t j = 0; j < n; ++j) sv[s[j]] = (mask >> j) & 1 ? 1 : 0;
            Assignment given = sv;
            given[x] = xv;
            double ps = sv.empty() ? 1.0 : prob(spec.dag, params, sv);
            adjusted += ps * prob(spec.dag, params, {{y, 1}}, given);
        }
        double truth = interventional_prob(spec.dag, params, {{x, xv}}, {{y, 1}});
        worst = std::max(worst, std::fabs(adjusted - truth));
    }
    return worst;
}

struct CellKey {
    std::string graph;
    QueryType type = QueryType::MarginalProb;
    std::string story_id;
    Alignment alignment = Alignment::Commonsensical;

    std::string text() const {
        return graph + "." + query_type_name(type) + "." + story_id + "." +
               alignment_name(alignment);
    }
};

struct RecordPlan {
    CellKey cell;
    int within_cell_index = 0;
    bool target_yes = true;
    std::uint64_t seed = 0;
};

std::string record_id(const CellKey& cell, int k) {
    char suffix[16];
    std::snprintf(suffix, sizeof suffix, "%04d", k);
    return cell.text() + "-" + suffix;
}

QuestionRecord make_record(const RecordPlan& plan, const StoryRegistry& registry,
                           const GenConfig& config) {
    const CgteSpec& spec = catalog(plan.cell.graph);
    const Story& base = registry.by_id(plan.cell.story_id);
    Rng rng(plan.seed);
    const Story story = transform_alignment(base, plan.cell.alignment, rng, registry);

    Params params;
    QueryInstance qinst;
    Estimand estimand;
    double value = 0.0;
    Answer answer = Answer::Yes;
    bool done = false;

    for (int attempt = 0; attempt < config.rejection_budget && !done; ++attempt) {
        params = sample_instance_params(rng, spec, plan.cell.type);
        qinst = QueryInstance{};
        qinst.type = plan.cell.type;
        qinst.graph = spec.name;

        if (qinst.type == QueryType::CounterfactualProb) {
            qinst.do_value = rng.coin();
            if (spec.name != "IV") qinst.evidence[spec.treatment] = 1 - qinst.do_value;
        } else if (qinst.type == QueryType::AdjustmentSet) {
            std::vector<std::string> pool;
            for (const auto& n : spec.observed_nodes())
                if (n != spec.treatment && n != spec.outcome) pool.push_back(n);
            const auto subsets = (1ull << pool.size()) - 1;
            const auto pick = 1 + rng.below(subsets);
            for (size_t j = 0; j < pool.size(); ++j)
                if (pick & (1ull << j)) qinst.candidate_set.push_back(pool[j]);
        }

        if (spec.name == "IV") {
            // Wald/complier estimands divide by the compliance rate.
            double compliance = prob(spec.dag, params, {{"X", 1}}, {{"Z", 1}}) -
                                prob(spec.dag, params, {{"X", 1}}, {{"Z", 0}});
            if (compliance < kMinCompliance) continue;
        }
        if (qinst.type == QueryType::AdjustmentSet) {
            // Invalid sets must miss the interventional value by a clear
            // margin so the numeric oracle agrees with the graph predicate.
            std::set<std::string> cand(qinst.candidate_set.begin(), qinst.candidate_set.end());
            const bool cand_valid = is_valid_backdoor_set(spec, cand);
            const bool empty_valid = is_valid_backdoor_set(spec, {});
            double cand_gap = adjustment_gap(spec, params, qinst.candidate_set);
            double empty_gap = adjustment_gap(spec, params, {});
            if (cand_valid != (cand_gap <= kOracleTolerance) && cand_gap < kTieEpsilon) continue;
            if (empty_valid != (empty_gap <= kOracleTolerance) && empty_gap < kTieEpsilon)
                continue;
        }

        estimand = derive_estimand(spec, qinst);
        value = evaluate(spec, params, estimand);

        Answer canonical;
        try {
            canonical = decide_answer(qinst.type, value);
        } catch (const DegenerateInstanceError&) {
            continue;
        }
        const Answer target = plan.target_yes ? Answer::Yes : Answer::No;
        if (canonical != target) {
            qinst.direction_negated = true;
            if (qinst.type == QueryType::CounterfactualProb) {
                // The counterfactual direction flip asks about the opposite
                // outcome literal; re-evaluate so the stored value is exactly
                // what re-derivation produces.
                qinst.target_value = 0;
                estimand = derive_estimand(spec, qinst);
                value = evaluate(spec, params, estimand);
            }
        }
        answer = target;

        const double truth = oracle(spec, params, qinst);
        if (std::fabs(value - truth) > kOracleTolerance) {
            std::ostringstream err;
            err << "oracle gate failed for cell " << plan.cell.text() << ": estimand " << value
                << " vs oracle " << truth;
            throw std::logic_error(err.str());
        }
        done = true;
    }
    if (!done) {
        throw std::runtime_error("rejection budget exhausted for cell " + plan.cell.text());
    }

    auto terms = required_data(estimand);
    fill_data_values(spec, params, terms);
    for (auto& t : terms) t.value = parse_percent(format_percent(t.value));

    QuestionRecord rec;
    rec.id = record_id(plan.cell, plan.within_cell_index);
    rec.graph = spec.name;
    rec.story_id = base.id;
    rec.alignment = plan.cell.alignment;
    rec.query_type = qinst.type;
    rec.rung = rung_of(qinst.type);
    const std::string graph_text = render_graph_text(spec, story);
    const std::string data_text = render_data_text(terms, story);
    rec.given_info = data_text.empty() ? graph_text : graph_text + " " + data_text;
    rec.question = render_question(spec, qinst, story);
    rec.answer = answer;
    rec.value = value;
    rec.estimand = render_estimand(estimand);
    rec.reasoning = render_explanation({spec, qinst, estimand, terms, value, answer});

    rec.meta.seed = plan.seed;
    rec.meta.engine_version = kEngineVersion;
    rec.meta.flags = estimand.flags;
    if (qinst.type == QueryType::ColliderBias || qinst.type == QueryType::ExplainingAway)
        rec.meta.flags.push_back("collider_rung_convention=2");
    rec.meta.params = params.to_json(spec.dag);
    rec.meta.target_value = qinst.target_value;
    rec.meta.do_value = qinst.do_value;
    rec.meta.direction_negated = qinst.direction_negated;
    rec.meta.candidate_set = qinst.candidate_set;
    rec.meta.evidence = qinst.evidence;
    rec.meta.within_cell_index = plan.within_cell_index;
    return rec;
}

std::vector<RecordPlan> plan_records(const GenConfig& config, const StoryRegistry& registry) {
    // Pairs by rung, in catalog x query order.
    std::vector<PairDesc> pairs;
    std::vector<std::vector<size_t>> by_rung(3);
    for (const auto& name : catalog_names()) {
        for (QueryType t : kAllQueryTypes) {
            if (!applicability(name, t)) continue;
            pairs.push_back({&catalog(name), t, 0});
            by_rung[static_cast<size_t>(rung_of(t) - 1)].push_back(pairs.size() - 1);
        }
    }

    // Rung totals first (largest remainder over the Table 1 split), then
    // graph x query pairs within each rung, capped by the per-combination
    // quota.
    std::vector<int> rung_totals =
        largest_remainder(config.total, {kRungShare[0], kRungShare[1], kRungShare[2]});
    for (int r = 0; r < 3; ++r) {
        const auto& idx = by_rung[static_cast<size_t>(r)];
        std::vector<double> weights;
        std::vector<int> caps;
        for (size_t i : idx) {
            weights.push_back(pair_weight(pairs[i].type));
            const int stories =
                static_cast<int>(registry.stories_for(pairs[i].spec->name).size());
            caps.push_back(config.quota_max * std::max(stories, 1));
        }
        std::vector<int> alloc = largest_remainder(rung_totals[static_cast<size_t>(r)], weights);
        // Redistribute anything above the quota cap to uncapped pairs.
        for (int round = 0; round < 8; ++round) {
            int excess = 0;
            std::vector<double> open;
            for (size_t i = 0; i < alloc.size(); ++i) {
                if (alloc[i] > caps[i]) {
                    excess += alloc[i] - caps[i];
                    alloc[i] = caps[i];
                    open.push_back(0.0);
                } else {
                    open.push_back(alloc[i] < caps[i] ? weights[i] : 0.0);
                }
            }
            if (excess == 0) break;
            std::vector<int> extra = largest_remainder(excess, open);
            for (size_t i = 0; i < alloc.size(); ++i)
                alloc[i] = std::min(alloc[i] + extra[i], caps[i]);
        }
        for (size_t k = 0; k < idx.size(); ++k) pairs[idx[k]].count = alloc[k];
    }

    std::vector<RecordPlan> plans;
    std::map<std::string, int> cell_counters;
    for (size_t pi = 0; pi < pairs.size(); ++pi) {
        const PairDesc& pair = pairs[pi];
        if (pair.count == 0) continue;
        const auto stories = registry.stories_for(pair.spec->name);
        if (stories.empty())
            throw std::runtime_error("no story available for graph " + pair.spec->name);

        // Alignment counts for this pair, interleaved deterministically. The
        // rotation by pair index keeps the mix on target even when pairs get
        // only one or two records each.
        const int rot = static_cast<int>(pi) % 3;
        std::vector<double> mix_rot(3);
        for (int a = 0; a < 3; ++a)
            mix_rot[static_cast<size_t>(a)] =
                config.alignment_mix[static_cast<size_t>((a + rot) % 3)];
        std::vector<int> counts_rot = largest_remainder(pair.count, mix_rot);
        std::vector<int> align_counts(3);
        for (int a = 0; a < 3; ++a)
            align_counts[static_cast<size_t>((a + rot) % 3)] = counts_rot[static_cast<size_t>(a)];
        std::vector<Alignment> align_seq;
        while (static_cast<int>(align_seq.size()) < pair.count) {
            for (int a = 0; a < 3; ++a) {
                const int slot = (a + rot) % 3;
                if (align_counts[static_cast<size_t>(slot)] > 0) {
                    align_counts[static_cast<size_t>(slot)] -= 1;
                    align_seq.push_back(static_cast<Alignment>(slot));
                }
            }
        }

        const int ns = static_cast<int>(stories.size());
        for (int idx = 0; idx < pair.count; ++idx) {
            RecordPlan plan;
            plan.cell.graph = pair.spec->name;
            plan.cell.type = pair.type;
            plan.cell.story_id = stories[static_cast<size_t>(idx % ns)]->id;
            plan.cell.alignment = align_seq[static_cast<size_t>(idx)];
            // Alternation that balances yes/no inside every
            // (graph, query, story) cell and its alignment sub-cells.
            plan.target_yes = ((idx % ns) + (idx / ns) + static_cast<int>(pi)) % 2 == 0;
            plan.within_cell_index = cell_counters[plan.cell.text()]++;
            plan.seed = substream_seed(config.seed,
                                       plan.cell.text() + "#" +
                                           std::to_string(plan.within_cell_index));
            plans.push_back(std::move(plan));
        }
    }
    return plans;
}

}  // namespace

std::vector<QuestionRecord> generate(const GenConfig& config) {
    config.validate();
    const StoryRegistry& registry = config.stories ? *config.stories : StoryRegistry::builtin();
    const auto plans = plan_records(config, registry);

    std::vector<QuestionRecord> records(plans.size());
    unsigned workers = config.parallelism > 0 ? static_cast<unsigned>(config.parallelism)
                                              : std::thread::hardware_concurrency();
    workers = std::max(1u, std::min<unsigned>(workers, 64));
    if (plans.size() < 2 || workers == 1) {
        for (size_t i = 0; i < plans.size(); ++i)
            records[i] = make_record(plans[i], registry, config);
    } else {
        std::atomic<size_t> cursor{0};
        std::vector<std::thread> threads;
        std::vector<std::exception_ptr> errors(workers);
        for (unsigned w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                try {
                    for (size_t i = cursor.fetch_add(1); i < plans.size();
                         i = cursor.fetch_add(1))
                        records[i] = make_record(plans[i], registry, config);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : threads) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    std::sort(records.begin(), records.end(),
              [](const QuestionRecord& a, const QuestionRecord& b) { return a.id < b.id; });
    return records;
}

namespace {

int count_sentences(const std::string& text) {
    int n = 0;
    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c != '.' && c != '?' && c != '!') continue;
        // A dot followed by a digit is a decimal point, not a terminator.
        if (i + 1 < text.size() && text[i + 1] != ' ' && text[i + 1] != '\n') continue;
        ++n;
    }
    return n;
}

int count_words(const std::string& text) {
    int n = 0;
    bool in_word = false;
    for (char c : text) {
        const bool space = c == ' ' || c == '\n' || c == '\t';
        if (!space && !in_word) ++n;
        in_word = !space;
    }
    return n;
}

}  // namespace

DatasetStats compute_stats(const std::vector<QuestionRecord>& records) {
    DatasetStats stats;
    stats.total = static_cast<int>(records.size());
    if (records.empty()) return stats;
    long long positives = 0;
    double qs = 0, qw = 0, rs = 0, rw = 0, nodes = 0, edges = 0;
    for (const auto& r : records) {
        stats.by_rung[r.rung] += 1;
        stats.by_query[query_type_name(r.query_type)] += 1;
        stats.by_graph[r.graph] += 1;
        stats.by_alignment[alignment_name(r.alignment)] += 1;
        if (r.answer == Answer::Yes) ++positives;
        const std::string prompt = r.given_info + " " + r.question;
        qs += count_sentences(prompt);
        qw += count_words(prompt);
        rs += count_sentences(r.reasoning);
        rw += count_words(r.reasoning);
        const auto& spec = catalog(r.graph);
        nodes += spec.dag.size();
        edges += spec.dag.edge_count();
    }
    const double n = static_cast<double>(records.size());
    stats.positive_fraction = static_cast<double>(positives) / n;
    stats.mean_question_sentences = qs / n;
    stats.mean_question_words = qw / n;
    stats.mean_reasoning_sentences = rs / n;
    stats.mean_reasoning_words = rw / n;
    stats.mean_nodes_per_graph = nodes / n;
    stats.mean_edges_per_graph = edges / n;
    return stats;
}

nlohmann::ordered_json DatasetStats::to_json() const {
    nlohmann::ordered_json j;
    j["total"] = total;
    j["by_rung"] = nlohmann::ordered_json::object();
    for (const auto& [r, c] : by_rung) j["by_rung"][std::to_string(r)] = c;
    j["by_query"] = by_query;
    j["by_graph"] = by_graph;
    j["by_alignment"] = by_alignment;
    j["positive_fraction"] = positive_fraction;
    j["mean_question_sentences"] = mean_question_sentences;
    j["mean_question_words"] = mean_question_words;
    j["mean_reasoning_sentences"] = mean_reasoning_sentences;
    j["mean_reasoning_words"] = mean_reasoning_words;
    j["mean_nodes_per_graph"] = mean_nodes_per_graph;
    j["mean_edges_per_graph"] = mean_edges_per_graph;
    return j;
}

std::string DatasetStats::to_text() const {
    std::ostringstream out;
    out << "total: " << total << "\n";
    out << "by rung:";
    for (const auto& [r, c] : by_rung) out << " " << r << "=" << c;
    out << "\nby query:";
    for (const auto& [q, c] : by_query) out << " " << q << "=" << c;
    out << "\nby graph:";
    for (const auto& [g, c] : by_graph) out << " " << g << "=" << c;
    out << "\nby alignment:";
    for (const auto& [a, c] : by_alignment) out << " " << a << "=" << c;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "\npositive class: %.1f%%\nquestion: %.2f sentences, %.2f words"
                  "\nexplanation: %.2f sentences, %.2f words"
                  "\ngraph size: %.2f nodes, %.2f edges\n",
                  positive_fraction * 100.0, mean_question_sentences, mean_question_words,
                  mean_reasoning_sentences, mean_reasoning_words, mean_nodes_per_graph,
                  mean_edges_per_graph);
    out << buf;
    return out.str();
}

nlohmann::ordered_json record_to_json(const QuestionRecord& r) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["graph"] = r.graph;
    j["story_id"] = r.story_id;
    j["alignment"] = alignment_name(r.alignment);
    j["query_type"] = query_type_name(r.query_type);
    j["rung"] = r.rung;
    j["given_info"] = r.given_info;
    j["question"] = r.question;
    j["answer"] = answer_word(r.answer);
    j["value"] = r.value;
    j["estimand"] = r.estimand;
    j["reasoning"] = r.reasoning;
    nlohmann::ordered_json meta;
    meta["seed"] = r.meta.seed;
    meta["engine_version"] = r.meta.engine_version;
    meta["flags"] = r.meta.flags;
    meta["params"] = r.meta.params;
    meta["target_value"] = r.meta.target_value;
    meta["do_value"] = r.meta.do_value;
    meta["direction_negated"] = r.meta.direction_negated;
    meta["candidate_set"] = r.meta.candidate_set;
    meta["evidence"] = r.meta.evidence;
    meta["within_cell_index"] = r.meta.within_cell_index;
    j["meta"] = std::move(meta);
    return j;
}

QuestionRecord record_from_json(const nlohmann::ordered_json& j) {
    QuestionRecord r;
    r.id = j.at("id").get<std::string>();
    r.graph = j.at("graph").get<std::string>();
    r.story_id = j.at("story_id").get<std::string>();
    r.alignment = alignment_from(j.at("alignment").get<std::string>());
    r.query_type = query_type_from(j.at("query_type").get<std::string>());
    r.rung = j.at("rung").get<int>();
    r.given_info = j.at("given_info").get<std::string>();
    r.question = j.at("question").get<std::string>();
    const std::string ans = j.at("answer").get<std::string>();
    if (ans != "yes" && ans != "no")
        throw std::invalid_argument("record answer must be yes/no, got '" + ans + "'");
    r.answer = ans == "yes" ? Answer::Yes : Answer::No;
    r.value = j.at("value").get<double>();
    r.estimand = j.at("estimand").get<std::string>();
    r.reasoning = j.at("reasoning").get<std::string>();
    const auto& meta = j.at("meta");
    r.meta.seed = meta.at("seed").get<std::uint64_t>();
    r.meta.engine_version = meta.at("engine_version").get<std::string>();
    r.meta.flags = meta.at("flags").get<std::vector<std::string>>();
    r.meta.params = meta.at("params");
    r.meta.target_value = meta.at("target_value").get<int>();
    r.meta.do_value = meta.at("do_value").get<int>();
    r.meta.direction_negated = meta.at("direction_negated").get<bool>();
    r.meta.candidate_set = meta.at("candidate_set").get<std::vector<std::string>>();
    r.meta.evidence = meta.at("evidence").get<Assignment>();
    r.meta.within_cell_index = meta.at("within_cell_index").get<int>();
    return r;
}

void write_jsonl(const std::vector<QuestionRecord>& records, std::ostream& out) {
    for (const auto& r : records) out << record_to_json(r).dump() << "\n";
}

void write_jsonl(const std::vector<QuestionRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_jsonl(records, out);
}

std::vector<QuestionRecord> read_jsonl(std::istream& in) {
    std::vector<QuestionRecord> records;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            records.push_back(record_from_json(nlohmann::ordered_json::parse(line)));
        } catch (const std::exception& e) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return records;
}

std::vector<QuestionRecord> read_jsonl(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return read_jsonl(in);
}

VerifyResult verify_records(const std::vector<QuestionRecord>& records,
                            const StoryRegistry* stories) {
    const StoryRegistry& registry = stories ? *stories : StoryRegistry::builtin();
    VerifyResult result;
    std::map<std::string, std::pair<int, int>> cell_balance;  // cell -> (yes, no)

    for (const auto& rec : records) {
        ++result.checked;
        auto fail = [&](const std::string& reason) {
            result.failures.push_back({rec.id, reason});
        };
        try {
            const CgteSpec& spec = catalog(rec.graph);
            if (rec.rung != rung_of(rec.query_type)) {
                fail("rung inconsistent with query type");
                continue;
            }

            // Engine re-derivation from stored params and instance fields.
            Params params = Params::from_json(spec.dag, rec.meta.params);
            QueryInstance qinst;
            qinst.type = rec.query_type;
            qinst.graph = rec.graph;
            qinst.target_value = rec.meta.target_value;
            qinst.do_value = rec.meta.do_value;
            qinst.direction_negated = rec.meta.direction_negated;
            qinst.candidate_set = rec.meta.candidate_set;
            qinst.evidence = rec.meta.evidence;
            Estimand estimand = derive_estimand(spec, qinst);
            const double value = evaluate(spec, params, estimand);
            if (value != rec.value) {
                fail("value mismatch: engine " + std::to_string(value));
                continue;
            }
            if (render_estimand(estimand) != rec.estimand) {
                fail("estimand text mismatch");
                continue;
            }
            const double truth = oracle(spec, params, qinst);
            if (std::fabs(value - truth) > kOracleTolerance) {
                fail("oracle gate: |" + std::to_string(value) + " - " + std::to_string(truth) +
                     "| > 1e-9");
                continue;
            }
            // Guard-free decision: the tie guard belongs to sampling; a
            // flipped counterfactual value can sit one ulp inside it.
            auto decide_lenient = [](QueryType type, double v) {
                const bool half = type == QueryType::MarginalProb ||
                                  type == QueryType::CounterfactualProb ||
                                  type == QueryType::AdjustmentSet;
                return v > (half ? 0.5 : 0.0) ? Answer::Yes : Answer::No;
            };
            Answer canonical = decide_lenient(qinst.type, value);
            Answer expect = qinst.direction_negated &&
                                    qinst.type != QueryType::CounterfactualProb
                                ? (canonical == Answer::Yes ? Answer::No : Answer::Yes)
                                : canonical;
            if (expect != rec.answer) {
                fail("answer mismatch");
                continue;
            }

            // Full replay from the stored seed must reproduce the record.
            RecordPlan plan;
            plan.cell = {rec.graph, rec.query_type, rec.story_id, rec.alignment};
            plan.within_cell_index = rec.meta.within_cell_index;
            plan.target_yes = rec.answer == Answer::Yes;
            plan.seed = rec.meta.seed;
            GenConfig replay_config;
            replay_config.total = 0;
            QuestionRecord replayed = make_record(plan, registry, replay_config);
            replayed.id = rec.id;  // ids come from the plan; keep the stored one
            if (record_to_json(replayed).dump() != record_to_json(rec).dump()) {
                fail("replay from seed differs");
                continue;
            }

            auto& bal = cell_balance[rec.graph + "." + query_type_name(rec.query_type) + "." +
                                     rec.story_id];
            (rec.answer == Answer::Yes ? bal.first : bal.second) += 1;
        } catch (const std::exception& e) {
            fail(std::string("exception: ") + e.what());
        }
    }
    for (const auto& [cell, bal] : cell_balance) {
        if (std::abs(bal.first - bal.second) > 1) {
            result.failures.push_back(
                {cell, "cell balance |" + std::to_string(bal.first) + " yes - " +
                           std::to_string(bal.second) + " no| > 1"});
        }
    }
    return result;
}

}  // namespace ladder
