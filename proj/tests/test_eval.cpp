#include "counterbench/bench.hpp"
#include "counterbench/coin.hpp"
#include "counterbench/error.hpp"
#include "counterbench/eval.hpp"
#include "counterbench/fixtures.hpp"
#include "counterbench/verify.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace counterbench;
using eval::Label;
namespace fs = std::filesystem;

namespace {

std::string data_file(const std::string& name)
{
    std::ifstream in(std::string(COUNTERBENCH_TEST_DATA) + "/" + name, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path temp_file(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / "counterbench_test_eval";
    fs::create_directories(dir);
    fs::remove(dir / name);
    return dir / name;
}

bench::BenchmarkItem nuv_item() { return bench::make_item(fixtures::nuv(), "nuv"); }

const std::vector<bench::BenchmarkItem>& small_set()
{
    static const auto items = [] {
        bench::GenConfig c;
        c.total = 40;
        c.per_type = 10;
        c.seed = 5;
        return bench::generate(c);
    }();
    return items;
}

eval::RunOptions quick(eval::Strategy s = eval::Strategy::Standard)
{
    eval::RunOptions o;
    o.strategy = s;
    o.backoff = std::chrono::milliseconds(1);
    o.max_backoff = std::chrono::milliseconds(2);
    return o;
}

std::vector<Label> labels_of(const std::vector<eval::Transcript>& ts)
{
    std::vector<Label> out;
    for (const auto& t : ts) out.push_back(t.label);
    return out;
}

std::string replace(std::string s, std::string_view from, std::string_view to)
{
    const auto at = s.find(from);
    REQUIRE(at != std::string::npos);
    return s.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("strategy names")
{
    for (auto s : {eval::Strategy::Standard, eval::Strategy::CausalCoT, eval::Strategy::CoIn})
        CHECK(eval::parse_strategy(eval::to_string(s)) == s);
    CHECK(eval::parse_strategy("causalcot") == eval::Strategy::CausalCoT);
    CHECK_FALSE(eval::parse_strategy("cot").has_value());
}

TEST_CASE("prompts")
{
    const auto item = nuv_item();
    const auto standard = eval::build_prompt(eval::Strategy::Standard, item);
    CHECK(standard == item.text.full());
    CHECK(standard == fixtures::kNuv);
    CHECK(standard.ends_with("if not Nuv and not Splee?"));

    const auto cot = eval::build_prompt(eval::Strategy::CausalCoT, item);
    CHECK(cot.rfind(standard, 0) == 0);
    CHECK(cot.find("Extract the causal graph") != std::string::npos);
    for (auto step : {"Step 1", "Step 2", "Step 3", "Step 4", "Step 5", "Step 6"}) CHECK(cot.find(step) != std::string::npos);

    const auto coin = eval::build_prompt(eval::Strategy::CoIn, item);
    CHECK(coin.find("Step 3) Adopt the following algorithm") != std::string::npos);
    CHECK(coin.find(standard) != std::string::npos);

    for (auto s : {eval::Strategy::Standard, eval::Strategy::CausalCoT, eval::Strategy::CoIn})
        CHECK(eval::build_prompt(s, item) == eval::build_prompt(s, item));

    eval::PromptOptions custom;
    custom.causal_cot_template = "Think.";
    CHECK(eval::build_prompt(eval::Strategy::CausalCoT, item, custom) == standard + "\n\nThink.");
}

TEST_CASE("response classification")
{
    CHECK(eval::classify_response("No.", "") == Label::No);
    CHECK(eval::classify_response("Yes", "") == Label::Yes);
    CHECK(eval::classify_response("yes, Wrox would occur.", "") == Label::Yes);
    CHECK(eval::classify_response("", "") == Label::Blank);
    CHECK(eval::classify_response(" \n\t", "prompt") == Label::Blank);
    CHECK(eval::classify_response("I cannot determine that.", "") == Label::NoAnswerFound);
    CHECK(eval::classify_response("Nobody knows; nothing is certain.", "") == Label::NoAnswerFound);
    CHECK(eval::classify_response("Yes or no: it is yes. Actually no.", "") == Label::TypeMismatch);
    CHECK(eval::classify_response("Answers: yes, no, yes, yes, no", "") == Label::TypeMismatch);

    // A verdict stated early is still found when the tail has none.
    CHECK(eval::classify_response("No. The reason is that Plog stays on while Druk is off, so Zimb keeps going and "
                                  "Wrox follows through Yurd, and the rest of the chain carries it along.",
                                  "") == Label::No);
}

TEST_CASE("incomprehensible response fixtures")
{
    // Repeating: the model echoes the question back many times.
    auto glent = text::parse(
        "We know that Glent causes Razz, Razz and Glent together cause Pex, Pex causes Zurn, Zurn causes Melf, and "
        "Melf and Razz together cause Zlim. Would Zlim occur if not Glent instead of Glent?");
    const auto item = bench::make_item(glent, "glent");
    const auto prompt = eval::build_prompt(eval::Strategy::CausalCoT, item);
    CHECK(eval::classify_response(data_file("repeating_response.txt"), prompt) == Label::Repeating);

    // Type mismatch: a long tuple of binary values.
    CHECK(eval::classify_response(data_file("type_mismatch_response.txt"), prompt) == Label::TypeMismatch);

    // Blank.
    CHECK(eval::classify_response("", prompt) == Label::Blank);

    // An echo that does end in a verdict is not a repetition.
    CHECK(eval::classify_response(data_file("repeating_response.txt") + "\nNo.", prompt) == Label::No);
}

TEST_CASE("classification is total and deterministic")
{
    Rng rng(3);
    const std::vector<std::string> vocab{"yes", "no", "Yes.", "No,", "0", "1", ",", "maybe", "Wrox", "occur", "\n", "(", ")", "not"};
    for (int i = 0; i < 3000; ++i) {
        std::string r;
        const auto n = rng.below(40);
        for (std::uint64_t k = 0; k < n; ++k) r += rng.pick(vocab) + (rng.chance(0.7) ? " " : "");
        const Label a = eval::classify_response(r, "Would Wrox occur?");
        REQUIRE(a == eval::classify_response(r, "Would Wrox occur?"));
        REQUIRE(eval::parse_label(eval::to_string(a)) == a);
    }
}

TEST_CASE("transcript records")
{
    eval::Transcript t{"basic-5-0001", "Would it?\n\"quoted\"", "Yes.", 12.5, 2, Label::Yes, ""};
    const auto back = eval::transcript_from_json(eval::to_json_line(t));
    CHECK(back.item_id == t.item_id);
    CHECK(back.prompt == t.prompt);
    CHECK(back.response == t.response);
    CHECK(back.retries == 2);
    CHECK(back.label == Label::Yes);
    CHECK(eval::read_transcripts(temp_file("missing.jsonl")).empty());
    CHECK_THROWS_AS(eval::transcript_from_json("{}", 4), Error);
}

TEST_CASE("mock clients score as expected")
{
    const auto& items = small_set();
    for (auto s : {eval::Strategy::Standard, eval::Strategy::CausalCoT, eval::Strategy::CoIn}) {
        eval::OracleClient oracle(items);
        const auto stats = eval::score(items, eval::run_eval(oracle, items, quick(s)));
        CHECK(stats.average() == 100.0);
        CHECK(stats.overall.accuracy() == 100.0);
    }
    auto yes = eval::make_yes_client();
    const auto ts = eval::run_eval(*yes, items, quick());
    for (const auto& t : ts) CHECK(t.label == Label::Yes);
    const auto stats = eval::score(items, ts);
    CHECK(stats.average() == 50.0);
    CHECK(stats.overall.accuracy() == 50.0);
    for (const auto& [k, b] : stats.by_kind) CHECK(b.accuracy() == 50.0);
}

TEST_CASE("parallel runs give the same report")
{
    const auto& items = small_set();
    eval::OracleClient oracle(items);
    const auto path = temp_file("base.jsonl");
    auto o = quick(eval::Strategy::CoIn);
    o.transcript_path = path;
    const auto base = eval::run_eval(oracle, items, o);

    eval::ReplayClient replay(path);
    auto o1 = quick(eval::Strategy::CoIn);
    auto o8 = o1;
    o8.parallelism = 8;
    const auto r1 = eval::run_eval(replay, items, o1);
    const auto r8 = eval::run_eval(replay, items, o8);
    CHECK(labels_of(r1) == labels_of(r8));
    CHECK(eval::score(items, r1) == eval::score(items, r8));
    CHECK(eval::score(items, r1) == eval::score(items, base));
    for (std::size_t i = 0; i < items.size(); ++i) CHECK(r8[i].item_id == items[i].id);
}

TEST_CASE("transient failures are retried, then recorded as blank")
{
    const auto& items = small_set();
    std::atomic<int> calls{0};
    eval::ScriptedClient flaky([&](const eval::ModelRequest& r) -> std::string {
        if (++calls % 3 != 0) throw eval::TransientFailure("429");
        CHECK(r.temperature == 0.0);
        return "Yes";
    });
    const std::vector<bench::BenchmarkItem> one{items[0]};
    const auto ts = eval::run_eval(flaky, one, quick());
    CHECK(ts[0].retries == 2);
    CHECK(ts[0].label == Label::Yes);

    eval::ScriptedClient dead([](const eval::ModelRequest&) -> std::string { throw eval::TransientFailure("503"); });
    const auto blank = eval::run_eval(dead, one, quick());
    CHECK(blank[0].label == Label::Blank);
    CHECK(blank[0].retries == 3);
    CHECK_FALSE(blank[0].error.empty());
}

TEST_CASE("unreachable endpoint aborts and keeps finished transcripts")
{
    const auto& items = small_set();
    std::atomic<int> calls{0};
    eval::ScriptedClient client([&](const eval::ModelRequest&) -> std::string {
        if (++calls > 5) throw Error(ErrorCode::EndpointUnreachable, "connection refused");
        return "No";
    });
    const auto path = temp_file("partial.jsonl");
    auto o = quick();
    o.transcript_path = path;
    try {
        eval::run_eval(client, items, o);
        FAIL("expected EndpointUnreachable");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EndpointUnreachable);
    }
    CHECK(eval::read_transcripts(path).size() == 5);

    eval::HttpClient nowhere("http://127.0.0.1:9/v1/chat/completions", "m", std::chrono::seconds(1));
    try {
        nowhere.send({"x", "hello", 0.0, 16});
        FAIL("expected EndpointUnreachable");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EndpointUnreachable);
    }
}

TEST_CASE("resume finishes an interrupted run")
{
    const auto& items = small_set();
    eval::OracleClient oracle(items);
    const auto full_path = temp_file("full.jsonl");
    auto o = quick(eval::Strategy::CausalCoT);
    o.transcript_path = full_path;
    const auto full = eval::run_eval(oracle, items, o);

    // Interrupt after 17 items.
    std::atomic<int> calls{0};
    eval::ScriptedClient interrupted([&](const eval::ModelRequest& r) -> std::string {
        if (++calls > 17) throw Error(ErrorCode::EndpointUnreachable, "gone");
        return oracle.send(r);
    });
    const auto path = temp_file("resumed.jsonl");
    o.transcript_path = path;
    CHECK_THROWS_AS(eval::run_eval(interrupted, items, o), Error);

    std::atomic<int> resumed_calls{0};
    eval::ScriptedClient rest([&](const eval::ModelRequest& r) -> std::string {
        ++resumed_calls;
        return oracle.send(r);
    });
    o.resume = true;
    const auto resumed = eval::run_eval(rest, items, o);
    CHECK(resumed_calls == static_cast<int>(items.size()) - 17);
    CHECK(eval::score(items, resumed) == eval::score(items, full));
    CHECK(eval::read_transcripts(path).size() == items.size());
}

TEST_CASE("scoring")
{
    bench::GenConfig c;
    c.total = 8;
    c.per_type = 2;
    c.difficulty_levels = {6};
    const auto items = bench::generate(c);

    std::vector<Label> truth;
    for (const auto& it : items) truth.push_back(it.answer == Answer::Yes ? Label::Yes : Label::No);
    const auto all = eval::score(items, truth);
    CHECK(all.overall == eval::Bucket{8, 8});
    for (const auto& [k, b] : all.by_kind) CHECK(b.accuracy() == 100.0);
    CHECK(all.by_difficulty.at(6).accuracy() == 100.0);
    CHECK(all.average() == 100.0);

    const auto yes = eval::score(items, std::vector<Label>(8, Label::Yes));
    CHECK(yes.overall.accuracy() == 50.0);
    CHECK(yes.confusion.at("no").at("yes") == 4);

    CHECK_THROWS_AS(eval::score(items, std::vector<Label>(7, Label::Yes)), Error);

    // Counts add up, and order does not matter.
    std::vector<Label> mixed{Label::Yes, Label::Blank, Label::No, Label::Repeating, Label::Yes, Label::TypeMismatch, Label::No, Label::NoAnswerFound};
    const auto s = eval::score(items, mixed);
    std::size_t kinds = 0;
    for (const auto& [k, b] : s.by_kind) kinds += b.total;
    CHECK(kinds == 8);
    std::size_t confusion = 0;
    for (const auto& [t, row] : s.confusion)
        for (const auto& [l, n] : row) confusion += n;
    CHECK(confusion == 8);
    std::size_t odd = 0;
    for (const auto& [l, n] : s.incomprehensible) odd += n;
    CHECK(odd == 4);
    auto rev_items = items;
    auto rev_labels = mixed;
    std::reverse(rev_items.begin(), rev_items.end());
    std::reverse(rev_labels.begin(), rev_labels.end());
    CHECK(eval::score(rev_items, rev_labels) == s);
}

TEST_CASE("mostly incomprehensible responses cap accuracy")
{
    // 824 of 1000 responses incomprehensible (82.4%), the rest correct.
    bench::GenConfig c;
    c.total = 1000;
    c.per_type = 250;
    c.difficulty_levels = {5};
    c.balance = false;
    const auto items = bench::generate(c);
    std::vector<Label> labels;
    for (std::size_t i = 0; i < items.size(); ++i)
        labels.push_back(i < 824 ? Label::Repeating : (items[i].answer == Answer::Yes ? Label::Yes : Label::No));
    const auto s = eval::score(items, labels);
    CHECK(s.overall.accuracy() <= 17.6 + 1e-9);
    CHECK(s.overall.accuracy() == doctest::Approx(17.6));
}

TEST_CASE("error taxonomy")
{
    const auto item = nuv_item();
    REQUIRE(item.answer == Answer::Yes);

    const auto cot = data_file("causalcot_nuv_response.txt");
    CHECK(eval::classify_error(item, cot) == eval::ErrorCategory::WrongInference);
    CHECK(eval::classify_error(item, cot, eval::classify_response(cot, fixtures::kNuv)) == eval::ErrorCategory::WrongInference);

    const auto solved = coin::render_solution(coin::make_example(fixtures::kNuv, 0));
    const auto flipped = replace(solved, "the overall answer to the question is yes.", "the overall answer to the question is no.");
    CHECK(eval::classify_response(flipped, "") == Label::No);
    CHECK(eval::classify_error(item, flipped) == eval::ErrorCategory::WrongConclusion);

    const auto dropped = replace(flipped, "V3->V6, ", "");
    CHECK(eval::classify_error(item, dropped) == eval::ErrorCategory::WrongRelations);

    const auto wrong_given = replace(flipped, "V1 = 0 (not Splee)", "V1 = 1 (Splee)");
    CHECK(eval::classify_error(item, wrong_given) == eval::ErrorCategory::WrongRelations);

    CHECK_FALSE(eval::classify_error(item, "No.").has_value());
    CHECK_FALSE(eval::classify_error(item, "").has_value());
}

TEST_CASE("taxonomy counts land in the report")
{
    const auto item = nuv_item();
    const auto solved = coin::render_solution(coin::make_example(fixtures::kNuv, 0));
    const auto flipped = replace(solved, "is yes.", "is no.");
    const std::vector<bench::BenchmarkItem> items{item, item, item};
    std::vector<eval::Transcript> ts(3);
    ts[0] = {"nuv", "", flipped, 0, 0, eval::classify_response(flipped, ""), ""};
    ts[1] = {"nuv", "", "No.", 0, 0, Label::No, ""};
    ts[2] = {"nuv", "", solved, 0, 0, eval::classify_response(solved, ""), ""};
    const auto s = eval::score(items, ts);
    CHECK(s.overall == eval::Bucket{3, 1});
    CHECK(s.errors.at("wrong_conclusion") == 1);
    CHECK(s.unclassified_errors == 1);
}

TEST_CASE("report rendering")
{
    const auto& items = small_set();
    eval::OracleClient oracle(items);
    eval::EvalReport r;
    r.strategy = "coin";
    r.model = oracle.id();
    r.items = items.size();
    r.stats = eval::score(items, eval::run_eval(oracle, items, quick(eval::Strategy::CoIn)));

    const auto row = eval::format_row(r.stats, "coin");
    CHECK(row.find("Basic") != std::string::npos);
    CHECK(row.find("Cond.") != std::string::npos);
    CHECK(row.find("Joint") != std::string::npos);
    CHECK(row.find("Nested") != std::string::npos);
    CHECK(row.find("Avg.") != std::string::npos);
    CHECK(row.find("100.0") != std::string::npos);

    const auto j = nlohmann::json::parse(eval::report_json(r));
    CHECK(j.at("strategy") == "coin");
    CHECK(j.at("model") == "mock-oracle");
    CHECK(j.at("temperature") == 0.0);
    CHECK(j.contains("started_at"));
    CHECK(j.at("average") == 100.0);
    CHECK(j.at("items") == items.size());
}

TEST_CASE("self-check harness")
{
    verify::Options o;
    o.n = 500;
    o.seed = 7;
    const auto ok = verify::run(o);
    CHECK(ok.checked == 500);
    CHECK_FALSE(ok.failure.has_value());

    o.n = 0;
    CHECK(verify::run(o).checked == 0);

    // A broken oracle that reads OR as NOR is caught with a counterexample.
    o.n = 1000;
    o.oracle = [](const Scm& scm, const Query& q, const RootAssignment& roots) {
        std::vector<Role> roles;
        std::vector<Mechanism> mechs;
        for (VarId v : scm.variables()) {
            roles.push_back(scm.role(v));
            Mechanism m = scm.mechanism(v);
            if (auto* f = std::get_if<Formula>(&m); f && f->op == Op::Or) {
                // NOT(a OR b) == NOT a AND NOT b
                f->op = Op::And;
                for (auto& l : f->args) l.negated = !l.negated;
            }
            mechs.push_back(m);
        }
        return answer(Scm(roles, mechs), q, roots);
    };
    const auto bad = verify::run(o);
    REQUIRE(bad.failure.has_value());
    CHECK(bad.failure->check == "coin-vs-oracle");
    CHECK(bad.failure->counterexample.find("\"equations\"") != std::string::npos);
    CHECK(bad.failure->counterexample.find(" OR ") != std::string::npos);
}
