#include "counterbench/eval.hpp"

#include "counterbench/error.hpp"
#include "counterbench/symbols.hpp"

#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_set>

namespace counterbench::eval {

using Json = nlohmann::ordered_json;

std::string_view to_string(Strategy s)
{
    switch (s) {
    case Strategy::Standard: return "standard";
    case Strategy::CausalCoT: return "causalcot";
    case Strategy::CoIn: return "coin";
    }
    return "?";
}

std::optional<Strategy> parse_strategy(std::string_view s)
{
    for (Strategy k : {Strategy::Standard, Strategy::CausalCoT, Strategy::CoIn})
        if (to_string(k) == s) return k;
    return std::nullopt;
}

const std::string_view kCausalCotTemplate =
    "Guidance: Address the question by following the steps below:\n"
    "Step 1: Extract the causal graph: Identify the causal graph that depicts the relationships in the scenario, "
    "written as edges in \"var1 -> var2\" format.\n"
    "Step 2: Determine the query type: State which kind of causal question is being asked.\n"
    "Step 3: Formalize the query: Write the question in counterfactual notation.\n"
    "Step 4: Gather all relevant data: List every value that the question gives or assumes.\n"
    "Step 5: Deduce the estimand using causal inference: Trace how the given values propagate along the graph to the "
    "outcome.\n"
    "Step 6: Calculate the estimand: Compute the value of the outcome and say whether it would occur.\n"
    "Start your final answer with \"Yes\" or \"No\".";

std::string build_prompt(Strategy strategy, const bench::BenchmarkItem& item, const PromptOptions& options)
{
    const std::string scenario = item.text.full();
    switch (strategy) {
    case Strategy::Standard: return scenario;
    case Strategy::CausalCoT: return scenario + "\n\n" + options.causal_cot_template;
    case Strategy::CoIn:
        return coin::build_coin_prompt(scenario, options.exemplars.empty() ? coin::default_exemplars() : options.exemplars);
    }
    return scenario;
}

// ---------------------------------------------------------------------------
// Clients

HttpClient::HttpClient(std::string endpoint, std::string model, std::chrono::seconds timeout)
    : model_(std::move(model)), timeout_(timeout)
{
    const auto scheme_end = endpoint.find("://");
    if (scheme_end == std::string::npos) throw Error(ErrorCode::InvalidArgument, "endpoint must start with http:// or https://");
    const auto path_start = endpoint.find('/', scheme_end + 3);
    scheme_host_ = endpoint.substr(0, path_start);
    path_ = path_start == std::string::npos ? "/v1/chat/completions" : endpoint.substr(path_start);
    if (const char* key = std::getenv("COUNTERBENCH_API_KEY")) api_key_ = key;
}

std::string HttpClient::send(const ModelRequest& request)
{
    httplib::Client cli(scheme_host_);
    if (!cli.is_valid()) throw Error(ErrorCode::EndpointUnreachable, "unsupported endpoint " + scheme_host_);
    cli.set_connection_timeout(std::chrono::seconds(10));
    cli.set_read_timeout(timeout_);
    cli.set_write_timeout(timeout_);
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

    Json body;
    body["model"] = model_;
    body["messages"] = Json::array({Json{{"role", "system"}, {"content", "You are a helpful assistant."}},
                                    Json{{"role", "user"}, {"content", request.prompt}}});
    body["temperature"] = request.temperature;
    body["max_tokens"] = request.max_tokens;

    auto res = cli.Post(path_, headers, body.dump(), "application/json");
    if (!res) throw Error(ErrorCode::EndpointUnreachable, scheme_host_ + ": " + httplib::to_string(res.error()));
    if (res->status == 401 || res->status == 403 || res->status == 404)
        throw Error(ErrorCode::EndpointUnreachable, scheme_host_ + path_ + " answered HTTP " + std::to_string(res->status));
    if (res->status != 200) throw TransientFailure("HTTP " + std::to_string(res->status));
    try {
        const auto reply = Json::parse(res->body);
        const auto& content = reply.at("choices").at(0).at("message").at("content");
        return content.is_string() ? content.get<std::string>() : std::string();
    } catch (const Json::exception& e) {
        throw TransientFailure(std::string("malformed completion: ") + e.what());
    }
}

OracleClient::OracleClient(const std::vector<bench::BenchmarkItem>& items)
{
    for (const auto& item : items) answers_[item.id] = item.answer;
}

std::string OracleClient::send(const ModelRequest& request)
{
    auto it = answers_.find(request.item_id);
    if (it == answers_.end()) throw TransientFailure("oracle has no item " + request.item_id);
    return it->second == Answer::Yes ? "Yes." : "No.";
}

ReplayClient::ReplayClient(const std::filesystem::path& transcripts)
{
    if (!std::filesystem::exists(transcripts)) throw Error(ErrorCode::IoError, "no transcript file " + transcripts.string());
    for (auto& t : read_transcripts(transcripts)) responses_[t.item_id] = std::move(t.response);
}

std::string ReplayClient::send(const ModelRequest& request)
{
    auto it = responses_.find(request.item_id);
    if (it == responses_.end()) throw TransientFailure("no recorded response for " + request.item_id);
    return it->second;
}

std::unique_ptr<ModelClient> make_yes_client()
{
    return std::make_unique<ScriptedClient>([](const ModelRequest&) { return std::string("Yes"); }, "mock-yes");
}

// ---------------------------------------------------------------------------
// Classification

std::string_view to_string(Label l)
{
    switch (l) {
    case Label::Yes: return "yes";
    case Label::No: return "no";
    case Label::Blank: return "blank";
    case Label::Repeating: return "repeating";
    case Label::TypeMismatch: return "type_mismatch";
    case Label::NoAnswerFound: return "no_answer_found";
    }
    return "?";
}

std::optional<Label> parse_label(std::string_view s)
{
    for (Label l : {Label::Yes, Label::No, Label::Blank, Label::Repeating, Label::TypeMismatch, Label::NoAnswerFound})
        if (to_string(l) == s) return l;
    return std::nullopt;
}

namespace {

std::vector<std::string> words(std::string_view s)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        const auto c = static_cast<unsigned char>(ch);
        if (std::isalnum(c)) {
            cur.push_back(static_cast<char>(std::tolower(c)));
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

std::string trim(std::string_view s, std::string_view junk = " \t\r\n")
{
    const auto b = s.find_first_not_of(junk);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(junk);
    return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string_view s)
{
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

bool has_binary_list(std::string_view s, std::size_t run_length)
{
    std::size_t run = 0;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto end = s.find(',', start);
        if (end == std::string_view::npos) end = s.size();
        const std::string item = lower(trim(s.substr(start, end - start), " \t\r\n()[]{}\"'."));
        if (item == "0" || item == "1" || item == "yes" || item == "no") {
            if (++run >= run_length) return true;
        } else {
            run = 0;
        }
        start = end + 1;
    }
    return false;
}

std::vector<std::string> shingles(const std::vector<std::string>& w, std::size_t k)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i + k <= w.size(); ++i) {
        std::string s;
        for (std::size_t j = i; j < i + k; ++j) (s += w[j]) += ' ';
        out.push_back(std::move(s));
    }
    return out;
}

std::optional<Label> first_verdict(const std::vector<std::string>& w, std::size_t from)
{
    for (std::size_t i = from; i < w.size(); ++i) {
        if (w[i] == "yes") return Label::Yes;
        if (w[i] == "no") return Label::No;
    }
    return std::nullopt;
}

}  // namespace

Label classify_response(std::string_view response, std::string_view prompt, const ClassifierConfig& config)
{
    if (trim(response).empty()) return Label::Blank;

    const auto w = words(response);
    const auto region = static_cast<std::size_t>(std::ceil(static_cast<double>(w.size()) * config.final_region));
    const std::size_t from = w.size() - std::min(region, w.size());

    std::set<std::string> verdicts;
    for (std::size_t i = from; i < w.size(); ++i)
        if (w[i] == "yes" || w[i] == "no") verdicts.insert(w[i]);
    if (verdicts.size() > 1 || has_binary_list(response, config.binary_run)) return Label::TypeMismatch;

    const auto any_verdict = first_verdict(w, 0);
    if (!any_verdict && w.size() >= config.shingle_words) {
        const auto mine = shingles(w, config.shingle_words);
        // Counted with multiplicity so that each echoed copy weighs in.
        const auto echo = shingles(words(prompt), config.shingle_words);
        const std::set<std::string> theirs(echo.begin(), echo.end());
        std::size_t shared = 0;
        for (const auto& s : mine) shared += theirs.contains(s);
        if (static_cast<double>(shared) >= config.repeat_overlap * static_cast<double>(mine.size()))
            return Label::Repeating;
    }

    if (auto v = first_verdict(w, from)) return *v;
    if (any_verdict) return *any_verdict;
    return Label::NoAnswerFound;
}

bool correct(Label label, Answer truth)
{
    return (label == Label::Yes && truth == Answer::Yes) || (label == Label::No && truth == Answer::No);
}

// ---------------------------------------------------------------------------
// Transcripts

std::string to_json_line(const Transcript& t)
{
    Json j;
    j["id"] = t.item_id;
    j["prompt"] = t.prompt;
    j["response"] = t.response;
    j["latency_ms"] = t.latency_ms;
    j["retries"] = t.retries;
    j["label"] = std::string(to_string(t.label));
    j["error"] = t.error;
    return j.dump();
}

Transcript transcript_from_json(std::string_view json, std::size_t line)
{
    auto fail = [&](const std::string& what) {
        throw Error(ErrorCode::SchemaViolation, "transcript line " + std::to_string(line) + ": " + what);
    };
    Json j;
    try {
        j = Json::parse(json);
    } catch (const Json::parse_error& e) {
        fail(std::string("malformed JSON: ") + e.what());
    }
    Transcript t;
    try {
        t.item_id = j.at("id").get<std::string>();
        t.prompt = j.value("prompt", "");
        t.response = j.at("response").get<std::string>();
        t.latency_ms = j.value("latency_ms", 0.0);
        t.retries = j.value("retries", 0);
        t.error = j.value("error", "");
        const auto label = parse_label(j.value("label", "blank"));
        if (!label) fail("field 'label' has an unknown value");
        t.label = *label;
    } catch (const Json::exception& e) {
        fail(e.what());
    }
    return t;
}

std::vector<Transcript> read_transcripts(const std::filesystem::path& path)
{
    std::vector<Transcript> out;
    std::ifstream in(path, std::ios::binary);
    if (!in) return out;
    std::string line;
    for (std::size_t n = 1; std::getline(in, line); ++n) {
        if (trim(line).empty()) continue;
        out.push_back(transcript_from_json(line, n));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Running

namespace {

Transcript run_one(ModelClient& client, const bench::BenchmarkItem& item, const RunOptions& options)
{
    Transcript t;
    t.item_id = item.id;
    t.prompt = build_prompt(options.strategy, item, options.prompts);
    const ModelRequest request{item.id, t.prompt, options.temperature, options.max_tokens};

    for (int attempt = 0;; ++attempt) {
        t.retries = attempt;
        const auto start = std::chrono::steady_clock::now();
        try {
            t.response = client.send(request);
            t.latency_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            t.label = classify_response(t.response, t.prompt, options.classifier);
            t.error.clear();
            return t;
        } catch (const TransientFailure& e) {
            t.error = e.what();
        } catch (const Error& e) {
            if (e.code() != ErrorCode::EndpointUnreachable) throw;
            if (attempt >= options.max_retries) throw;
            t.error = e.what();
        }
        if (attempt >= options.max_retries) break;
        auto delay = options.backoff * (1LL << std::min(attempt, 20));
        std::this_thread::sleep_for(std::min<std::chrono::milliseconds>(delay, options.max_backoff));
    }
    t.response.clear();
    t.label = Label::Blank;
    return t;
}

}  // namespace

std::vector<Transcript> run_eval(ModelClient& client, const std::vector<bench::BenchmarkItem>& items,
                                 const RunOptions& options)
{
    if (options.parallelism == 0) throw Error(ErrorCode::InvalidArgument, "parallelism must be at least 1");

    std::map<std::string, Transcript> done;
    if (options.transcript_path && options.resume)
        for (auto& t : read_transcripts(*options.transcript_path)) done[t.item_id] = std::move(t);

    std::ofstream sink;
    if (options.transcript_path) {
        sink.open(*options.transcript_path, options.resume ? std::ios::app | std::ios::binary : std::ios::trunc | std::ios::binary);
        if (!sink) throw Error(ErrorCode::IoError, "cannot write " + options.transcript_path->string());
    }

    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < items.size(); ++i)
        if (!done.contains(items[i].id)) pending.push_back(i);

    std::vector<std::optional<Transcript>> fresh(items.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> abort{false};
    std::mutex mu;
    std::exception_ptr failure;

    auto worker = [&] {
        while (!abort) {
            const std::size_t slot = next++;
            if (slot >= pending.size()) return;
            const std::size_t i = pending[slot];
            try {
                Transcript t = run_one(client, items[i], options);
                const std::lock_guard lock(mu);
                if (sink.is_open()) sink << to_json_line(t) << '\n' << std::flush;
                fresh[i] = std::move(t);
            } catch (...) {
                const std::lock_guard lock(mu);
                if (!failure) failure = std::current_exception();
                abort = true;
            }
        }
    };

    const std::size_t n_threads = std::min(options.parallelism, std::max<std::size_t>(pending.size(), 1));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (std::size_t k = 0; k < n_threads; ++k) threads.emplace_back(worker);
        for (auto& th : threads) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<Transcript> out;
    out.reserve(items.size());
    for (std::size_t i = 0; i < items.size(); ++i)
        out.push_back(fresh[i] ? std::move(*fresh[i]) : done.at(items[i].id));
    return out;
}

// ---------------------------------------------------------------------------
// Error taxonomy

std::string_view to_string(ErrorCategory c)
{
    switch (c) {
    case ErrorCategory::WrongRelations: return "wrong_relations";
    case ErrorCategory::WrongInference: return "wrong_inference";
    case ErrorCategory::WrongConclusion: return "wrong_conclusion";
    }
    return "?";
}

namespace {

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

/// Last identifier ([A-Za-z][A-Za-z0-9]*) in s.
std::string last_identifier(std::string_view s)
{
    std::size_t e = s.size();
    while (e > 0 && !ident_char(s[e - 1])) --e;
    std::size_t b = e;
    while (b > 0 && ident_char(s[b - 1])) --b;
    while (b < e && !std::isalpha(static_cast<unsigned char>(s[b]))) ++b;
    return std::string(s.substr(b, e - b));
}

std::string first_identifier(std::string_view s)
{
    std::size_t b = 0;
    while (b < s.size() && !std::isalpha(static_cast<unsigned char>(s[b]))) ++b;
    std::size_t e = b;
    while (e < s.size() && ident_char(s[e])) ++e;
    return std::string(s.substr(b, e - b));
}

/// Drops "_{...}" subscripts so "Wrox_{Nuv=0, Splee=0} = 0" reads as "Wrox = 0".
std::string strip_subscripts(std::string_view s)
{
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '_' && i + 1 < s.size() && s[i + 1] == '{') {
            int depth = 0;
            std::size_t j = i + 1;
            for (; j < s.size(); ++j) {
                if (s[j] == '{') ++depth;
                else if (s[j] == '}' && --depth == 0) break;
            }
            i = j;
            continue;
        }
        out.push_back(s[i]);
    }
    return out;
}

std::vector<std::string> fragments(std::string_view text)
{
    std::string s(text);
    for (std::string_view sep : {" and ", " implies ", " imply ", ". ", ",", ";"}) {
        for (std::size_t p = 0; (p = s.find(sep, p)) != std::string::npos;) {
            s.replace(p, sep.size(), "\n");
            ++p;
        }
    }
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto end = s.find('\n', start);
        if (end == std::string::npos) end = s.size();
        out.emplace_back(s.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

class Resolver {
public:
    Resolver(const bench::BenchmarkItem& item, std::string_view text)
    {
        for (VarId v : item.scm.variables()) by_name_[lower(item.names.at(v))] = v;
        // "Let X = Nuv; V1 = Splee; ..." overrides the default symbols.
        bool declared = false;
        for (std::size_t p = 0; (p = text.find("Let ", p)) != std::string_view::npos; p += 4) {
            auto end = text.find_first_of("\n", p);
            std::string_view decl = text.substr(p + 4, end == std::string_view::npos ? std::string_view::npos : end - p - 4);
            if (auto dot = decl.find(". "); dot != std::string_view::npos) decl = decl.substr(0, dot);
            std::size_t start = 0;
            while (start <= decl.size()) {
                auto semi = decl.find(';', start);
                if (semi == std::string_view::npos) semi = decl.size();
                const std::string_view part = decl.substr(start, semi - start);
                if (auto eq = part.find('='); eq != std::string_view::npos) {
                    const auto alias = last_identifier(part.substr(0, eq));
                    const auto target = first_identifier(part.substr(eq + 1));
                    if (auto it = by_name_.find(lower(target)); it != by_name_.end() && !alias.empty()) {
                        by_symbol_[alias] = it->second;
                        declared = true;
                    }
                }
                start = semi + 1;
            }
        }
        if (!declared) {
            const auto sym = symbol_table(item.scm);
            for (VarId v : item.scm.variables()) by_symbol_[sym[v.index]] = v;
        }
    }

    std::optional<VarId> operator()(const std::string& token) const
    {
        if (token.empty()) return std::nullopt;
        if (auto it = by_symbol_.find(token); it != by_symbol_.end()) return it->second;
        if (auto it = by_name_.find(lower(token)); it != by_name_.end()) return it->second;
        return std::nullopt;
    }

private:
    std::map<std::string, VarId> by_name_;
    std::map<std::string, VarId> by_symbol_;
};

std::set<std::pair<VarId, VarId>> claimed_edges(std::string_view text, const Resolver& resolve)
{
    std::set<std::pair<VarId, VarId>> out;
    for (std::size_t p = 0; (p = text.find("->", p)) != std::string_view::npos; p += 2) {
        const auto from = resolve(last_identifier(text.substr(0, p)));
        std::string_view rest = text.substr(p + 2);
        std::string head = first_identifier(rest);
        if (lower(head) == "not") {
            rest = rest.substr(rest.find(head) + head.size());
            head = first_identifier(rest);
        }
        const auto to = resolve(head);
        if (from && to) out.insert({*from, *to});
    }
    return out;
}

std::vector<std::pair<VarId, bool>> claimed_values(std::string_view text, const Resolver& resolve)
{
    std::vector<std::pair<VarId, bool>> out;
    for (const auto& frag : fragments(text)) {
        if (lower(frag).find("0 or 1") != std::string::npos) continue;
        const auto first_eq = frag.find('=');
        const auto last_eq = frag.rfind('=');
        if (first_eq == std::string::npos) continue;
        const std::string rhs = trim(frag.substr(last_eq + 1));
        if (rhs.empty() || (rhs[0] != '0' && rhs[0] != '1')) continue;
        if (rhs.size() > 1 && ident_char(rhs[1])) continue;
        if (auto v = resolve(last_identifier(frag.substr(0, first_eq)))) out.emplace_back(*v, rhs[0] == '1');
    }
    return out;
}

std::optional<bool> stated_verdict(std::string_view response, std::optional<Label> label)
{
    if (label == Label::Yes) return true;
    if (label == Label::No) return false;
    const auto l = classify_response(response, "");
    if (l == Label::Yes) return true;
    if (l == Label::No) return false;
    const std::string text = lower(response);
    const auto neg = text.rfind("would not occur");
    const auto pos = text.rfind("would occur");
    if (neg == std::string::npos && pos == std::string::npos) return std::nullopt;
    if (pos == std::string::npos) return false;
    if (neg == std::string::npos) return true;
    return pos > neg;
}

}  // namespace

std::optional<ErrorCategory> classify_error(const bench::BenchmarkItem& item, std::string_view response,
                                            std::optional<Label> label)
{
    const std::string text = strip_subscripts(response);
    const Resolver resolve(item, text);

    const auto edges = claimed_edges(text, resolve);
    if (!edges.empty()) {
        std::set<std::pair<VarId, VarId>> truth;
        for (VarId v : item.scm.variables())
            for (VarId p : item.scm.design_parents(v)) truth.insert({p, v});
        if (edges != truth) return ErrorCategory::WrongRelations;
    }

    const auto claims = claimed_values(text, resolve);
    std::optional<bool> derived;
    for (const auto& [v, value] : claims) {
        auto given = item.query.interventions.value_of(v);
        if (!given) given = item.query.observations.value_of(v);
        if (given && *given != value) return ErrorCategory::WrongRelations;
        if (v == item.query.outcome) derived = value;
    }
    if (!derived) return std::nullopt;

    const bool truth = to_bool(item.answer);
    if (*derived != truth) return ErrorCategory::WrongInference;
    const auto verdict = stated_verdict(response, label);
    if (verdict && *verdict != truth) return ErrorCategory::WrongConclusion;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Scoring

double EvalStats::average() const
{
    if (by_kind.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& [kind, b] : by_kind) sum += b.accuracy();
    return sum / static_cast<double>(by_kind.size());
}

namespace {

void tally(EvalStats& s, const bench::BenchmarkItem& item, Label label)
{
    const bool ok = correct(label, item.answer);
    for (Bucket* b : {&s.overall, &s.by_kind[item.kind], &s.by_difficulty[item.difficulty]}) {
        ++b->total;
        b->correct += ok;
    }
    ++s.confusion[std::string(to_string(item.answer))][std::string(to_string(label))];
    if (incomprehensible(label)) ++s.incomprehensible[std::string(to_string(label))];
}

}  // namespace

EvalStats score(const std::vector<bench::BenchmarkItem>& items, const std::vector<Label>& labels)
{
    if (items.size() != labels.size())
        throw Error(ErrorCode::LengthMismatch,
                    std::to_string(items.size()) + " items but " + std::to_string(labels.size()) + " labels");
    EvalStats s;
    for (std::size_t i = 0; i < items.size(); ++i) tally(s, items[i], labels[i]);
    return s;
}

EvalStats score(const std::vector<bench::BenchmarkItem>& items, const std::vector<Transcript>& transcripts)
{
    if (items.size() != transcripts.size())
        throw Error(ErrorCode::LengthMismatch,
                    std::to_string(items.size()) + " items but " + std::to_string(transcripts.size()) + " transcripts");
    EvalStats s;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const auto& t = transcripts[i];
        if (t.item_id != items[i].id)
            throw Error(ErrorCode::LengthMismatch, "transcript " + t.item_id + " does not match item " + items[i].id);
        tally(s, items[i], t.label);
        if (incomprehensible(t.label) || correct(t.label, items[i].answer)) continue;
        if (auto c = classify_error(items[i], t.response, t.label)) ++s.errors[std::string(to_string(*c))];
        else ++s.unclassified_errors;
    }
    return s;
}

namespace {

std::string cell(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%7.1f", v);
    return buf;
}

constexpr std::array<std::pair<QueryKind, const char*>, 4> kColumns{{{QueryKind::Basic, "Basic"},
                                                                     {QueryKind::Conditional, "Cond."},
                                                                     {QueryKind::Joint, "Joint"},
                                                                     {QueryKind::NestedExplicit, "Nested"}}};

std::string pad(std::string_view s, std::size_t width)
{
    std::string out(s.substr(0, width));
    out.resize(width, ' ');
    return out;
}

}  // namespace

std::string format_row(const EvalStats& stats, std::string_view label)
{
    std::string head = pad("", 24);
    std::string row = pad(label, 24);
    for (const auto& [kind, title] : kColumns) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%7s", title);
        head += buf;
        auto it = stats.by_kind.find(kind);
        row += it == stats.by_kind.end() ? "      -" : cell(it->second.accuracy());
    }
    head += "   Avg.";
    row += cell(stats.average());
    return head + "\n" + row + "\n";
}

std::string format_report(const EvalReport& r)
{
    std::string out = "strategy " + r.strategy + ", model " + r.model + ", temperature " + cell(r.temperature).substr(4) +
                      ", " + std::to_string(r.items) + " items\n\n";
    out += format_row(r.stats, r.strategy);
    out += "\nby difficulty:";
    for (const auto& [level, b] : r.stats.by_difficulty) out += "  " + std::to_string(level) + " vars" + cell(b.accuracy());
    out += "\noverall accuracy" + cell(r.stats.overall.accuracy()) + "\n";
    if (!r.stats.incomprehensible.empty()) {
        out += "incomprehensible:";
        for (const auto& [k, n] : r.stats.incomprehensible) out += " " + k + "=" + std::to_string(n);
        out += "\n";
    }
    if (!r.stats.errors.empty() || r.stats.unclassified_errors) {
        out += "error taxonomy:";
        for (const auto& [k, n] : r.stats.errors) out += " " + k + "=" + std::to_string(n);
        out += " unclassified=" + std::to_string(r.stats.unclassified_errors) + "\n";
    }
    return out;
}

std::string report_json(const EvalReport& r)
{
    auto bucket = [](const Bucket& b) {
        return Json{{"total", b.total}, {"correct", b.correct}, {"accuracy", std::round(b.accuracy() * 10.0) / 10.0}};
    };
    Json j;
    j["strategy"] = r.strategy;
    j["model"] = r.model;
    j["temperature"] = r.temperature;
    j["started_at"] = r.started_at;
    j["finished_at"] = r.finished_at;
    j["items"] = r.items;
    j["overall"] = bucket(r.stats.overall);
    j["average"] = std::round(r.stats.average() * 10.0) / 10.0;
    Json kinds = Json::object();
    for (const auto& [kind, b] : r.stats.by_kind) kinds[std::string(counterbench::to_string(kind))] = bucket(b);
    j["by_query_type"] = std::move(kinds);
    Json levels = Json::object();
    for (const auto& [level, b] : r.stats.by_difficulty) levels[std::to_string(level)] = bucket(b);
    j["by_difficulty"] = std::move(levels);
    j["confusion"] = r.stats.confusion;
    j["incomprehensible"] = r.stats.incomprehensible;
    j["errors"] = r.stats.errors;
    j["unclassified_errors"] = r.stats.unclassified_errors;
    return j.dump(2);
}

}  // namespace counterbench::eval
