#pragma once

// Running a dataset against a chat model: prompts, clients, response
// classification, scoring and error taxonomy.

#include "counterbench/bench.hpp"
#include "counterbench/coin.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace counterbench::eval {

enum class Strategy : std::uint8_t { Standard, CausalCoT, CoIn };

std::string_view to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view s);

/// Six-step derivation instructions appended to the question for CausalCoT.
extern const std::string_view kCausalCotTemplate;

struct PromptOptions {
    std::string causal_cot_template = std::string(kCausalCotTemplate);
    /// Empty means the built-in exemplar.
    std::vector<coin::SolvedExample> exemplars;
};

std::string build_prompt(Strategy strategy, const bench::BenchmarkItem& item, const PromptOptions& options = {});

// ---------------------------------------------------------------------------
// Clients

struct ModelRequest {
    std::string item_id;
    std::string prompt;
    double temperature = 0.0;
    int max_tokens = 2048;
};

/// A failed call that is worth retrying (HTTP 429/5xx, malformed body).
class TransientFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ModelClient {
public:
    virtual ~ModelClient() = default;
    /// Throws TransientFailure, or Error(EndpointUnreachable) when the service
    /// cannot be contacted at all.
    virtual std::string send(const ModelRequest& request) = 0;
    virtual std::string id() const = 0;
};

/// Chat-completions endpoint in the common messages format. The bearer token
/// comes from COUNTERBENCH_API_KEY when set.
class HttpClient final : public ModelClient {
public:
    HttpClient(std::string endpoint, std::string model, std::chrono::seconds timeout = std::chrono::seconds(120));
    std::string send(const ModelRequest& request) override;
    std::string id() const override { return model_; }

private:
    std::string scheme_host_;
    std::string path_;
    std::string model_;
    std::string api_key_;
    std::chrono::seconds timeout_;
};

/// Answers every item correctly ("Yes." / "No.").
class OracleClient final : public ModelClient {
public:
    explicit OracleClient(const std::vector<bench::BenchmarkItem>& items);
    std::string send(const ModelRequest& request) override;
    std::string id() const override { return "mock-oracle"; }

private:
    std::map<std::string, Answer> answers_;
};

/// Returns the responses recorded in a transcript file, keyed by item id.
class ReplayClient final : public ModelClient {
public:
    explicit ReplayClient(const std::filesystem::path& transcripts);
    std::string send(const ModelRequest& request) override;
    std::string id() const override { return "mock-replay"; }

private:
    std::map<std::string, std::string> responses_;
};

class ScriptedClient final : public ModelClient {
public:
    using Script = std::function<std::string(const ModelRequest&)>;
    explicit ScriptedClient(Script script, std::string id = "mock-scripted") : script_(std::move(script)), id_(std::move(id)) {}
    std::string send(const ModelRequest& request) override { return script_(request); }
    std::string id() const override { return id_; }

private:
    Script script_;
    std::string id_;
};

/// Always "Yes".
std::unique_ptr<ModelClient> make_yes_client();

// ---------------------------------------------------------------------------
// Classification

enum class Label : std::uint8_t { Yes, No, Blank, Repeating, TypeMismatch, NoAnswerFound };

std::string_view to_string(Label l);
std::optional<Label> parse_label(std::string_view s);
constexpr bool incomprehensible(Label l) { return l != Label::Yes && l != Label::No; }

struct ClassifierConfig {
    /// Fraction of response shingles found in the prompt that marks an echo.
    double repeat_overlap = 0.6;
    std::size_t shingle_words = 8;
    /// Share of the response (by words, from the end) searched for a verdict.
    double final_region = 1.0 / 3.0;
    /// Comma-separated run of 0/1/yes/no items that counts as a list answer.
    std::size_t binary_run = 4;
};

Label classify_response(std::string_view response, std::string_view prompt, const ClassifierConfig& config = {});

bool correct(Label label, Answer truth);

// ---------------------------------------------------------------------------
// Running

struct Transcript {
    std::string item_id;
    std::string prompt;
    std::string response;
    double latency_ms = 0.0;
    int retries = 0;
    Label label = Label::Blank;
    std::string error;
};

std::string to_json_line(const Transcript& t);
Transcript transcript_from_json(std::string_view json, std::size_t line = 1);
/// Missing file reads as empty. Throws SchemaViolation.
std::vector<Transcript> read_transcripts(const std::filesystem::path& path);

struct RunOptions {
    Strategy strategy = Strategy::Standard;
    std::size_t parallelism = 1;
    double temperature = 0.0;
    int max_tokens = 2048;
    int max_retries = 3;
    std::chrono::milliseconds backoff{500};
    std::chrono::milliseconds max_backoff{8000};
    /// Each finished transcript is appended here as it completes.
    std::optional<std::filesystem::path> transcript_path;
    /// Skip items already present in transcript_path.
    bool resume = false;
    PromptOptions prompts;
    ClassifierConfig classifier;
};

/// One transcript per item, in item order. Throws EndpointUnreachable after
/// retries; completed transcripts stay on disk.
std::vector<Transcript> run_eval(ModelClient& client, const std::vector<bench::BenchmarkItem>& items,
                                 const RunOptions& options);

// ---------------------------------------------------------------------------
// Scoring

enum class ErrorCategory : std::uint8_t { WrongRelations, WrongInference, WrongConclusion };

std::string_view to_string(ErrorCategory c);

/// Automated best-effort error taxonomy for a wrong stepwise answer. Absent
/// when the response cannot be parsed far enough to tell.
std::optional<ErrorCategory> classify_error(const bench::BenchmarkItem& item, std::string_view response,
                                            std::optional<Label> label = std::nullopt);

struct Bucket {
    std::size_t total = 0;
    std::size_t correct = 0;

    double accuracy() const { return total ? 100.0 * static_cast<double>(correct) / static_cast<double>(total) : 0.0; }
    bool operator==(const Bucket&) const = default;
};

struct EvalStats {
    Bucket overall;
    std::map<QueryKind, Bucket> by_kind;
    std::map<int, Bucket> by_difficulty;
    /// truth ("yes"/"no") -> label -> count
    std::map<std::string, std::map<std::string, std::size_t>> confusion;
    std::map<std::string, std::size_t> incomprehensible;
    std::map<std::string, std::size_t> errors;
    /// Wrong answers the taxonomy could not place.
    std::size_t unclassified_errors = 0;

    /// Mean of the per-type accuracies.
    double average() const;
    bool operator==(const EvalStats&) const = default;
};

struct EvalReport {
    std::string strategy;
    std::string model;
    double temperature = 0.0;
    std::string started_at;
    std::string finished_at;
    std::size_t items = 0;
    EvalStats stats;
};

/// Throws LengthMismatch.
EvalStats score(const std::vector<bench::BenchmarkItem>& items, const std::vector<Label>& labels);
/// Also fills the error taxonomy from the responses of wrong answers.
EvalStats score(const std::vector<bench::BenchmarkItem>& items, const std::vector<Transcript>& transcripts);

/// Basic / Cond. / Joint / Nested / Avg. header and row, one decimal.
std::string format_row(const EvalStats& stats, std::string_view label);
std::string format_report(const EvalReport& report);
std::string report_json(const EvalReport& report);

}  // namespace counterbench::eval
