// counterbench: generate, solve, parse, verify and eval from the command line.
// Exit status: 0 success, 1 domain failure, 2 usage error.

#include "counterbench/bench.hpp"
#include "counterbench/coin.hpp"
#include "counterbench/error.hpp"
#include "counterbench/eval.hpp"
#include "counterbench/verify.hpp"

#include <CLI11.hpp>

#include <array>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <map>
#include <memory>
#include <fstream>
#include <iostream>
#include <iterator>

namespace cb = counterbench;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

std::string read_input(const std::string& path)
{
    if (path.empty() || path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw cb::Error(cb::ErrorCode::IoError, "cannot open " + path);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::string utc_now()
{
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct GenerateArgs {
    std::size_t total = 1000;
    std::size_t per_type = 250;
    std::vector<int> levels{5, 6, 7, 8, 9};
    std::uint64_t seed = 42;
    std::string out;
    bool unbalanced = false;
};

int cmd_generate(const GenerateArgs& a)
{
    cb::bench::GenConfig config;
    config.total = a.total;
    config.per_type = a.per_type;
    config.difficulty_levels = a.levels;
    config.seed = a.seed;
    config.balance = !a.unbalanced;
    const auto items = cb::bench::generate(config);
    cb::bench::write_dataset(items, a.out);

    std::map<std::pair<std::string, int>, std::array<std::size_t, 2>> cells;
    for (const auto& item : items) ++cells[{std::string(cb::to_string(item.kind)), item.difficulty}][cb::to_bool(item.answer)];
    std::cout << "wrote " << items.size() << " items to " << a.out << "\n";
    std::cout << "type         level   yes    no\n";
    for (const auto& [key, counts] : cells) {
        char line[96];
        std::snprintf(line, sizeof line, "%-12s %5d %5zu %5zu\n", key.first.c_str(), key.second, counts[1], counts[0]);
        std::cout << line;
    }
    return kOk;
}

struct SolveArgs {
    std::string in;
    std::string method = "oracle";
    bool trace = false;
    std::uint64_t seed = 0;
};

int cmd_solve(const SolveArgs& a)
{
    const auto parsed = cb::text::parse(read_input(a.in));
    if (a.method == "oracle") {
        std::cout << cb::to_string(cb::answer(parsed.scm, parsed.query)) << "\n";
        return kOk;
    }
    const auto example = cb::coin::make_example(parsed, a.seed);
    std::cout << cb::to_string(example.answer) << "\n";
    if (a.trace) std::cout << cb::coin::render_solution(example);
    return kOk;
}

int cmd_parse(const std::string& in)
{
    const auto parsed = cb::text::parse(read_input(in));
    std::cout << cb::bench::to_json_line(cb::bench::make_item(parsed, "parsed")) << "\n";
    return kOk;
}

int cmd_verify(std::size_t n, std::uint64_t seed)
{
    cb::verify::Options options;
    options.n = n;
    options.seed = seed;
    const auto report = cb::verify::run(options);
    if (report.failure) {
        std::cout << report.checked << " checked, failed " << report.failure->check << "\n"
                  << report.failure->counterexample << "\n";
        return kFailure;
    }
    std::cout << report.checked << " checked, 0 failures\n";
    return kOk;
}

struct EvalArgs {
    std::string dataset;
    std::string strategy = "standard";
    std::string model;
    std::string endpoint;
    std::string mock;
    std::size_t parallelism = 1;
    std::string transcripts;
    std::string report;
    bool resume = false;
    int retries = 3;
};

int cmd_eval(EvalArgs a)
{
    const auto strategy = cb::eval::parse_strategy(a.strategy);
    if (!strategy) {
        std::cerr << "error: --strategy must be standard, causalcot or coin\n";
        return kUsage;
    }
    if (a.mock.empty() == a.endpoint.empty()) {
        std::cerr << "error: give exactly one of --endpoint or --mock\n";
        return kUsage;
    }
    if (!a.endpoint.empty() && a.model.empty()) {
        std::cerr << "error: --endpoint needs --model\n";
        return kUsage;
    }
    if (a.parallelism == 0) {
        std::cerr << "error: --parallelism must be at least 1\n";
        return kUsage;
    }

    const auto items = cb::bench::read_dataset(a.dataset);
    std::unique_ptr<cb::eval::ModelClient> client;
    if (a.mock == "oracle") client = std::make_unique<cb::eval::OracleClient>(items);
    else if (a.mock == "yes") client = cb::eval::make_yes_client();
    else if (a.mock.rfind("replay:", 0) == 0) client = std::make_unique<cb::eval::ReplayClient>(a.mock.substr(7));
    else if (!a.mock.empty()) {
        std::cerr << "error: --mock must be oracle, yes or replay:PATH\n";
        return kUsage;
    } else client = std::make_unique<cb::eval::HttpClient>(a.endpoint, a.model);

    const std::string stem = std::filesystem::path(a.dataset).replace_extension().string() + "." + a.strategy;
    if (a.transcripts.empty()) a.transcripts = stem + ".transcripts.jsonl";
    if (a.report.empty()) a.report = stem + ".report.json";

    cb::eval::RunOptions options;
    options.strategy = *strategy;
    options.parallelism = a.parallelism;
    options.transcript_path = a.transcripts;
    options.resume = a.resume;
    options.max_retries = a.retries;

    cb::eval::EvalReport report;
    report.strategy = a.strategy;
    report.model = a.model.empty() ? client->id() : a.model;
    report.temperature = options.temperature;
    report.started_at = utc_now();
    const auto transcripts = cb::eval::run_eval(*client, items, options);
    report.finished_at = utc_now();
    report.items = items.size();
    report.stats = cb::eval::score(items, transcripts);

    std::ofstream out(a.report, std::ios::binary | std::ios::trunc);
    if (!out) throw cb::Error(cb::ErrorCode::IoError, "cannot write " + a.report);
    out << cb::eval::report_json(report) << "\n";
    std::cout << cb::eval::format_report(report);
    std::cout << "transcripts: " << a.transcripts << "\nreport: " << a.report << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"CounterBench toolkit: counterfactual benchmark generation, solving and evaluation"};
    app.require_subcommand(1, 1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Generate a balanced dataset");
    generate->add_option("--total", gen.total, "Total number of items")->capture_default_str();
    generate->add_option("--per-type", gen.per_type, "Items per query type")->capture_default_str();
    generate->add_option("--levels", gen.levels, "Difficulty levels (variable counts)")->delimiter(',')->capture_default_str();
    generate->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
    generate->add_option("--out", gen.out, "Output JSONL path")->required();
    generate->add_flag("--unbalanced", gen.unbalanced, "Do not enforce the yes/no split");

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Answer a scenario given as text");
    solve_cmd->add_option("--in", solve.in, "Scenario file (default: standard input)");
    solve_cmd->add_option("--method", solve.method, "oracle or coin")
        ->check(CLI::IsMember({"oracle", "coin"}))
        ->capture_default_str();
    solve_cmd->add_flag("--trace", solve.trace, "Print the CoIn trace");
    solve_cmd->add_option("--seed", solve.seed, "Solver exploration seed")->capture_default_str();

    std::string parse_in;
    auto* parse_cmd = app.add_subcommand("parse", "Print the structured form of a scenario");
    parse_cmd->add_option("--in", parse_in, "Scenario file (default: standard input)");

    std::size_t verify_n = 1000;
    std::uint64_t verify_seed = 0;
    auto* verify_cmd = app.add_subcommand("verify", "Fuzz solver, codec and semantics against each other");
    verify_cmd->add_option("--n", verify_n, "Number of random instances")->capture_default_str();
    verify_cmd->add_option("--seed", verify_seed, "Random seed")->capture_default_str();

    EvalArgs ev;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a model on a dataset");
    eval_cmd->add_option("--dataset", ev.dataset, "Dataset JSONL")->required();
    eval_cmd->add_option("--strategy", ev.strategy, "standard, causalcot or coin")->capture_default_str();
    eval_cmd->add_option("--model", ev.model, "Model name sent to the endpoint");
    eval_cmd->add_option("--endpoint", ev.endpoint, "Chat-completions URL");
    eval_cmd->add_option("--mock", ev.mock, "oracle, yes or replay:PATH instead of an endpoint");
    eval_cmd->add_option("--parallelism", ev.parallelism, "Requests in flight")->capture_default_str();
    eval_cmd->add_option("--transcripts", ev.transcripts, "Transcript JSONL path");
    eval_cmd->add_option("--report", ev.report, "Report JSON path");
    eval_cmd->add_flag("--resume", ev.resume, "Keep existing transcripts and run only missing items");
    eval_cmd->add_option("--retries", ev.retries, "Retries per request")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*generate) return cmd_generate(gen);
        if (*solve_cmd) return cmd_solve(solve);
        if (*parse_cmd) return cmd_parse(parse_in);
        if (*verify_cmd) return cmd_verify(verify_n, verify_seed);
        if (*eval_cmd) return cmd_eval(ev);
    } catch (const cb::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kUsage;
}
