#pragma once

// Balanced benchmark generation and the JSONL dataset format.

#include "counterbench/engine.hpp"
#include "counterbench/rng.hpp"
#include "counterbench/scm.hpp"
#include "counterbench/text_codec.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace counterbench::bench {

/// Dataset query types. The derived-value nested form is never generated.
inline constexpr std::array<QueryKind, 4> kGeneratedKinds{QueryKind::Basic, QueryKind::Conditional, QueryKind::Joint,
                                                          QueryKind::NestedExplicit};

std::optional<QueryKind> parse_query_type(std::string_view s);

struct GenConfig {
    std::size_t total = 1000;
    std::size_t per_type = 250;
    std::vector<int> difficulty_levels{5, 6, 7, 8, 9};
    std::uint64_t seed = 42;
    bool balance = true;
    /// Draw cap per (type, level) cell, as a multiple of the cell size.
    std::size_t draw_factor = 200;
};

/// Throws InvalidConfig.
void validate(const GenConfig& config);

struct BenchmarkItem {
    std::string id;
    QueryKind kind = QueryKind::Basic;
    int difficulty = 0;
    text::ScenarioText text;
    Answer answer = Answer::No;
    Scm scm;
    Query query;
    text::NameTable names;
    std::uint64_t seed = 0;
    std::uint64_t draw = 0;

    bool operator==(const BenchmarkItem&) const = default;
};

/// Chain backbone X -> ... -> Y over variables laid out as X = 0, V1..Vk = 1..k,
/// Y = n - 1, with up to three extra edges folded into binary And/Or formulas
/// and 20-40% of literals negated. With `aux_root`, V1 is a second root and
/// V2 = X and V1.
Scm sample_scm(Rng& rng, int n_vars, bool aux_root = false);

/// Throws InfeasibleKind (Conditional without an observable root, Joint or
/// Nested without a clampable intermediate).
Query sample_query(Rng& rng, const Scm& scm, QueryKind kind);

/// Throws InvalidConfig or BudgetExhausted.
std::vector<BenchmarkItem> generate(const GenConfig& config);

/// Wraps a parsed scenario as an item (difficulty = variable count).
BenchmarkItem make_item(const text::ParsedScenario& parsed, std::string id);

/// Recomputes the answer and rendered text from the structured fields.
bool consistent(const BenchmarkItem& item);

std::string to_json_line(const BenchmarkItem& item);
/// `line` is the 1-based line number used in SchemaViolation messages.
BenchmarkItem from_json_line(std::string_view json, std::size_t line = 1);

/// Throws IoError.
void write_dataset(const std::vector<BenchmarkItem>& items, const std::filesystem::path& path);
/// Throws IoError or SchemaViolation.
std::vector<BenchmarkItem> read_dataset(const std::filesystem::path& path);

}  // namespace counterbench::bench
