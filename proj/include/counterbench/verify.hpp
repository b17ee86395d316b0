#pragma once

// Randomized self-check: solver against oracle, text round trip, and
// sequential against simultaneous clamping.

#include "counterbench/engine.hpp"
#include "counterbench/rng.hpp"
#include "counterbench/text_codec.hpp"

#include <functional>
#include <optional>
#include <string>

namespace counterbench::verify {

struct Instance {
    Scm scm;
    Query query;
    RootAssignment roots;
    text::NameTable names;
};

/// Any of the five query kinds on a 5-9 variable model, with random clamp,
/// observation and root values.
Instance random_instance(Rng& rng);

using Oracle = std::function<Answer(const Scm&, const Query&, const RootAssignment&)>;

struct Options {
    std::size_t n = 1000;
    std::uint64_t seed = 0;
    /// Solver seeds tried per instance.
    std::size_t solver_seeds = 2;
    /// Replaceable so the harness itself can be mutation-tested.
    Oracle oracle = [](const Scm& s, const Query& q, const RootAssignment& r) { return answer(s, q, r); };
};

struct Failure {
    std::string check;
    /// JSON description of the counterexample.
    std::string counterexample;
};

struct Report {
    std::size_t checked = 0;
    std::optional<Failure> failure;
};

/// Stops at the first failure.
Report run(const Options& options);

std::string describe(const Instance& instance);

}  // namespace counterbench::verify
