#pragma once

// Reference scenarios with hand-checked answers. Used as the default CoIn
// exemplar and throughout the tests.

#include "counterbench/text_codec.hpp"

#include <string_view>

namespace counterbench::fixtures {

/// Basic query; the factual world is X = 1, the question asks about X = 0.
extern const std::string_view kZiklo;
/// Joint query with two clamps.
extern const std::string_view kNuv;
/// Explicit nested query.
extern const std::string_view kPraf;

/// Abstract templates with symbolic names (no preamble, no direct-effect sentence).
extern const std::string_view kTemplateBasic;
extern const std::string_view kTemplateJoint;
extern const std::string_view kTemplateNested;
extern const std::string_view kTemplateConditional;

inline text::ParsedScenario ziklo() { return text::parse(kZiklo); }
inline text::ParsedScenario nuv() { return text::parse(kNuv); }
inline text::ParsedScenario praf() { return text::parse(kPraf); }

}  // namespace counterbench::fixtures
