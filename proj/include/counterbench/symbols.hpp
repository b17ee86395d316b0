#pragma once

// Symbolic labels used in traces and dataset records: the antecedent is "X",
// the outcome "Y", and the remaining variables "V1".."Vk" in index order.

#include "counterbench/scm.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace counterbench {

std::vector<std::string> symbol_table(const Scm& scm);
std::string symbol(const Scm& scm, VarId v);
std::optional<VarId> find_symbol(const Scm& scm, std::string_view label);

}  // namespace counterbench
