#include "counterbench/symbols.hpp"

namespace counterbench {

std::vector<std::string> symbol_table(const Scm& scm)
{
    std::vector<std::string> out(scm.size());
    std::size_t k = 0;
    for (VarId v : scm.variables()) {
        switch (scm.role(v)) {
        case Role::Antecedent: out[v.index] = "X"; break;
        case Role::Outcome: out[v.index] = "Y"; break;
        case Role::Intermediate: out[v.index] = "V" + std::to_string(++k); break;
        }
    }
    return out;
}

std::string symbol(const Scm& scm, VarId v) { return symbol_table(scm).at(v.index); }

std::optional<VarId> find_symbol(const Scm& scm, std::string_view label)
{
    const auto table = symbol_table(scm);
    for (std::size_t i = 0; i < table.size(); ++i)
        if (table[i] == label) return VarId{static_cast<std::uint16_t>(i)};
    return std::nullopt;
}

}  // namespace counterbench
