#include "counterbench/verify.hpp"

#include "counterbench/bench.hpp"
#include "counterbench/coin.hpp"
#include "counterbench/error.hpp"
#include "counterbench/symbols.hpp"

#include <json.hpp>

namespace counterbench::verify {

Instance random_instance(Rng& rng)
{
    static constexpr std::array kKinds{QueryKind::Basic, QueryKind::Joint, QueryKind::NestedExplicit,
                                       QueryKind::NestedDerived, QueryKind::Conditional};
    const QueryKind kind = kKinds[rng.below(kKinds.size())];
    const int n = static_cast<int>(rng.between(5, 9));
    const bool aux = kind == QueryKind::Conditional || rng.chance(0.25);

    Instance out;
    out.scm = bench::sample_scm(rng, n, aux);
    const VarId x = out.scm.antecedent();
    if (kind == QueryKind::NestedDerived) {
        std::vector<VarId> pool;
        for (VarId v : out.scm.variables())
            if (out.scm.role(v) == Role::Intermediate && !out.scm.is_root(v)) pool.push_back(v);
        out.query.kind = kind;
        out.query.outcome = out.scm.outcome();
        out.query.interventions.add({x, rng.chance(0.5)});
        out.query.derived = rng.pick(pool);
    } else {
        const Query sampled = bench::sample_query(rng, out.scm, kind);
        out.query = sampled;
        out.query.interventions = {};
        out.query.observations = {};
        for (const auto& c : sampled.interventions) out.query.interventions.add({c.var, rng.chance(0.5)});
        for (const auto& c : sampled.observations) out.query.observations.add({c.var, rng.chance(0.5)});
    }
    for (VarId r : out.scm.roots()) out.roots.set(r, rng.chance(0.5));
    out.names = text::generate_names(rng.next(), out.scm.size());
    return out;
}

std::string describe(const Instance& in)
{
    using Json = nlohmann::ordered_json;
    const auto sym = symbol_table(in.scm);
    Json j;
    j["query_type"] = std::string(to_string(in.query.kind));
    Json eqs = Json::array();
    for (VarId v : topological_order(in.scm)) {
        const Formula* f = in.scm.design_formula(v);
        if (!f) continue;
        std::string rhs;
        for (std::size_t i = 0; i < f->args.size(); ++i) {
            if (i) rhs += f->op == Op::And ? " AND " : " OR ";
            rhs += (f->args[i].negated ? "NOT " : "") + sym[f->args[i].var.index];
        }
        eqs.push_back(sym[v.index] + " = " + rhs);
    }
    j["equations"] = std::move(eqs);
    auto clamps = [&](const ClampSet& s) {
        Json a = Json::array();
        for (const auto& c : s) a.push_back(Json{{"var", sym[c.var.index]}, {"value", c.value}});
        return a;
    };
    j["interventions"] = clamps(in.query.interventions);
    j["observations"] = clamps(in.query.observations);
    if (in.query.derived) j["derived"] = sym[in.query.derived->index];
    Json roots = Json::object();
    for (const auto& [v, value] : in.roots.values()) roots[sym[v.index]] = value;
    j["roots"] = std::move(roots);
    return j.dump();
}

Report run(const Options& options)
{
    Report report;
    Rng rng(mix_seed(options.seed));
    for (std::size_t i = 0; i < options.n; ++i) {
        const Instance in = random_instance(rng);
        auto fail = [&](std::string check, const std::string& detail) {
            report.failure = Failure{std::move(check), describe(in) + (detail.empty() ? "" : "\n" + detail)};
        };

        const Answer expected = options.oracle(in.scm, in.query, in.roots);
        for (std::size_t s = 0; s < options.solver_seeds && !report.failure; ++s) {
            const auto got = coin::solve(in.scm, in.query, in.roots, mix_seed(options.seed ^ i, s)).answer;
            if (got != expected)
                fail("coin-vs-oracle", "oracle " + std::string(to_string(expected)) + ", solver " + std::string(to_string(got)));
        }

        if (!report.failure && in.query.kind != QueryKind::NestedDerived) {
            try {
                const auto rendered = text::render(in.scm, in.query, in.names);
                const auto parsed = text::parse(rendered.full());
                if (!text::same_scenario(in.scm, in.query, in.names, parsed.scm, parsed.query, parsed.names))
                    fail("codec-round-trip", rendered.full());
            } catch (const Error& e) {
                fail("codec-round-trip", e.what());
            }
        }

        if (!report.failure && in.query.interventions.size() >= 2) {
            if (answer_nested_explicit(in.scm, in.roots, in.query.interventions) !=
                answer_joint(in.scm, in.roots, in.query.interventions))
                fail("nested-vs-joint", "");
        }

        if (report.failure) return report;
        ++report.checked;
    }
    return report;
}

}  // namespace counterbench::verify
