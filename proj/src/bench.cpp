#include "counterbench/bench.hpp"

#include "counterbench/error.hpp"
#include "counterbench/symbols.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

namespace counterbench::bench {

using Json = nlohmann::ordered_json;

std::optional<QueryKind> parse_query_type(std::string_view s)
{
    for (QueryKind k : kGeneratedKinds)
        if (to_string(k) == s) return k;
    return std::nullopt;
}

void validate(const GenConfig& c)
{
    auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidConfig, msg); };
    if (c.per_type * kGeneratedKinds.size() != c.total) fail("per_type x 4 must equal total");
    if (c.difficulty_levels.empty()) fail("at least one difficulty level is required");
    std::set<int> seen;
    for (int level : c.difficulty_levels) {
        if (level < 5 || level > 9) fail("difficulty levels must lie in 5..9, got " + std::to_string(level));
        if (!seen.insert(level).second) fail("duplicate difficulty level " + std::to_string(level));
    }
    const std::size_t levels = c.difficulty_levels.size();
    if (c.total % levels != 0) fail("total must be divisible by the number of levels");
    if (c.per_type % levels != 0) fail("per_type must be divisible by the number of levels");
    if (c.balance && (c.per_type / levels) % 2 != 0)
        fail("each (type, level) cell must hold an even number of items to split yes/no exactly");
    if (c.draw_factor == 0) fail("draw_factor must be positive");
}

Scm sample_scm(Rng& rng, int n_vars, bool aux_root)
{
    if (n_vars < 5 || n_vars > 9) throw Error(ErrorCode::InvalidArgument, "n_vars must lie in 5..9");
    const auto n = static_cast<std::uint16_t>(n_vars);
    auto id = [](int i) { return VarId{static_cast<std::uint16_t>(i)}; };

    std::vector<Role> roles(n, Role::Intermediate);
    roles.front() = Role::Antecedent;
    roles.back() = Role::Outcome;
    std::vector<Mechanism> mech(n, Exogenous{});

    // Backbone, skipping the auxiliary root.
    std::vector<int> chain;
    for (int i = 0; i < n; ++i)
        if (!(aux_root && i == 1)) chain.push_back(i);
    for (std::size_t i = 1; i < chain.size(); ++i) mech[chain[i]] = Formula::unary(pos(id(chain[i - 1])));
    const int fixed_target = aux_root ? chain[1] : -1;
    if (aux_root) mech[fixed_target] = Formula::all_of(pos(id(0)), pos(id(1)));

    // Extra cross edges from an earlier backbone node into a single-cause node.
    const auto extra = rng.between(0, 3);
    for (std::int64_t e = 0; e < extra; ++e) {
        std::vector<std::size_t> targets;
        for (std::size_t i = 2; i < chain.size(); ++i)
            if (std::get<Formula>(mech[chain[i]]).op == Op::Unary && chain[i] != fixed_target) targets.push_back(i);
        if (targets.empty()) break;
        const std::size_t t = rng.pick(targets);
        auto& f = std::get<Formula>(mech[chain[t]]);
        std::vector<int> sources;
        for (std::size_t s = 0; s + 1 < t; ++s) sources.push_back(chain[s]);
        const Literal added = pos(id(rng.pick(sources)));
        const Literal existing = f.args[0];
        const Op op = rng.chance(0.5) ? Op::And : Op::Or;
        f = rng.chance(0.5) ? Formula{op, {existing, added}} : Formula{op, {added, existing}};
    }

    // Negate 20-40% of the literals (the auxiliary conjunction stays positive).
    std::vector<std::pair<int, std::size_t>> literals;
    for (int i = 0; i < n; ++i) {
        if (i == fixed_target) continue;
        if (auto* f = std::get_if<Formula>(&mech[i]))
            for (std::size_t a = 0; a < f->args.size(); ++a) literals.emplace_back(i, a);
    }
    const double count = static_cast<double>(literals.size());
    const auto lo = static_cast<std::int64_t>(std::ceil(0.2 * count));
    const auto hi = static_cast<std::int64_t>(std::floor(0.4 * count));
    const std::int64_t negated = lo <= hi ? rng.between(lo, hi) : std::llround(0.3 * count);
    rng.shuffle(literals);
    for (std::int64_t k = 0; k < negated; ++k) {
        auto [i, a] = literals[static_cast<std::size_t>(k)];
        std::get<Formula>(mech[i]).args[a].negated = true;
    }

    Scm scm(std::move(roles), std::move(mech));
    counterbench::validate(scm);
    return scm;
}

Query sample_query(Rng& rng, const Scm& scm, QueryKind kind)
{
    const VarId x = scm.antecedent();
    Query q;
    q.kind = kind;
    q.outcome = scm.outcome();

    auto clampable = [&](const std::vector<VarId>& from) {
        std::vector<VarId> out;
        for (VarId v : from)
            if (scm.role(v) == Role::Intermediate && !scm.is_root(v)) out.push_back(v);
        if (out.empty()) throw Error(ErrorCode::InfeasibleKind, std::string(to_string(kind)) + " needs a non-root intermediate");
        return out;
    };

    switch (kind) {
    case QueryKind::Basic: q.interventions.add({x, false}); break;
    case QueryKind::Joint: {
        const auto pool = clampable(scm.variables());
        q.interventions.add({x, false});
        q.interventions.add({rng.pick(pool), false});
        break;
    }
    case QueryKind::NestedExplicit: {
        const auto pool = clampable(descendants(scm, x));
        q.interventions.add({x, false});
        q.interventions.add({rng.pick(pool), false});
        break;
    }
    case QueryKind::Conditional: {
        std::vector<VarId> roots;
        for (VarId r : scm.roots())
            if (r != x && r != scm.outcome()) roots.push_back(r);
        if (roots.empty()) throw Error(ErrorCode::InfeasibleKind, "conditional needs a root besides the antecedent");
        q.observations.add({rng.pick(roots), true});
        q.interventions.add({x, false});
        break;
    }
    case QueryKind::NestedDerived:
        throw Error(ErrorCode::InfeasibleKind, "derived-value nested queries are not generated");
    }
    return q;
}

namespace {

std::string item_id(QueryKind kind, int level, std::size_t seq)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s-%d-%04zu", std::string(to_string(kind)).c_str(), level, seq);
    return buf;
}

}  // namespace

std::vector<BenchmarkItem> generate(const GenConfig& config)
{
    validate(config);
    const std::size_t cell = config.per_type / config.difficulty_levels.size();
    const std::size_t cap = config.draw_factor * std::max<std::size_t>(cell, 1);

    std::vector<BenchmarkItem> items;
    items.reserve(config.total);
    for (std::size_t k = 0; k < kGeneratedKinds.size(); ++k) {
        const QueryKind kind = kGeneratedKinds[k];
        for (int level : config.difficulty_levels) {
            Rng rng(mix_seed(mix_seed(config.seed, k), static_cast<std::uint64_t>(level)));
            std::array<std::size_t, 2> filled{0, 0};
            std::size_t accepted = 0;
            for (std::uint64_t draw = 0; accepted < cell; ++draw) {
                if (draw >= cap)
                    throw Error(ErrorCode::BudgetExhausted,
                                std::string(to_string(kind)) + "/" + std::to_string(level) + ": yes " +
                                    std::to_string(filled[1]) + "/" + std::to_string(cell / 2) + ", no " +
                                    std::to_string(filled[0]) + "/" + std::to_string(cell / 2) + " after " +
                                    std::to_string(draw) + " draws");
                Scm scm = sample_scm(rng, level, kind == QueryKind::Conditional);
                Query query = sample_query(rng, scm, kind);
                const Answer ans = answer(scm, query);
                const std::uint64_t name_seed = rng.next();
                auto& bucket = filled[to_bool(ans) ? 1 : 0];
                if (config.balance && bucket >= cell / 2) continue;
                ++bucket;

                BenchmarkItem item;
                item.id = item_id(kind, level, accepted++);
                item.kind = kind;
                item.difficulty = level;
                item.answer = ans;
                item.names = text::generate_names(name_seed, scm.size());
                item.text = text::render(scm, query, item.names);
                item.scm = std::move(scm);
                item.query = std::move(query);
                item.seed = config.seed;
                item.draw = draw;
                items.push_back(std::move(item));
            }
        }
    }
    return items;
}

BenchmarkItem make_item(const text::ParsedScenario& parsed, std::string id)
{
    BenchmarkItem item;
    item.id = std::move(id);
    item.kind = parsed.query.kind;
    item.difficulty = static_cast<int>(parsed.scm.size());
    item.scm = parsed.scm;
    item.query = parsed.query;
    item.names = parsed.names;
    item.answer = answer(parsed.scm, parsed.query);
    item.text = text::render(parsed.scm, parsed.query, parsed.names);
    return item;
}

bool consistent(const BenchmarkItem& item)
{
    try {
        return answer(item.scm, item.query) == item.answer &&
               text::render(item.scm, item.query, item.names) == item.text &&
               static_cast<std::size_t>(item.difficulty) == item.scm.size() && item.query.kind == item.kind;
    } catch (const Error&) {
        return false;
    }
}

// ---------------------------------------------------------------------------
// JSONL

namespace {

std::string op_name(Op op)
{
    switch (op) {
    case Op::Unary: return "UNARY";
    case Op::And: return "AND";
    case Op::Or: return "OR";
    }
    return {};
}

/// X first, then V1..Vk, then Y.
std::vector<VarId> legend_order(const Scm& scm)
{
    std::vector<VarId> order = scm.variables();
    auto rank = [&](VarId v) {
        const Role r = scm.role(v);
        return r == Role::Antecedent ? 0 : r == Role::Intermediate ? 1 : 2;
    };
    std::stable_sort(order.begin(), order.end(), [&](VarId a, VarId b) { return rank(a) < rank(b); });
    return order;
}

Json clamps_json(const ClampSet& set, const std::vector<std::string>& sym)
{
    Json arr = Json::array();
    for (const auto& c : set) arr.push_back(Json{{"var", sym[c.var.index]}, {"value", c.value}});
    return arr;
}

std::vector<std::string> graph_edges(const Scm& scm, const std::vector<std::string>& sym)
{
    std::vector<std::string> out;
    for (VarId v : topological_order(scm))
        for (VarId p : scm.design_parents(v)) out.push_back(sym[p.index] + "->" + sym[v.index]);
    return out;
}

class Reader {
public:
    Reader(const Json& j, std::size_t line) : j_(j), line_(line) {}

    [[noreturn]] void fail(std::string_view field, std::string_view what) const
    {
        throw Error(ErrorCode::SchemaViolation,
                    "line " + std::to_string(line_) + ": field '" + std::string(field) + "' " + std::string(what));
    }

    const Json& get(std::string_view field) const
    {
        auto it = j_.find(field);
        if (it == j_.end()) fail(field, "is missing");
        return *it;
    }

    std::string str(std::string_view field) const
    {
        const Json& v = get(field);
        if (!v.is_string()) fail(field, "must be a string");
        return v.get<std::string>();
    }

    std::uint64_t uint(std::string_view field) const
    {
        const Json& v = get(field);
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
            fail(field, "must be a non-negative integer");
        return v.get<std::uint64_t>();
    }

    const Json& array(std::string_view field) const
    {
        const Json& v = get(field);
        if (!v.is_array()) fail(field, "must be an array");
        return v;
    }

    std::size_t line() const { return line_; }

private:
    const Json& j_;
    std::size_t line_;
};

}  // namespace

std::string to_json_line(const BenchmarkItem& item)
{
    const auto sym = symbol_table(item.scm);
    Json j;
    j["id"] = item.id;
    j["query_type"] = std::string(to_string(item.kind));
    j["difficulty"] = item.difficulty;
    j["background"] = item.text.background;
    j["question"] = item.text.question;
    j["answer"] = std::string(to_string(item.answer));
    j["graph"] = graph_edges(item.scm, sym);

    Json eqs = Json::array();
    for (VarId v : topological_order(item.scm)) {
        const Formula* f = item.scm.design_formula(v);
        if (!f) continue;
        Json args = Json::array();
        for (const auto& l : f->args) args.push_back(Json{{"var", sym[l.var.index]}, {"neg", l.negated}});
        eqs.push_back(Json{{"target", sym[v.index]}, {"op", op_name(f->op)}, {"args", std::move(args)}});
    }
    j["equations"] = std::move(eqs);
    j["interventions"] = clamps_json(item.query.interventions, sym);
    j["observations"] = clamps_json(item.query.observations, sym);

    Json names = Json::object();
    for (VarId v : legend_order(item.scm)) names[sym[v.index]] = item.names.at(v);
    j["names"] = std::move(names);
    j["seed"] = item.seed;
    j["draw"] = item.draw;
    return j.dump();
}

BenchmarkItem from_json_line(std::string_view text, std::size_t line)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::SchemaViolation, "line " + std::to_string(line) + ": malformed JSON: " + e.what());
    }
    if (!j.is_object()) throw Error(ErrorCode::SchemaViolation, "line " + std::to_string(line) + ": record must be an object");
    const Reader r(j, line);

    BenchmarkItem item;
    item.id = r.str("id");
    const auto kind = parse_query_type(r.str("query_type"));
    if (!kind) r.fail("query_type", "must be basic, joint, nested or conditional");
    item.kind = *kind;
    const Json& diff = r.get("difficulty");
    if (!diff.is_number_integer()) r.fail("difficulty", "must be an integer");
    item.difficulty = diff.get<int>();
    item.text.background = r.str("background");
    item.text.question = r.str("question");
    const std::string ans = r.str("answer");
    if (ans != "yes" && ans != "no") r.fail("answer", "must be \"yes\" or \"no\"");
    item.answer = ans == "yes" ? Answer::Yes : Answer::No;
    item.seed = r.uint("seed");
    item.draw = r.uint("draw");

    // Variables are laid out canonically: X = 0, Vi = i, Y = n - 1.
    const Json& names = r.get("names");
    if (!names.is_object() || names.size() < 2) r.fail("names", "must map every symbol to a name");
    const std::size_t n = names.size();
    auto index_of = [&](const std::string& s, std::string_view field) -> VarId {
        if (s == "X") return VarId{0};
        if (s == "Y") return VarId{static_cast<std::uint16_t>(n - 1)};
        if (s.size() >= 2 && s[0] == 'V' && std::all_of(s.begin() + 1, s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            const auto k = std::stoul(s.substr(1));
            if (k >= 1 && k + 1 < n) return VarId{static_cast<std::uint16_t>(k)};
        }
        r.fail(field, "references unknown symbol '" + s + "'");
    };
    for (const auto& [sym, name] : names.items()) {
        if (!name.is_string()) r.fail("names", "values must be strings");
        item.names.set(index_of(sym, "names"), name.get<std::string>());
    }
    if (item.names.size() != n) r.fail("names", "has duplicate symbols");

    std::vector<Role> roles(n, Role::Intermediate);
    roles.front() = Role::Antecedent;
    roles.back() = Role::Outcome;
    std::vector<Mechanism> mech(n, Exogenous{});
    for (const auto& e : r.array("equations")) {
        if (!e.is_object() || !e.contains("target") || !e.contains("op") || !e.contains("args") ||
            !e["target"].is_string() || !e["op"].is_string() || !e["args"].is_array())
            r.fail("equations", "entries need target, op and args");
        Formula f;
        const auto op = e["op"].get<std::string>();
        if (op == "UNARY") f.op = Op::Unary;
        else if (op == "AND") f.op = Op::And;
        else if (op == "OR") f.op = Op::Or;
        else r.fail("equations", "op must be UNARY, AND or OR");
        for (const auto& a : e["args"]) {
            if (!a.is_object() || !a.contains("var") || !a.contains("neg") || !a["var"].is_string() || !a["neg"].is_boolean())
                r.fail("equations", "args need var and neg");
            f.args.push_back({index_of(a["var"].get<std::string>(), "equations"), a["neg"].get<bool>()});
        }
        const VarId target = index_of(e["target"].get<std::string>(), "equations");
        if (!std::holds_alternative<Exogenous>(mech[target.index])) r.fail("equations", "defines a target twice");
        mech[target.index] = std::move(f);
    }
    item.scm = Scm(std::move(roles), std::move(mech));
    try {
        counterbench::validate(item.scm);
    } catch (const Error& e) {
        r.fail("equations", std::string("describe an invalid model: ") + e.what());
    }

    const auto sym = symbol_table(item.scm);
    std::vector<std::string> graph;
    for (const auto& g : r.array("graph")) {
        if (!g.is_string()) r.fail("graph", "entries must be strings");
        graph.push_back(g.get<std::string>());
    }
    if (graph != graph_edges(item.scm, sym)) r.fail("graph", "disagrees with the equations");

    auto clamps = [&](std::string_view field) {
        ClampSet out;
        for (const auto& c : r.array(field)) {
            if (!c.is_object() || !c.contains("var") || !c.contains("value") || !c["var"].is_string() || !c["value"].is_boolean())
                r.fail(field, "entries need var and value");
            const VarId v = index_of(c["var"].get<std::string>(), field);
            if (out.contains(v)) r.fail(field, "repeats a variable");
            out.add({v, c["value"].get<bool>()});
        }
        return out;
    };
    item.query.kind = item.kind;
    item.query.interventions = clamps("interventions");
    item.query.observations = clamps("observations");
    item.query.outcome = item.scm.outcome();
    try {
        validate_query(item.scm, item.query);
    } catch (const Error& e) {
        r.fail("interventions", std::string("do not form a valid query: ") + e.what());
    }
    return item;
}

void write_dataset(const std::vector<BenchmarkItem>& items, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
    for (const auto& item : items) out << to_json_line(item) << '\n';
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

std::vector<BenchmarkItem> read_dataset(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    std::vector<BenchmarkItem> items;
    std::string line;
    for (std::size_t n = 1; std::getline(in, line); ++n) {
        if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) continue;
        items.push_back(from_json_line(line, n));
    }
    if (in.bad()) throw Error(ErrorCode::IoError, "failed reading " + path.string());
    return items;
}

}  // namespace counterbench::bench
