#include "counterbench/text_codec.hpp"

#include "counterbench/error.hpp"
#include "counterbench/rng.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

namespace counterbench::text {

const std::string& NameTable::at(VarId v) const
{
    if (auto it = names_.find(v); it != names_.end()) return it->second;
    throw Error(ErrorCode::MissingName, "no name for variable " + std::to_string(v.index));
}

std::optional<VarId> NameTable::find(std::string_view name) const
{
    for (const auto& [v, n] : names_)
        if (n == name) return v;
    return std::nullopt;
}

bool is_valid_name(std::string_view name)
{
    if (name.size() < 3 || name.size() > 8) return false;
    if (!std::isupper(static_cast<unsigned char>(name.front()))) return false;
    std::string lower;
    for (char c : name) {
        if (!std::isalpha(static_cast<unsigned char>(c)) || static_cast<unsigned char>(c) > 0x7F) return false;
        lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return !stoplist().contains(lower);
}

NameTable generate_names(std::uint64_t seed, std::size_t n)
{
    static constexpr std::string_view kOnsets = "bdfgklmnprstvz";
    static constexpr std::string_view kVowels = "aeiou";
    static constexpr std::string_view kCodas = "fklmnprst";

    Rng rng(seed);
    NameTable table;
    std::set<std::string> used;
    std::size_t attempts = 0;
    while (table.size() < n) {
        if (++attempts > 1000 * (n + 10)) throw Error(ErrorCode::InvalidArgument, "cannot draw that many distinct names");
        std::string name;
        const auto syllables = rng.between(2, 3);
        for (std::int64_t s = 0; s < syllables; ++s) {
            name.push_back(kOnsets[rng.below(kOnsets.size())]);
            name.push_back(kVowels[rng.below(kVowels.size())]);
        }
        if (rng.chance(0.5)) name.push_back(kCodas[rng.below(kCodas.size())]);
        name.front() = static_cast<char>(std::toupper(static_cast<unsigned char>(name.front())));
        if (!is_valid_name(name) || !used.insert(name).second) continue;
        table.set(VarId{static_cast<std::uint16_t>(table.size())}, std::move(name));
    }
    return table;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string literal_text(const NameTable& names, Literal l) { return (l.negated ? "not " : "") + names.at(l.var); }

std::string clamp_text(const NameTable& names, Clamp c) { return (c.value ? "" : "not ") + names.at(c.var); }

/// "a", "a and b", "a, b and c"
std::string join_items(const std::vector<std::string>& items)
{
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) out += i + 1 == items.size() ? " and " : ", ";
        out += items[i];
    }
    return out;
}

/// "a", "a, and b", "a, b, and c"
std::string join_clauses(const std::vector<std::string>& clauses)
{
    std::string out;
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        if (i > 0) out += i + 1 == clauses.size() ? ", and " : ", ";
        out += clauses[i];
    }
    return out;
}

struct ClauseGroup {
    Formula formula;
    std::vector<VarId> targets;
};

/// Equations in topological order; consecutive single-cause equations with the
/// same cause literal share one clause ("A causes B, C and D").
std::vector<ClauseGroup> clause_groups(const Scm& scm)
{
    std::vector<ClauseGroup> groups;
    for (VarId v : topological_order(scm)) {
        const Formula* f = scm.design_formula(v);
        if (!f) continue;
        if (f->op == Op::Unary && !groups.empty() && groups.back().formula == *f)
            groups.back().targets.push_back(v);
        else
            groups.push_back({*f, {v}});
    }
    return groups;
}

std::string cause_text(const NameTable& names, const Formula& f)
{
    switch (f.op) {
    case Op::Unary: return literal_text(names, f.args[0]);
    case Op::And: return literal_text(names, f.args[0]) + " and " + literal_text(names, f.args[1]);
    case Op::Or: return literal_text(names, f.args[0]) + " or " + literal_text(names, f.args[1]);
    }
    return {};
}

std::string targets_text(const NameTable& names, const std::vector<VarId>& targets)
{
    std::vector<std::string> items;
    for (VarId t : targets) items.push_back(names.at(t));
    return join_items(items);
}

std::string known_clause(const NameTable& names, const ClauseGroup& g)
{
    const std::string lhs = cause_text(names, g.formula);
    const std::string rhs = targets_text(names, g.targets);
    switch (g.formula.op) {
    case Op::Unary: return lhs + " causes " + rhs;
    case Op::And: return lhs + " together cause " + rhs;
    case Op::Or: return lhs + " causes " + rhs;
    }
    return {};
}

std::string direct_clause(const NameTable& names, const ClauseGroup& g)
{
    const std::string lhs = cause_text(names, g.formula);
    const std::string rhs = targets_text(names, g.targets);
    if (g.formula.op == Op::And) return lhs + " have direct effects on " + rhs;
    return lhs + " has a direct effect on " + rhs;
}

std::string counterfactual_phrase(const NameTable& names, Clamp x)
{
    return clamp_text(names, x) + " instead of " + clamp_text(names, {x.var, !x.value});
}

}  // namespace

ScenarioText render(const Scm& scm, const Query& query, const NameTable& names)
{
    std::vector<std::string> direct;
    std::vector<std::string> known;
    for (const auto& g : clause_groups(scm)) {
        direct.push_back(direct_clause(names, g));
        known.push_back(known_clause(names, g));
    }

    ScenarioText out;
    out.background = std::string(kPreamble) + " " + join_clauses(direct) + ". We know that " + join_clauses(known) + ".";

    const std::string outcome = names.at(query.outcome);
    switch (query.kind) {
    case QueryKind::Basic:
        if (query.interventions.empty()) throw Error(ErrorCode::KindArityMismatch, "basic query without intervention");
        out.question = "Would " + outcome + " occur if " + counterfactual_phrase(names, query.interventions[0]) + "?";
        break;
    case QueryKind::Joint: {
        std::vector<std::string> items;
        for (const auto& c : query.interventions) items.push_back(clamp_text(names, c));
        out.question = "Would " + outcome + " occur if " + join_items(items) + "?";
        break;
    }
    case QueryKind::NestedExplicit: {
        if (query.interventions.size() < 2)
            throw Error(ErrorCode::KindArityMismatch, "nested query needs two suppositions");
        out.question = "Assume " + clamp_text(names, query.interventions[0]);
        for (std::size_t i = 1; i < query.interventions.size(); ++i)
            out.question += ", and based on this assumption, further suppose " + clamp_text(names, query.interventions[i]);
        out.question += ". Would " + outcome + " occur?";
        break;
    }
    case QueryKind::Conditional: {
        if (query.interventions.empty())
            throw Error(ErrorCode::KindArityMismatch, "conditional query without intervention");
        std::vector<std::string> seen;
        for (const auto& o : query.observations) seen.push_back(clamp_text(names, o));
        out.question = "We observed " + join_items(seen) + ". Would " + outcome + " occur if " +
                       counterfactual_phrase(names, query.interventions[0]) + "?";
        break;
    }
    case QueryKind::NestedDerived:
        throw Error(ErrorCode::UnknownQueryForm, "derived-value nested queries have no text template");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Word, Comma, Period, Question, Colon };

struct Token {
    Tok kind;
    std::string_view text;
    std::size_t offset;

    bool is(std::string_view w) const { return kind == Tok::Word && text == w; }
};

std::vector<Token> tokenize(std::string_view s, std::size_t base)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const auto c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            ++i;
        } else if (std::isalpha(c)) {
            std::size_t j = i + 1;
            while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::Word, s.substr(i, j - i), base + i});
            i = j;
        } else if (c == ',' || c == '.' || c == '?' || c == ':') {
            const Tok k = c == ',' ? Tok::Comma : c == '.' ? Tok::Period : c == '?' ? Tok::Question : Tok::Colon;
            out.push_back({k, s.substr(i, 1), base + i});
            ++i;
        } else {
            throw Error(ErrorCode::SyntaxError, "unexpected character '" + std::string(1, s[i]) + "'", base + i);
        }
    }
    return out;
}

bool is_name(const Token& t) { return t.kind == Tok::Word && std::isupper(static_cast<unsigned char>(t.text.front())); }

struct RawLiteral {
    std::uint16_t var;
    bool negated;
};

struct Clause {
    std::size_t offset;
    Op op;
    std::vector<RawLiteral> causes;
    std::vector<RawLiteral> effects;
};

using Span = std::vector<Token>;

class Parser {
public:
    explicit Parser(const ScenarioText& text) : text_(text) {}

    ParsedScenario run()
    {
        auto [direct, known] = read_background();
        read_question();
        return assemble(direct, known);
    }

private:
    // -- names

    std::uint16_t intern(const Token& t)
    {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == t.text) return static_cast<std::uint16_t>(i);
        names_.emplace_back(t.text);
        return static_cast<std::uint16_t>(names_.size() - 1);
    }

    std::uint16_t lookup(const Token& t) const
    {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == t.text) return static_cast<std::uint16_t>(i);
        throw Error(ErrorCode::SyntaxError, "unknown event '" + std::string(t.text) + "'", t.offset);
    }

    // -- background

    std::pair<std::vector<Clause>, std::vector<Clause>> read_background()
    {
        std::string_view bg = text_.background;
        std::size_t base = 0;
        if (bg.starts_with(kPreamble)) {
            base = kPreamble.size();
            bg.remove_prefix(kPreamble.size());
        }
        const Span tokens = tokenize(bg, base);

        std::vector<Span> sentences;
        Span current;
        for (const auto& t : tokens) {
            if (t.kind == Tok::Period) {
                if (current.empty()) throw Error(ErrorCode::SyntaxError, "empty sentence", t.offset);
                sentences.push_back(std::move(current));
                current.clear();
            } else {
                current.push_back(t);
            }
        }
        if (!current.empty()) throw Error(ErrorCode::SyntaxError, "unterminated sentence", current.front().offset);
        if (sentences.empty()) throw Error(ErrorCode::SyntaxError, "no causal relations given", 0);

        auto is_known = [](const Span& s) { return s.size() > 3 && s[0].is("We") && s[1].is("know") && s[2].is("that"); };

        std::vector<Clause> direct;
        std::size_t next = 0;
        if (!is_known(sentences[0])) {
            direct = read_clauses(sentences[0], 0);
            next = 1;
        }
        if (next >= sentences.size() || !is_known(sentences[next])) {
            const std::size_t at = next < sentences.size() ? sentences[next].front().offset : text_.background.size();
            throw Error(ErrorCode::SyntaxError, "expected 'We know that'", at);
        }
        auto known = read_clauses(sentences[next], 3);
        if (next + 1 != sentences.size())
            throw Error(ErrorCode::SyntaxError, "unexpected sentence", sentences[next + 1].front().offset);
        return {std::move(direct), std::move(known)};
    }

    RawLiteral read_literal(const Span& s, std::size_t& i, std::size_t end)
    {
        bool negated = false;
        if (i < end && s[i].is("not")) {
            negated = true;
            ++i;
        }
        if (i >= end || !is_name(s[i])) {
            const std::size_t at = i < s.size() ? s[i].offset : s.back().offset;
            throw Error(ErrorCode::SyntaxError, "expected an event name", at);
        }
        return {intern(s[i++]), negated};
    }

    /// lit ("and" lit)*
    void read_effects(const Span& s, std::size_t i, std::size_t end, std::vector<RawLiteral>& out)
    {
        out.push_back(read_literal(s, i, end));
        while (i < end) {
            if (!s[i].is("and")) throw Error(ErrorCode::SyntaxError, "expected 'and' between effects", s[i].offset);
            ++i;
            out.push_back(read_literal(s, i, end));
        }
    }

    /// Clauses are comma-separated; a comma-separated piece without a verb
    /// continues the effect list of the previous clause.
    std::vector<Clause> read_clauses(const Span& sentence, std::size_t first)
    {
        std::vector<Span> pieces(1);
        for (std::size_t i = first; i < sentence.size(); ++i) {
            const auto& t = sentence[i];
            if (t.kind == Tok::Comma) {
                if (pieces.back().empty()) throw Error(ErrorCode::SyntaxError, "empty clause", t.offset);
                pieces.emplace_back();
            } else if (t.kind != Tok::Word) {
                throw Error(ErrorCode::SyntaxError, "unexpected '" + std::string(t.text) + "'", t.offset);
            } else {
                pieces.back().push_back(t);
            }
        }
        if (pieces.back().empty()) {
            const std::size_t at = sentence.back().offset;
            throw Error(ErrorCode::SyntaxError, "empty clause", at);
        }

        std::vector<Clause> clauses;
        for (std::size_t p = 0; p < pieces.size(); ++p) {
            // Errors inside a clause are reported at the clause start; the
            // exact token position goes into the message.
            try {
                read_clause(pieces[p], p > 0, clauses);
            } catch (const Error& e) {
                const std::size_t clause_at = pieces[p].front().offset;
                if (e.code() != ErrorCode::SyntaxError || !e.offset() || *e.offset() == clause_at) throw;
                throw Error(ErrorCode::SyntaxError, e.message() + " (byte " + std::to_string(*e.offset()) + ")",
                            clause_at);
            }
        }
        return clauses;
    }

    void read_clause(const Span& s, bool continued, std::vector<Clause>& clauses)
    {
        {
            std::size_t begin = 0;
            if (continued && s[0].is("and")) begin = 1;
            if (begin >= s.size()) throw Error(ErrorCode::SyntaxError, "dangling 'and'", s[0].offset);

            std::size_t verb = s.size();
            for (std::size_t i = begin; i < s.size(); ++i)
                if (s[i].is("causes") || s[i].is("cause") || s[i].is("has") || s[i].is("have")) {
                    verb = i;
                    break;
                }

            if (verb == s.size()) {
                if (clauses.empty()) throw Error(ErrorCode::SyntaxError, "clause has no verb", s[begin].offset);
                read_effects(s, begin, s.size(), clauses.back().effects);
                return;
            }

            Clause clause{s[begin].offset, Op::Unary, {}, {}};
            std::size_t cause_end = verb;
            bool together = false;
            if (verb > begin && s[verb - 1].is("together")) {
                together = true;
                cause_end = verb - 1;
            }

            std::size_t after = verb + 1;
            auto expect = [&](std::initializer_list<std::string_view> words) {
                std::size_t j = after;
                for (auto w : words) {
                    if (j >= s.size() || !s[j].is(w)) return false;
                    ++j;
                }
                after = j;
                return true;
            };
            if (s[verb].is("has")) {
                if (together || !expect({"a", "direct", "effect", "on"}))
                    throw Error(ErrorCode::SyntaxError, "expected 'has a direct effect on'", s[verb].offset);
            } else if (s[verb].is("have")) {
                if (together || !(expect({"direct", "effects", "on"}) || expect({"a", "direct", "effect", "on"})))
                    throw Error(ErrorCode::SyntaxError, "expected 'have direct effects on'", s[verb].offset);
            }

            std::size_t i = begin;
            clause.causes.push_back(read_literal(s, i, cause_end));
            if (i < cause_end) {
                if (s[i].is("and")) clause.op = Op::And;
                else if (s[i].is("or")) clause.op = Op::Or;
                else throw Error(ErrorCode::SyntaxError, "expected 'and' or 'or' between causes", s[i].offset);
                ++i;
                clause.causes.push_back(read_literal(s, i, cause_end));
                if (i < cause_end) throw Error(ErrorCode::SyntaxError, "at most two causes per clause", s[i].offset);
            }
            if (together && clause.op != Op::And)
                throw Error(ErrorCode::SyntaxError, "'together' requires 'and'", clause.offset);
            if (after >= s.size()) throw Error(ErrorCode::SyntaxError, "clause has no effect", s[verb].offset);
            read_effects(s, after, s.size(), clause.effects);
            clauses.push_back(std::move(clause));
        }
    }

    // -- question

    void read_question()
    {
        const std::size_t base = text_.background.size() + 1;
        const Span s = tokenize(text_.question, base);
        if (s.empty()) throw Error(ErrorCode::UnknownQueryForm, "empty question", base);

        std::size_t i = 0;
        auto at = [&](std::size_t k) { return k < s.size() ? s[k].offset : base + text_.question.size(); };
        auto expect = [&](std::string_view w) {
            if (i >= s.size() || !s[i].is(w))
                throw Error(ErrorCode::SyntaxError, "expected '" + std::string(w) + "'", at(i));
            ++i;
        };
        auto expect_kind = [&](Tok k, const char* what) {
            if (i >= s.size() || s[i].kind != k) throw Error(ErrorCode::SyntaxError, std::string("expected ") + what, at(i));
            ++i;
        };
        auto clamp = [&]() {
            bool value = true;
            if (i < s.size() && s[i].is("not")) {
                value = false;
                ++i;
            }
            if (i >= s.size() || !is_name(s[i])) throw Error(ErrorCode::SyntaxError, "expected an event name", at(i));
            return Clamp{VarId{lookup(s[i++])}, value};
        };
        auto outcome = [&]() {
            if (i >= s.size() || !is_name(s[i])) throw Error(ErrorCode::SyntaxError, "expected the outcome event", at(i));
            outcome_ = VarId{lookup(s[i++])};
        };
        auto add = [&](ClampSet& set, Clamp c, std::size_t where) {
            if (set.contains(c.var)) throw Error(ErrorCode::SyntaxError, "event mentioned twice", where);
            set.add(c);
        };

        bool observed = false;
        if (s[0].is("We") && s.size() > 1 && s[1].is("observed")) {
            observed = true;
            i = 2;
            add(query_.observations, clamp(), at(i));
            while (i < s.size() && (s[i].kind == Tok::Comma || s[i].is("and"))) {
                ++i;
                const std::size_t where = at(i);
                add(query_.observations, clamp(), where);
            }
            expect_kind(Tok::Period, "'.'");
            if (i >= s.size() || !s[i].is("Would"))
                throw Error(ErrorCode::UnknownQueryForm, "observation must be followed by a 'Would' question", at(i));
        }

        if (i < s.size() && s[i].is("Would")) {
            ++i;
            outcome();
            expect("occur");
            expect("if");
            const std::size_t where = at(i);
            const Clamp first = clamp();
            if (i < s.size() && s[i].is("instead")) {
                ++i;
                expect("of");
                const std::size_t alt_at = at(i);
                const Clamp alt = clamp();
                if (alt.var != first.var || alt.value == first.value)
                    throw Error(ErrorCode::SyntaxError, "'instead of' must name the same event with opposite polarity", alt_at);
                query_.kind = observed ? QueryKind::Conditional : QueryKind::Basic;
                add(query_.interventions, first, where);
            } else {
                if (observed) throw Error(ErrorCode::UnknownQueryForm, "conditional question must use 'instead of'", at(i));
                query_.kind = QueryKind::Joint;
                add(query_.interventions, first, where);
                while (i < s.size() && (s[i].kind == Tok::Comma || s[i].is("and"))) {
                    ++i;
                    const std::size_t w = at(i);
                    add(query_.interventions, clamp(), w);
                }
                if (query_.interventions.size() < 2)
                    throw Error(ErrorCode::UnknownQueryForm, "single intervention without 'instead of'", where);
            }
            expect_kind(Tok::Question, "'?'");
        } else if (!observed && s[0].is("Assume")) {
            i = 1;
            query_.kind = QueryKind::NestedExplicit;
            add(query_.interventions, clamp(), at(1));
            do {
                expect_kind(Tok::Comma, "','");
                for (auto w : {"and", "based", "on", "this", "assumption"}) expect(w);
                expect_kind(Tok::Comma, "','");
                expect("further");
                expect("suppose");
                const std::size_t where = at(i);
                add(query_.interventions, clamp(), where);
            } while (i < s.size() && s[i].kind == Tok::Comma);
            expect_kind(Tok::Period, "'.'");
            expect("Would");
            outcome();
            expect("occur");
            expect_kind(Tok::Question, "'?'");
        } else if (!observed) {
            throw Error(ErrorCode::UnknownQueryForm, "unrecognized question form", s[0].offset);
        }
        if (i != s.size()) throw Error(ErrorCode::SyntaxError, "trailing text after question", s[i].offset);
    }

    // -- model

    static std::vector<Equation> equations_of(const std::vector<Clause>& clauses, bool& duplicate, std::size_t& dup_at)
    {
        std::vector<Equation> out;
        std::set<std::uint16_t> targets;
        for (const auto& c : clauses) {
            for (const auto& e : c.effects) {
                Formula f;
                f.op = c.op;
                if (c.op == Op::Unary) {
                    f.args.push_back({VarId{c.causes[0].var}, c.causes[0].negated != e.negated});
                } else {
                    if (e.negated)
                        throw Error(ErrorCode::SyntaxError, "a compound cause cannot have a negated effect", c.offset);
                    for (const auto& l : c.causes) f.args.push_back({VarId{l.var}, l.negated});
                }
                if (!targets.insert(e.var).second && !duplicate) {
                    duplicate = true;
                    dup_at = c.offset;
                }
                out.push_back({VarId{e.var}, std::move(f)});
            }
        }
        return out;
    }

    static std::set<std::pair<std::uint16_t, std::uint16_t>> edges_of(const std::vector<Equation>& eqs)
    {
        std::set<std::pair<std::uint16_t, std::uint16_t>> out;
        for (const auto& e : eqs)
            for (const auto& a : e.formula.args) out.insert({a.var.index, e.target.index});
        return out;
    }

    void check_consistency(const std::vector<Equation>& direct, const std::vector<Equation>& known, std::size_t at) const
    {
        if (edges_of(direct) != edges_of(known))
            throw Error(ErrorCode::InconsistentClauses, "direct effects disagree with the stated causes", at);
        // A target described by a single direct-effect clause must carry the
        // same connective and polarity as its "We know" equation.
        std::map<std::uint16_t, std::vector<const Formula*>> by_target;
        for (const auto& e : direct) by_target[e.target.index].push_back(&e.formula);
        for (const auto& e : known) {
            const auto& fs = by_target[e.target.index];
            if (fs.size() == 1 && !(*fs[0] == e.formula))
                throw Error(ErrorCode::InconsistentClauses,
                            "direct effect on '" + names_[e.target.index] + "' disagrees with the stated cause", at);
        }
    }

    ParsedScenario assemble(const std::vector<Clause>& direct, const std::vector<Clause>& known)
    {
        bool duplicate = false;
        std::size_t dup_at = 0;
        const auto known_eqs = equations_of(known, duplicate, dup_at);
        if (duplicate) throw Error(ErrorCode::InconsistentClauses, "an event is caused by two separate clauses", dup_at);
        if (!direct.empty()) {
            bool ignored = false;
            const auto direct_eqs = equations_of(direct, ignored, dup_at);
            check_consistency(direct_eqs, known_eqs, direct.front().offset);
        }

        const std::size_t n = names_.size();
        std::vector<Role> roles(n, Role::Intermediate);
        std::vector<Mechanism> mechanisms(n, Exogenous{});
        for (const auto& e : known_eqs) mechanisms[e.target.index] = e.formula;

        const VarId x = query_.interventions.empty() ? query_.observations[0].var : query_.interventions[0].var;
        if (x == outcome_) throw Error(ErrorCode::InvalidQuery, "the outcome cannot be intervened");
        roles[x.index] = Role::Antecedent;
        roles[outcome_.index] = Role::Outcome;
        query_.outcome = outcome_;

        ParsedScenario out;
        out.scm = Scm(std::move(roles), std::move(mechanisms));
        out.query = query_;
        for (std::size_t i = 0; i < n; ++i) out.names.set(VarId{static_cast<std::uint16_t>(i)}, names_[i]);
        out.clause_count = known.size();

        validate(out.scm);
        validate_query(out.scm, out.query);
        return out;
    }

    const ScenarioText& text_;
    std::vector<std::string> names_;
    Query query_;
    VarId outcome_;
};

}  // namespace

ParsedScenario parse(const ScenarioText& text) { return Parser(text).run(); }

ScenarioText split_scenario(std::string_view full)
{
    static constexpr std::array<std::string_view, 3> kStarts{"We observed", "Assume", "Would"};
    std::size_t pos = 0;
    while (pos < full.size()) {
        while (pos < full.size() && std::isspace(static_cast<unsigned char>(full[pos]))) ++pos;
        for (auto start : kStarts) {
            if (full.substr(pos).starts_with(start)) {
                std::string_view bg = full.substr(0, pos);
                while (!bg.empty() && std::isspace(static_cast<unsigned char>(bg.back()))) bg.remove_suffix(1);
                std::string_view q = full.substr(pos);
                while (!q.empty() && std::isspace(static_cast<unsigned char>(q.back()))) q.remove_suffix(1);
                return {std::string(bg), std::string(q)};
            }
        }
        const auto next = full.find_first_of(".?", pos);
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    std::string_view bg = full;
    while (!bg.empty() && std::isspace(static_cast<unsigned char>(bg.back()))) bg.remove_suffix(1);
    return {std::string(bg), {}};
}

ParsedScenario parse(std::string_view full) { return parse(split_scenario(full)); }

bool same_scenario(const Scm& a, const Query& qa, const NameTable& na, const Scm& b, const Query& qb, const NameTable& nb)
{
    if (a.size() != b.size() || na.size() != a.size() || nb.size() != b.size()) return false;
    std::vector<VarId> map(a.size());
    for (VarId v : a.variables()) {
        auto w = nb.find(na.at(v));
        if (!w) return false;
        map[v.index] = *w;
    }
    auto lit = [&](Literal l) { return Literal{map[l.var.index], l.negated}; };
    auto formula = [&](const Formula& f) {
        Formula g{f.op, {}};
        for (const auto& l : f.args) g.args.push_back(lit(l));
        return g;
    };
    for (VarId v : a.variables()) {
        const VarId w = map[v.index];
        if (a.role(v) != b.role(w)) return false;
        const Mechanism& ma = a.mechanism(v);
        const Mechanism& mb = b.mechanism(w);
        if (ma.index() != mb.index()) return false;
        if (const auto* f = std::get_if<Formula>(&ma); f && !(formula(*f) == std::get<Formula>(mb))) return false;
        if (const auto* p = std::get_if<Pinned>(&ma)) {
            const auto& q = std::get<Pinned>(mb);
            if (p->value != q.value || p->replaced.has_value() != q.replaced.has_value()) return false;
            if (p->replaced && !(formula(*p->replaced) == *q.replaced)) return false;
        }
    }
    auto clamps = [&](const ClampSet& s) {
        ClampSet out;
        for (const auto& c : s) out.add({map[c.var.index], c.value});
        return out;
    };
    if (qa.kind != qb.kind || map[qa.outcome.index] != qb.outcome) return false;
    if (!(clamps(qa.interventions) == qb.interventions) || !(clamps(qa.observations) == qb.observations)) return false;
    if (qa.derived.has_value() != qb.derived.has_value()) return false;
    if (qa.derived && map[qa.derived->index] != *qb.derived) return false;
    return true;
}

}  // namespace counterbench::text
