#include "sketchplan/pddl/parser.hpp"

#include "sketchplan/util/error.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

using namespace std;
using sketchplan::util::ParseError;

namespace sketchplan::pddl {

int TypeTable::find(const string &name) const {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name)
            return static_cast<int>(i);
    return -1;
}

bool TypeTable::is_subtype(int t, int ancestor) const {
    while (t != -1) {
        if (t == ancestor)
            return true;
        t = parent[t];
    }
    return false;
}

int DomainDef::find_predicate(const string &name) const {
    for (size_t i = 0; i < predicates.size(); ++i)
        if (predicates[i].name == name)
            return static_cast<int>(i);
    return -1;
}

int ProblemDef::find_object(const string &name) const {
    for (size_t i = 0; i < object_names.size(); ++i)
        if (object_names[i] == name)
            return static_cast<int>(i);
    return -1;
}

namespace {

struct SExpr {
    string atom;          // nonempty iff leaf
    vector<SExpr> items;
    int line = 0;
    int column = 0;

    bool is_atom() const { return !atom.empty(); }
    bool head_is(const string &word) const {
        return !items.empty() && items[0].is_atom() && items[0].atom == word;
    }
};

class Reader {
public:
    explicit Reader(const string &text) : text_(text) {}

    vector<SExpr> read_all() {
        vector<SExpr> out;
        skip_space();
        while (!eof()) {
            out.push_back(read_expr());
            skip_space();
        }
        return out;
    }

private:
    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    char take() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    void skip_space() {
        while (!eof()) {
            char c = peek();
            if (c == ';') {
                while (!eof() && peek() != '\n')
                    take();
            } else if (isspace(static_cast<unsigned char>(c))) {
                take();
            } else {
                return;
            }
        }
    }

    SExpr read_expr() {
        skip_space();
        if (eof())
            throw ParseError("unexpected end of input", line_, column_);
        SExpr e;
        e.line = line_;
        e.column = column_;
        if (peek() == '(') {
            take();
            skip_space();
            while (!eof() && peek() != ')') {
                e.items.push_back(read_expr());
                skip_space();
            }
            if (eof())
                throw ParseError("missing ')'", e.line, e.column);
            take();
            return e;
        }
        if (peek() == ')')
            throw ParseError("unexpected ')'", line_, column_);
        string word;
        while (!eof() && peek() != '(' && peek() != ')' && peek() != ';' &&
               !isspace(static_cast<unsigned char>(peek())))
            word.push_back(static_cast<char>(tolower(static_cast<unsigned char>(take()))));
        e.atom = word;
        return e;
    }

    const string &text_;
    size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

[[noreturn]] void fail(const SExpr &at, const string &message) {
    throw ParseError(message, at.line, at.column);
}

const SExpr &expect_list(const SExpr &e, const string &what) {
    if (e.is_atom())
        fail(e, "expected " + what + ", found atom '" + e.atom + "'");
    return e;
}

const string &expect_atom(const SExpr &e, const string &what) {
    if (!e.is_atom())
        fail(e, "expected " + what + ", found a list");
    return e.atom;
}

/*
  Parses "x y - t z - u" style typed lists. Calls sink(name, type_name, expr)
  per entry; type_name is "object" when no type is given.
*/
template <typename Sink>
void parse_typed_list(const vector<SExpr> &items, size_t begin, Sink &&sink) {
    vector<const SExpr *> pending;
    for (size_t i = begin; i < items.size(); ++i) {
        const string &word = expect_atom(items[i], "name in typed list");
        if (word == "-") {
            if (i + 1 >= items.size())
                fail(items[i], "dangling '-' in typed list");
            const string &type_name = expect_atom(items[i + 1], "type name");
            for (const SExpr *p : pending)
                sink(p->atom, type_name, *p);
            pending.clear();
            ++i;
        } else {
            pending.push_back(&items[i]);
        }
    }
    for (const SExpr *p : pending)
        sink(p->atom, "object", *p);
}

const set<string> kSupportedRequirements = {
    ":strips", ":typing", ":negative-preconditions", ":equality"};

int require_type(const TypeTable &types, const string &name, const SExpr &at) {
    int t = types.find(name);
    if (t < 0)
        fail(at, "undeclared type '" + name + "'");
    return t;
}

SchemaLiteral parse_schema_literal(const SExpr &e, bool negated,
                                   const DomainDef &domain,
                                   const ActionSchema &schema) {
    const SExpr &lit = expect_list(e, "literal");
    if (lit.items.empty())
        fail(e, "empty literal");
    const string &pred_name = expect_atom(lit.items[0], "predicate name");
    int pred = domain.find_predicate(pred_name);
    if (pred < 0)
        fail(lit.items[0], "undeclared predicate '" + pred_name + "'");
    const Predicate &p = domain.predicates[pred];
    if (static_cast<int>(lit.items.size()) - 1 != p.arity())
        fail(e, "predicate '" + pred_name + "' expects " + to_string(p.arity()) +
                    " arguments, got " + to_string(lit.items.size() - 1));
    SchemaLiteral out;
    out.predicate = pred;
    out.negated = negated;
    for (size_t i = 1; i < lit.items.size(); ++i) {
        const string &var = expect_atom(lit.items[i], "parameter");
        if (var.empty() || var[0] != '?')
            fail(lit.items[i], "schema literals must use ?parameters, got '" + var + "'");
        auto it = find(schema.param_names.begin(), schema.param_names.end(), var);
        if (it == schema.param_names.end())
            fail(lit.items[i], "unknown parameter '" + var + "'");
        int param = static_cast<int>(it - schema.param_names.begin());
        if (!domain.types.is_subtype(schema.param_types[param],
                                     p.param_types[i - 1]))
            fail(lit.items[i], "type mismatch: parameter '" + var +
                                   "' does not fit predicate '" + pred_name + "'");
        out.args.push_back(param);
    }
    return out;
}

int find_param(const ActionSchema &schema, const SExpr &e) {
    const string &var = expect_atom(e, "parameter");
    auto it = find(schema.param_names.begin(), schema.param_names.end(), var);
    if (it == schema.param_names.end())
        fail(e, "unknown parameter '" + var + "'");
    return static_cast<int>(it - schema.param_names.begin());
}

/* Accepts a literal, (and ...), or (not ...); equality only when allowed. */
void parse_condition(const SExpr &e, bool negated, const DomainDef &domain,
                     ActionSchema &schema, bool is_effect) {
    const SExpr &c = expect_list(e, "condition");
    if (c.items.empty())
        return;   // (and) or ()
    if (c.head_is("and")) {
        if (negated)
            fail(e, "negated conjunctions are unsupported");
        for (size_t i = 1; i < c.items.size(); ++i)
            parse_condition(c.items[i], false, domain, schema, is_effect);
        return;
    }
    if (c.head_is("not")) {
        if (c.items.size() != 2)
            fail(e, "(not ...) takes one argument");
        if (negated)
            fail(e, "double negation is unsupported");
        parse_condition(c.items[1], true, domain, schema, is_effect);
        return;
    }
    if (c.head_is("=")) {
        if (is_effect)
            fail(e, "equality is not allowed in effects");
        if (c.items.size() != 3)
            fail(e, "(= ...) takes two arguments");
        EqualityConstraint eq;
        eq.left = find_param(schema, c.items[1]);
        eq.right = find_param(schema, c.items[2]);
        eq.negated = negated;
        schema.equalities.push_back(eq);
        return;
    }
    SchemaLiteral lit = parse_schema_literal(c, negated, domain, schema);
    (is_effect ? schema.effects : schema.preconditions).push_back(lit);
}

ActionSchema parse_action(const SExpr &e, const DomainDef &domain) {
    ActionSchema schema;
    schema.name = expect_atom(e.items[1], "action name");
    size_t i = 2;
    while (i < e.items.size()) {
        const string &key = expect_atom(e.items[i], "action keyword");
        if (i + 1 >= e.items.size())
            fail(e.items[i], "missing value after " + key);
        const SExpr &value = e.items[i + 1];
        if (key == ":parameters") {
            parse_typed_list(expect_list(value, "parameter list").items, 0,
                             [&](const string &name, const string &type_name,
                                 const SExpr &at) {
                                 if (name.empty() || name[0] != '?')
                                     fail(at, "parameters must start with '?'");
                                 schema.param_names.push_back(name);
                                 schema.param_types.push_back(
                                     require_type(domain.types, type_name, at));
                             });
        } else if (key == ":precondition") {
            parse_condition(value, false, domain, schema, false);
        } else if (key == ":effect") {
            parse_condition(value, false, domain, schema, true);
        } else {
            fail(e.items[i], "unsupported action keyword " + key);
        }
        i += 2;
    }
    return schema;
}

GroundLiteral parse_ground_literal(const SExpr &e, bool negated,
                                   const DomainDef &domain,
                                   const ProblemDef &problem,
                                   bool allow_negation) {
    const SExpr &lit = expect_list(e, "ground literal");
    if (lit.items.empty())
        fail(e, "empty literal");
    if (lit.head_is("not")) {
        if (!allow_negation)
            fail(e, "negative literals are unsupported here (closed-world init)");
        if (lit.items.size() != 2 || negated)
            fail(e, "malformed negation");
        return parse_ground_literal(lit.items[1], true, domain, problem, false);
    }
    const string &pred_name = expect_atom(lit.items[0], "predicate name");
    if (pred_name == "=")
        fail(e, "equality is not allowed over ground literals");
    int pred = domain.find_predicate(pred_name);
    if (pred < 0)
        fail(lit.items[0], "undeclared predicate '" + pred_name + "'");
    const Predicate &p = domain.predicates[pred];
    if (static_cast<int>(lit.items.size()) - 1 != p.arity())
        fail(e, "predicate '" + pred_name + "' expects " + to_string(p.arity()) +
                    " arguments, got " + to_string(lit.items.size() - 1));
    GroundLiteral out;
    out.predicate = pred;
    out.negated = negated;
    for (size_t i = 1; i < lit.items.size(); ++i) {
        const string &obj_name = expect_atom(lit.items[i], "object");
        int obj = problem.find_object(obj_name);
        if (obj < 0)
            fail(lit.items[i], "undeclared object '" + obj_name + "'");
        if (!domain.types.is_subtype(problem.object_types[obj],
                                     p.param_types[i - 1]))
            fail(lit.items[i], "type mismatch: object '" + obj_name +
                                   "' does not fit predicate '" + pred_name + "'");
        out.args.push_back(obj);
    }
    return out;
}

SExpr parse_single(const string &text, const string &what) {
    Reader reader(text);
    vector<SExpr> all = reader.read_all();
    if (all.size() != 1)
        throw ParseError("expected exactly one (define ...) form in " + what);
    const SExpr &top = all[0];
    if (!top.head_is("define"))
        throw ParseError("expected (define ...) in " + what, top.line, top.column);
    return all[0];
}

} // namespace

DomainDef parse_domain(const string &text) {
    SExpr top = parse_single(text, "domain file");
    DomainDef domain;
    domain.types.names.push_back("object");
    domain.types.parent.push_back(-1);

    bool saw_name = false;
    for (size_t i = 1; i < top.items.size(); ++i) {
        const SExpr &sec = expect_list(top.items[i], "domain section");
        if (sec.head_is("domain")) {
            if (sec.items.size() != 2)
                fail(sec, "malformed (domain name)");
            domain.name = expect_atom(sec.items[1], "domain name");
            saw_name = true;
        } else if (sec.head_is(":requirements")) {
            for (size_t j = 1; j < sec.items.size(); ++j) {
                const string &req = expect_atom(sec.items[j], "requirement");
                if (!kSupportedRequirements.count(req))
                    fail(sec.items[j], "unsupported requirement " + req);
            }
        } else if (sec.head_is(":types")) {
            // Collect names first so later entries can use earlier parents.
            vector<pair<string, string>> declared;
            parse_typed_list(sec.items, 1,
                             [&](const string &name, const string &type_name,
                                 const SExpr &) {
                                 declared.emplace_back(name, type_name);
                             });
            for (const auto &[name, parent_name] : declared) {
                if (domain.types.find(name) < 0) {
                    domain.types.names.push_back(name);
                    domain.types.parent.push_back(-2);
                }
            }
            for (const auto &[name, parent_name] : declared) {
                int t = domain.types.find(name);
                int p = domain.types.find(parent_name);
                if (p < 0)
                    fail(sec, "undeclared parent type '" + parent_name + "'");
                domain.types.parent[t] = p;
            }
            for (size_t t = 0; t < domain.types.names.size(); ++t)
                if (domain.types.parent[t] == -2)
                    domain.types.parent[t] = 0;
        } else if (sec.head_is(":predicates")) {
            for (size_t j = 1; j < sec.items.size(); ++j) {
                const SExpr &pd = expect_list(sec.items[j], "predicate declaration");
                Predicate pred;
                pred.name = expect_atom(pd.items[0], "predicate name");
                if (domain.find_predicate(pred.name) >= 0)
                    fail(pd, "duplicate predicate '" + pred.name + "'");
                parse_typed_list(pd.items, 1,
                                 [&](const string &var, const string &type_name,
                                     const SExpr &at) {
                                     if (var.empty() || var[0] != '?')
                                         fail(at, "predicate parameters must start with '?'");
                                     pred.param_types.push_back(
                                         require_type(domain.types, type_name, at));
                                 });
                domain.predicates.push_back(pred);
            }
        } else if (sec.head_is(":action")) {
            domain.schemas.push_back(parse_action(sec, domain));
        } else if (sec.head_is(":constants")) {
            fail(sec, "domain constants are unsupported; declare objects per instance");
        } else if (sec.head_is(":functions")) {
            fail(sec, "numeric fluents are unsupported");
        } else {
            fail(sec, "unsupported domain section");
        }
    }
    if (!saw_name)
        throw ParseError("domain file lacks a (domain name) section");
    return domain;
}

ProblemDef parse_problem(const string &text, const DomainDef &domain) {
    SExpr top = parse_single(text, "problem file");
    ProblemDef problem;

    for (size_t i = 1; i < top.items.size(); ++i) {
        const SExpr &sec = expect_list(top.items[i], "problem section");
        if (sec.head_is("problem")) {
            if (sec.items.size() != 2)
                fail(sec, "malformed (problem name)");
            problem.name = expect_atom(sec.items[1], "problem name");
        } else if (sec.head_is(":domain")) {
            problem.domain_name = expect_atom(sec.items[1], "domain name");
            if (problem.domain_name != domain.name)
                fail(sec, "problem references domain '" + problem.domain_name +
                              "', expected '" + domain.name + "'");
        } else if (sec.head_is(":objects")) {
            parse_typed_list(sec.items, 1,
                             [&](const string &name, const string &type_name,
                                 const SExpr &at) {
                                 if (problem.find_object(name) >= 0)
                                     fail(at, "duplicate object '" + name + "'");
                                 problem.object_names.push_back(name);
                                 problem.object_types.push_back(
                                     require_type(domain.types, type_name, at));
                             });
        } else if (sec.head_is(":init")) {
            for (size_t j = 1; j < sec.items.size(); ++j) {
                GroundLiteral lit = parse_ground_literal(sec.items[j], false,
                                                         domain, problem, false);
                problem.init.push_back(lit);
            }
        } else if (sec.head_is(":goal")) {
            if (sec.items.size() != 2)
                fail(sec, "(:goal ...) takes one condition");
            const SExpr &g = expect_list(sec.items[1], "goal condition");
            vector<const SExpr *> literals;
            if (g.head_is("and")) {
                for (size_t j = 1; j < g.items.size(); ++j)
                    literals.push_back(&g.items[j]);
            } else if (!g.items.empty()) {
                literals.push_back(&sec.items[1]);
            }
            for (const SExpr *lit : literals)
                problem.goal.push_back(
                    parse_ground_literal(*lit, false, domain, problem, true));
        } else {
            fail(sec, "unsupported problem section");
        }
    }

    sort(problem.init.begin(), problem.init.end());
    problem.init.erase(unique(problem.init.begin(), problem.init.end()),
                       problem.init.end());
    return problem;
}

string read_file(const string &path) {
    ifstream in(path, ios::binary);
    if (!in)
        throw ParseError("cannot open file: " + path);
    ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace sketchplan::pddl
