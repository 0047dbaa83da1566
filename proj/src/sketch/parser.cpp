#include "sketchplan/sketch/sketch.hpp"

#include "sketchplan/dl/parser.hpp"
#include "sketchplan/util/error.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

using namespace std;

namespace sketchplan::sketch {

const Condition *SketchRule::condition_on(int feature) const {
    for (const Condition &c : conditions)
        if (c.feature == feature)
            return &c;
    return nullptr;
}

const Effect *SketchRule::effect_on(int feature) const {
    for (const Effect &e : effects)
        if (e.feature == feature)
            return &e;
    return nullptr;
}

int Sketch::find_feature(const string &name) const {
    for (size_t i = 0; i < features.size(); ++i)
        if (features[i].name == name)
            return static_cast<int>(i);
    return -1;
}

bool Sketch::feature_is_boolean(int feature) const {
    return features[feature].expr.is_boolean();
}

string Sketch::rule_to_string(const SketchRule &rule) const {
    ostringstream out;
    out << rule.id << ": {";
    for (size_t i = 0; i < rule.conditions.size(); ++i) {
        const Condition &c = rule.conditions[i];
        if (i > 0)
            out << ", ";
        const string &name = features[c.feature].name;
        switch (c.kind) {
        case ConditionKind::BoolTrue: out << name; break;
        case ConditionKind::BoolFalse: out << "!" << name; break;
        case ConditionKind::NumZero: out << name << "=0"; break;
        case ConditionKind::NumPositive: out << name << ">0"; break;
        }
    }
    out << "} -> {";
    for (size_t i = 0; i < rule.effects.size(); ++i) {
        const Effect &e = rule.effects[i];
        if (i > 0)
            out << ", ";
        const string &name = features[e.feature].name;
        switch (e.kind) {
        case EffectKind::BoolSet: out << name; break;
        case EffectKind::BoolClear: out << "!" << name; break;
        case EffectKind::BoolAny: out << name << "?"; break;
        case EffectKind::NumDec: out << name << "--"; break;
        case EffectKind::NumInc: out << name << "++"; break;
        case EffectKind::NumAny: out << name << "?"; break;
        }
    }
    out << "}";
    return out.str();
}

namespace {

[[noreturn]] void fail(int line, const string &message) {
    throw util::ParseError(message, line, 1);
}

string trim(const string &s) {
    size_t begin = s.find_first_not_of(" \t\r");
    if (begin == string::npos)
        return "";
    size_t end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

vector<string> split_commas(const string &s) {
    vector<string> parts;
    string current;
    for (char ch : s) {
        if (ch == ',') {
            parts.push_back(current);
            current.clear();
        } else if (!isspace(static_cast<unsigned char>(ch))) {
            current += ch;
        }
    }
    if (!current.empty())
        parts.push_back(current);
    for (const string &part : parts)
        if (part.empty())
            return {};   // caller reports the malformed list
    return parts;
}

bool is_name(const string &s) {
    if (s.empty())
        return false;
    for (char ch : s)
        if (!isalnum(static_cast<unsigned char>(ch)) && ch != '_' && ch != '-')
            return false;
    return true;
}

Condition parse_condition(const Sketch &sketch, const string &token, int line) {
    string text = token;
    Condition cond;
    if (text.size() > 2 && text.compare(text.size() - 2, 2, ">0") == 0) {
        cond.kind = ConditionKind::NumPositive;
        text = text.substr(0, text.size() - 2);
    } else if (text.size() > 2 && text.compare(text.size() - 2, 2, "=0") == 0) {
        cond.kind = ConditionKind::NumZero;
        text = text.substr(0, text.size() - 2);
    } else if (text.size() > 1 && text[0] == '!') {
        cond.kind = ConditionKind::BoolFalse;
        text = text.substr(1);
    } else {
        cond.kind = ConditionKind::BoolTrue;
    }
    if (!is_name(text))
        fail(line, "malformed condition '" + token + "'");
    cond.feature = sketch.find_feature(text);
    if (cond.feature < 0)
        fail(line, "condition references undeclared feature '" + text + "'");
    bool needs_numeric = cond.kind == ConditionKind::NumZero ||
                         cond.kind == ConditionKind::NumPositive;
    if (needs_numeric && sketch.feature_is_boolean(cond.feature))
        fail(line, "numerical condition on Boolean feature '" + text + "'");
    if (!needs_numeric && !sketch.feature_is_boolean(cond.feature))
        fail(line, "Boolean condition on numerical feature '" + text + "'");
    return cond;
}

Effect parse_effect(const Sketch &sketch, const string &token, int line) {
    string text = token;
    enum class Form { Set, Clear, Any, Inc, Dec } form = Form::Set;
    if (text.size() > 2 && text.compare(text.size() - 2, 2, "++") == 0) {
        form = Form::Inc;
        text = text.substr(0, text.size() - 2);
    } else if (text.size() > 2 && text.compare(text.size() - 2, 2, "--") == 0) {
        form = Form::Dec;
        text = text.substr(0, text.size() - 2);
    } else if (text.size() > 1 && text.back() == '?') {
        form = Form::Any;
        text = text.substr(0, text.size() - 1);
    } else if (text.size() > 1 && text[0] == '!') {
        form = Form::Clear;
        text = text.substr(1);
    }
    if (!is_name(text))
        fail(line, "malformed effect '" + token + "'");
    Effect effect;
    effect.feature = sketch.find_feature(text);
    if (effect.feature < 0)
        fail(line, "effect references undeclared feature '" + text + "'");
    bool boolean = sketch.feature_is_boolean(effect.feature);
    switch (form) {
    case Form::Set:
        if (!boolean)
            fail(line, "Boolean effect on numerical feature '" + text + "'");
        effect.kind = EffectKind::BoolSet;
        break;
    case Form::Clear:
        if (!boolean)
            fail(line, "Boolean effect on numerical feature '" + text + "'");
        effect.kind = EffectKind::BoolClear;
        break;
    case Form::Any:
        effect.kind = boolean ? EffectKind::BoolAny : EffectKind::NumAny;
        break;
    case Form::Inc:
    case Form::Dec:
        if (boolean)
            fail(line, "numerical effect on Boolean feature '" + text + "'");
        effect.kind = form == Form::Inc ? EffectKind::NumInc : EffectKind::NumDec;
        break;
    }
    return effect;
}

void parse_feature_line(Sketch &sketch, dl::Pool &pool, const string &rest,
                        int line) {
    istringstream in(rest);
    string name, colon, type;
    if (!(in >> name >> colon >> type) || colon != ":")
        fail(line, "expected `feature <name> : bool|num := <expr>`");
    if (!is_name(name))
        fail(line, "malformed feature name '" + name + "'");
    if (type != "bool" && type != "num")
        fail(line, "feature type must be `bool` or `num`, got '" + type + "'");
    string assign;
    if (!(in >> assign) || assign != ":=")
        fail(line, "expected `:=` after the feature type");
    string expr_text;
    getline(in, expr_text);
    if (sketch.find_feature(name) >= 0)
        fail(line, "duplicate feature '" + name + "'");
    dl::FeatureExpr expr = dl::parse_feature(expr_text, pool, line);
    if (expr.is_boolean() != (type == "bool"))
        fail(line, "feature '" + name + "' declared " + type +
                       " but its expression is " +
                       (expr.is_boolean() ? "Boolean" : "numerical"));
    sketch.features.push_back({name, expr});
}

void parse_rule_line(Sketch &sketch, const string &rest, int line) {
    size_t open1 = rest.find('{');
    size_t close1 = rest.find('}', open1 == string::npos ? 0 : open1);
    size_t arrow = rest.find("->", close1 == string::npos ? 0 : close1);
    size_t open2 = rest.find('{', arrow == string::npos ? 0 : arrow);
    size_t close2 = rest.find('}', open2 == string::npos ? 0 : open2);
    if (open1 == string::npos || close1 == string::npos ||
        arrow == string::npos || open2 == string::npos ||
        close2 == string::npos)
        fail(line, "expected `rule { ... } -> { ... }`");
    string before = trim(rest.substr(0, open1));
    string between = trim(rest.substr(close1 + 1, arrow - close1 - 1));
    string after = trim(rest.substr(close2 + 1));
    if (!before.empty() || !between.empty() || !after.empty())
        fail(line, "unexpected text around `rule { ... } -> { ... }`");

    string cond_text = rest.substr(open1 + 1, close1 - open1 - 1);
    string effect_text = rest.substr(open2 + 1, close2 - open2 - 1);
    SketchRule rule;
    rule.id = "r" + to_string(sketch.rules.size() + 1);
    if (!trim(cond_text).empty()) {
        vector<string> tokens = split_commas(cond_text);
        if (tokens.empty())
            fail(line, "malformed condition list '" + cond_text + "'");
        for (const string &token : tokens) {
            Condition cond = parse_condition(sketch, token, line);
            if (rule.condition_on(cond.feature))
                fail(line, "feature '" + sketch.features[cond.feature].name +
                               "' appears twice in the conditions");
            rule.conditions.push_back(cond);
        }
    }
    if (!trim(effect_text).empty()) {
        vector<string> tokens = split_commas(effect_text);
        if (tokens.empty())
            fail(line, "malformed effect list '" + effect_text + "'");
        for (const string &token : tokens) {
            Effect effect = parse_effect(sketch, token, line);
            if (rule.effect_on(effect.feature))
                fail(line, "feature '" + sketch.features[effect.feature].name +
                               "' appears twice in the effects");
            rule.effects.push_back(effect);
        }
    }
    sketch.rules.push_back(std::move(rule));
}

} // namespace

Sketch parse_sketch(const string &text, dl::Pool &pool) {
    Sketch sketch;
    istringstream in(text);
    string raw;
    int line = 0;
    while (getline(in, raw)) {
        ++line;
        size_t hash = raw.find('#');
        if (hash != string::npos)
            raw = raw.substr(0, hash);
        string content = trim(raw);
        if (content.empty())
            continue;
        istringstream head(content);
        string keyword;
        head >> keyword;
        string rest = trim(content.substr(keyword.size()));
        if (keyword == "domain") {
            if (!is_name(rest))
                fail(line, "expected `domain <name>`");
            sketch.domain_name = rest;
        } else if (keyword == "width") {
            try {
                size_t used = 0;
                sketch.declared_width = stoi(rest, &used);
                if (used != rest.size() || sketch.declared_width < 0)
                    throw invalid_argument("");
            } catch (const exception &) {
                fail(line, "expected `width <non-negative integer>`");
            }
        } else if (keyword == "feature") {
            parse_feature_line(sketch, pool, rest, line);
        } else if (keyword == "rule") {
            parse_rule_line(sketch, rest, line);
        } else {
            fail(line, "unknown directive '" + keyword + "'");
        }
    }
    return sketch;
}

Sketch parse_sketch_file(const string &path, dl::Pool &pool) {
    ifstream in(path);
    if (!in)
        throw util::ParseError("cannot open sketch file " + path, 0, 0);
    ostringstream buffer;
    buffer << in.rdbuf();
    return parse_sketch(buffer.str(), pool);
}

} // namespace sketchplan::sketch
