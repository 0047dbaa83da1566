#include "sketchplan/sketch/semantics.hpp"

#include <sstream>

using namespace std;

namespace sketchplan::sketch {

bool condition_holds(const Sketch &sketch, const SketchRule &rule,
                     const dl::FeatureValuation &f) {
    for (const Condition &cond : rule.conditions) {
        const dl::FeatureValue &value = f.at(sketch.features[cond.feature].name);
        switch (cond.kind) {
        case ConditionKind::BoolTrue:
            if (!value.truth)
                return false;
            break;
        case ConditionKind::BoolFalse:
            if (value.truth)
                return false;
            break;
        case ConditionKind::NumZero:
            if (value.num != 0)
                return false;
            break;
        case ConditionKind::NumPositive:
            if (value.num <= 0)
                return false;
            break;
        }
    }
    return true;
}

bool pair_satisfies(const Sketch &sketch, const SketchRule &rule,
                    const dl::FeatureValuation &f,
                    const dl::FeatureValuation &f_next) {
    if (!condition_holds(sketch, rule, f))
        return false;
    for (size_t i = 0; i < sketch.features.size(); ++i) {
        const string &name = sketch.features[i].name;
        const dl::FeatureValue &before = f.at(name);
        const dl::FeatureValue &after = f_next.at(name);
        const Effect *effect = rule.effect_on(static_cast<int>(i));
        if (!effect) {
            if (before != after)
                return false;
            continue;
        }
        switch (effect->kind) {
        case EffectKind::BoolSet:
            if (!after.truth)
                return false;
            break;
        case EffectKind::BoolClear:
            if (after.truth)
                return false;
            break;
        case EffectKind::NumDec:
            if (after.num >= before.num)
                return false;
            break;
        case EffectKind::NumInc:
            if (after.num <= before.num)
                return false;
            break;
        case EffectKind::BoolAny:
        case EffectKind::NumAny:
            break;
        }
    }
    return true;
}

string valuation_to_string(const Sketch &sketch, const dl::FeatureValuation &f) {
    ostringstream out;
    out << "{";
    for (size_t i = 0; i < sketch.features.size(); ++i) {
        const string &name = sketch.features[i].name;
        if (i > 0)
            out << ", ";
        out << name << "=" << dl::value_to_string(f.at(name));
    }
    out << "}";
    return out.str();
}

SketchRunner::SketchRunner(const Sketch &sketch, const dl::Pool &pool,
                           const pddl::GroundTask &task)
    : sketch_(sketch), evaluator_(pool, task) {
    for (const dl::NamedFeature &feature : sketch_.features)
        evaluator_.check(feature.expr);
}

dl::FeatureValuation SketchRunner::valuate(const pddl::State &s) {
    return evaluator_.valuate(sketch_.features, s);
}

optional<string> SketchRunner::matching_rule(const dl::FeatureValuation &f,
                                             const pddl::State &s) {
    dl::FeatureValuation f_next = valuate(s);
    for (const SketchRule &rule : sketch_.rules)
        if (pair_satisfies(sketch_, rule, f, f_next))
            return rule.id;
    return nullopt;
}

search::EpisodeGoal SketchRunner::episode_goal(const pddl::State &root) {
    dl::FeatureValuation f = valuate(root);
    search::EpisodeGoal goal;
    goal.root_valuation = valuation_to_string(sketch_, f);
    for (const dl::NamedFeature &feature : sketch_.features) {
        const dl::FeatureValue &value = f.at(feature.name);
        goal.valuation_key.push_back(value.boolean ? (value.truth ? 1 : 0)
                                                   : value.num);
    }
    goal.deadend = true;
    for (const SketchRule &rule : sketch_.rules) {
        if (condition_holds(sketch_, rule, f)) {
            goal.deadend = false;
            break;
        }
    }
    goal.subgoal_rule = [this, f](const pddl::State &s) {
        return matching_rule(f, s);
    };
    return goal;
}

} // namespace sketchplan::sketch
