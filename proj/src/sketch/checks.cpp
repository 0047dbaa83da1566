#include "sketchplan/sketch/checks.hpp"

#include "sketchplan/dl/eval.hpp"
#include "sketchplan/util/error.hpp"

#include <deque>
#include <optional>
#include <sstream>
#include <unordered_set>

using namespace std;

namespace sketchplan::sketch {

vector<string> TerminationReport::elimination_order() const {
    vector<string> order;
    for (const TerminationStep &step : steps)
        order.push_back(step.rule_id);
    return order;
}

namespace {

bool has_effect(const SketchRule &rule, int feature, EffectKind kind) {
    const Effect *e = rule.effect_on(feature);
    return e && e->kind == kind;
}

/* +1 if the rule flips b from false to true (!b in C, b in E), -1 for the
   reverse, 0 if the rule does not change b in the literal C/E sense. */
int bool_change_direction(const SketchRule &rule, int feature) {
    const Condition *c = rule.condition_on(feature);
    const Effect *e = rule.effect_on(feature);
    if (!c || !e)
        return 0;
    if (c->kind == ConditionKind::BoolFalse && e->kind == EffectKind::BoolSet)
        return 1;
    if (c->kind == ConditionKind::BoolTrue && e->kind == EffectKind::BoolClear)
        return -1;
    return 0;
}

bool opposes_numeric(const SketchRule &other, int feature) {
    return has_effect(other, feature, EffectKind::NumInc) ||
           has_effect(other, feature, EffectKind::NumAny);
}

bool opposes_bool(const SketchRule &other, int feature, int direction) {
    return bool_change_direction(other, feature) == -direction ||
           has_effect(other, feature, EffectKind::BoolAny);
}

bool conditions_complementary(ConditionKind a, ConditionKind b) {
    return (a == ConditionKind::BoolTrue && b == ConditionKind::BoolFalse) ||
           (a == ConditionKind::BoolFalse && b == ConditionKind::BoolTrue) ||
           (a == ConditionKind::NumZero && b == ConditionKind::NumPositive) ||
           (a == ConditionKind::NumPositive && b == ConditionKind::NumZero);
}

/* Some already-marked feature carries complementary conditions in both rules. */
bool separated_on_marked(const Sketch &sketch, const SketchRule &rule,
                         const SketchRule &other, const vector<bool> &marked) {
    for (size_t m = 0; m < sketch.features.size(); ++m) {
        if (!marked[m])
            continue;
        const Condition *mine = rule.condition_on(static_cast<int>(m));
        const Condition *theirs = other.condition_on(static_cast<int>(m));
        if (mine && theirs && conditions_complementary(mine->kind, theirs->kind))
            return true;
    }
    return false;
}

vector<int> case_a_witnesses(const Sketch &sketch, int candidate,
                             const vector<int> &remaining) {
    const SketchRule &rule = sketch.rules[candidate];
    vector<int> witnesses;
    for (const Effect &e : rule.effects) {
        if (e.kind != EffectKind::NumDec)
            continue;
        bool blocked = false;
        for (int other : remaining) {
            if (other == candidate)
                continue;
            if (opposes_numeric(sketch.rules[other], e.feature)) {
                blocked = true;
                break;
            }
        }
        if (!blocked)
            witnesses.push_back(e.feature);
    }
    return witnesses;
}

vector<int> case_b_witnesses(const Sketch &sketch, int candidate,
                             const vector<int> &remaining) {
    const SketchRule &rule = sketch.rules[candidate];
    vector<int> witnesses;
    for (size_t b = 0; b < sketch.features.size(); ++b) {
        int direction = bool_change_direction(rule, static_cast<int>(b));
        if (direction == 0)
            continue;
        bool blocked = false;
        for (int other : remaining) {
            if (other == candidate)
                continue;
            if (opposes_bool(sketch.rules[other], static_cast<int>(b),
                             direction)) {
                blocked = true;
                break;
            }
        }
        if (!blocked)
            witnesses.push_back(static_cast<int>(b));
    }
    return witnesses;
}

bool case_d_fires(const Sketch &sketch, int candidate,
                  const vector<int> &remaining, const vector<bool> &marked) {
    const SketchRule &rule = sketch.rules[candidate];
    for (size_t x = 0; x < sketch.features.size(); ++x) {
        int feature = static_cast<int>(x);
        bool numeric_dec = has_effect(rule, feature, EffectKind::NumDec);
        int direction = bool_change_direction(rule, feature);
        if (!numeric_dec && direction == 0)
            continue;
        bool all_separated = true;
        for (int other : remaining) {
            if (other == candidate)
                continue;
            const SketchRule &other_rule = sketch.rules[other];
            bool opposes = numeric_dec
                               ? opposes_numeric(other_rule, feature)
                               : opposes_bool(other_rule, feature, direction);
            if (!opposes)
                continue;
            if (!separated_on_marked(sketch, rule, other_rule, marked)) {
                all_separated = false;
                break;
            }
        }
        if (all_separated)
            return true;
    }
    return false;
}

struct Elimination {
    int rule = -1;
    char tag = 'a';
    vector<int> witnesses;
};

optional<Elimination> find_elimination(const Sketch &sketch,
                                       const vector<int> &remaining,
                                       const vector<bool> &marked) {
    for (int candidate : remaining) {
        vector<int> witnesses = case_a_witnesses(sketch, candidate, remaining);
        if (!witnesses.empty())
            return Elimination{candidate, 'a', std::move(witnesses)};
    }
    for (int candidate : remaining) {
        vector<int> witnesses = case_b_witnesses(sketch, candidate, remaining);
        if (!witnesses.empty())
            return Elimination{candidate, 'b', std::move(witnesses)};
    }
    for (int candidate : remaining) {
        if (case_d_fires(sketch, candidate, remaining, marked))
            return Elimination{candidate, 'd', {}};
    }
    return nullopt;
}

} // namespace

TerminationReport check_termination(const Sketch &sketch) {
    TerminationReport report;
    vector<int> remaining;
    for (size_t i = 0; i < sketch.rules.size(); ++i)
        remaining.push_back(static_cast<int>(i));
    vector<bool> marked(sketch.features.size(), false);

    while (!remaining.empty()) {
        optional<Elimination> elim = find_elimination(sketch, remaining, marked);
        if (!elim) {
            report.verdict = TerminationVerdict::Unknown;
            for (int idx : remaining)
                report.stuck_rules.push_back(sketch.rules[idx].id);
            return report;
        }
        TerminationStep step;
        step.rule_id = sketch.rules[elim->rule].id;
        step.case_tag = elim->tag;
        for (int witness : elim->witnesses) {
            step.marked.push_back(sketch.features[witness].name);
            if (!marked[witness]) {
                marked[witness] = true;
                report.marked_features.push_back(sketch.features[witness].name);
            }
        }
        report.steps.push_back(std::move(step));
        erase(remaining, elim->rule);
    }
    report.verdict = TerminationVerdict::Terminating;
    return report;
}

namespace {

string projection_to_string(const map<string, bool> &b) {
    ostringstream out;
    out << "{";
    bool first = true;
    for (const auto &[name, truth] : b) {
        if (!first)
            out << ", ";
        first = false;
        out << name << "=" << (truth ? "true" : "false");
    }
    out << "}";
    return out.str();
}

string state_summary(const pddl::GroundTask &task, const pddl::State &s) {
    ostringstream out;
    int listed = 0;
    util::for_each_bit(s.atoms, [&](size_t atom) {
        if (listed == 20) {
            out << " ...";
            ++listed;
            return;
        }
        if (listed > 20)
            return;
        if (listed > 0)
            out << " ";
        out << task.atom_name(static_cast<int>(atom));
        ++listed;
    });
    return out.str();
}

} // namespace

string GoalSeparationReport::goal_valuations_to_string() const {
    ostringstream out;
    for (size_t i = 0; i < goal_valuations.size(); ++i) {
        if (i > 0)
            out << "; ";
        out << projection_to_string(goal_valuations[i]);
    }
    return out.str();
}

GoalSeparationReport check_goal_separation(
    const Sketch &sketch, const dl::Pool &pool,
    const vector<const pddl::GroundTask *> &tasks, int64_t max_states) {
    struct Observed {
        map<string, bool> valuation;
        bool at_goal = false;
        bool at_non_goal = false;
        string witness;
    };
    map<string, Observed> observed;
    GoalSeparationReport report;

    for (size_t ti = 0; ti < tasks.size(); ++ti) {
        const pddl::GroundTask &task = *tasks[ti];
        dl::Evaluator evaluator(pool, task);
        for (const dl::NamedFeature &feature : sketch.features)
            evaluator.check(feature.expr);

        unordered_set<pddl::State, pddl::StateHash> visited;
        deque<pddl::State> queue;
        visited.insert(task.s0);
        queue.push_back(task.s0);
        while (!queue.empty()) {
            pddl::State s = queue.front();
            queue.pop_front();
            ++report.states_examined;

            dl::FeatureValuation f = evaluator.valuate(sketch.features, s);
            map<string, bool> b = dl::boolean_projection(f);
            string key = projection_to_string(b);
            Observed &entry = observed[key];
            entry.valuation = b;
            if (task.is_goal(s)) {
                entry.at_goal = true;
            } else if (!entry.at_non_goal) {
                entry.at_non_goal = true;
                entry.witness = "task " + to_string(ti + 1) + ", state " +
                                s.digest() + " [" + state_summary(task, s) +
                                "] with projected valuation " + key;
            }

            for (const auto &[action, successor] : task.successors(s)) {
                (void)action;
                if (visited.contains(successor))
                    continue;
                if (static_cast<int64_t>(visited.size()) >= max_states)
                    throw util::ResourceError(
                        "goal-separation enumeration exceeded " +
                        to_string(max_states) + " states on task " +
                        to_string(ti + 1));
                visited.insert(successor);
                queue.push_back(successor);
            }
        }
    }

    report.separated = true;
    for (const auto &[key, entry] : observed) {
        (void)key;
        if (entry.at_goal)
            report.goal_valuations.push_back(entry.valuation);
        if (entry.at_goal && entry.at_non_goal && report.separated) {
            report.separated = false;
            report.witness = entry.witness;
        }
    }
    return report;
}

WellFormedReport check_well_formed(const Sketch &sketch, const dl::Pool &pool,
                                   const vector<const pddl::GroundTask *> &tasks,
                                   int64_t max_states) {
    WellFormedReport report;
    report.termination = check_termination(sketch);
    if (!report.termination.terminating()) {
        ostringstream warning;
        warning << "termination unknown: no elimination case applies to";
        for (const string &id : report.termination.stuck_rules)
            warning << " " << id;
        report.warnings.push_back(warning.str());
    }
    report.separation = check_goal_separation(sketch, pool, tasks, max_states);
    if (!report.separation.separated)
        report.warnings.push_back("goal separation violated: " +
                                  report.separation.witness);
    return report;
}

} // namespace sketchplan::sketch
