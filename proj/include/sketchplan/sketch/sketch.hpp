#ifndef SKETCHPLAN_SKETCH_SKETCH_H
#define SKETCHPLAN_SKETCH_SKETCH_H

#include "sketchplan/dl/eval.hpp"
#include "sketchplan/dl/expr.hpp"

#include <string>
#include <vector>

namespace sketchplan::sketch {

/* Condition forms over a single feature: p, !p, n=0, n>0. */
enum class ConditionKind { BoolTrue, BoolFalse, NumZero, NumPositive };

/*
  Effect forms. BoolAny/NumAny ("<name>?" in the DSL) allow the feature to
  take any value in the successor valuation; Dec/Inc are strict under the
  extended order where infinity is larger than every integer.
*/
enum class EffectKind { BoolSet, BoolClear, BoolAny, NumDec, NumInc, NumAny };

struct Condition {
    int feature = -1;   // index into Sketch::features
    ConditionKind kind = ConditionKind::BoolTrue;
};

struct Effect {
    int feature = -1;
    EffectKind kind = EffectKind::BoolAny;
};

/* One rule C -> E. A feature appears at most once per side. */
struct SketchRule {
    std::string id;   // assigned r1, r2, ... in file order
    std::vector<Condition> conditions;
    std::vector<Effect> effects;

    const Condition *condition_on(int feature) const;
    const Effect *effect_on(int feature) const;
};

struct Sketch {
    std::string domain_name;   // empty unless the file carries a `domain` line
    int declared_width = -1;   // -1 unless the file carries a `width` line
    std::vector<dl::NamedFeature> features;
    std::vector<SketchRule> rules;

    int find_feature(const std::string &name) const;   // -1 if absent
    bool feature_is_boolean(int feature) const;
    std::string rule_to_string(const SketchRule &rule) const;
};

/*
  Line-oriented sketch DSL. `#` starts a comment; blank lines are skipped.

    domain <name>                          optional metadata
    width <k>                              optional declared width
    feature <name> : bool|num := <expr>    <expr> in the feature grammar
    rule { <cond>, ... } -> { <effect>, ... }

  Conditions: `p`, `!p` (Boolean), `n=0`, `n>0` (numerical).
  Effects: `p`, `!p`, `p?` (Boolean), `n++`, `n--`, `n?` (numerical).
  The declared bool/num tag must match the expression's kind, rules may only
  use declared features, and duplicate features per rule side are rejected.
*/
Sketch parse_sketch(const std::string &text, dl::Pool &pool);
Sketch parse_sketch_file(const std::string &path, dl::Pool &pool);

} // namespace sketchplan::sketch

#endif
