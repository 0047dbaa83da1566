#ifndef SKETCHPLAN_SKETCH_SEMANTICS_H
#define SKETCHPLAN_SKETCH_SEMANTICS_H

#include "sketchplan/dl/eval.hpp"
#include "sketchplan/pddl/task.hpp"
#include "sketchplan/search/types.hpp"
#include "sketchplan/sketch/sketch.hpp"

#include <optional>
#include <string>

namespace sketchplan::sketch {

/* C true in f. Numerical comparisons use the extended order, so n>0 holds
   for an infinite value and n=0 does not. */
bool condition_holds(const Sketch &sketch, const SketchRule &rule,
                     const dl::FeatureValuation &f);

/*
  True iff the rule licenses the valuation change from f to f_next: the
  condition holds in f, Boolean set/clear effects hold in f_next, decrements
  and increments are strict, `?` effects are unconstrained, and every feature
  the effects do not mention keeps its value.
*/
bool pair_satisfies(const Sketch &sketch, const SketchRule &rule,
                    const dl::FeatureValuation &f,
                    const dl::FeatureValuation &f_next);

std::string valuation_to_string(const Sketch &sketch,
                                const dl::FeatureValuation &f);

/*
  Binds a sketch to one ground task and serves per-episode subgoal tests to
  the serialized search. The embedded evaluator caches per state, so each
  concurrent search needs its own runner.
*/
class SketchRunner : public search::SketchOracle {
public:
    SketchRunner(const Sketch &sketch, const dl::Pool &pool,
                 const pddl::GroundTask &task);

    search::EpisodeGoal episode_goal(const pddl::State &root) override;

    dl::FeatureValuation valuate(const pddl::State &s);

    /* First rule (file order) satisfied by (f, f(s)), if any. */
    std::optional<std::string> matching_rule(const dl::FeatureValuation &f,
                                             const pddl::State &s);

    const Sketch &sketch() const { return sketch_; }
    dl::Evaluator &evaluator() { return evaluator_; }

private:
    const Sketch &sketch_;
    dl::Evaluator evaluator_;
};

} // namespace sketchplan::sketch

#endif
