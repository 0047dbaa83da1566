#ifndef SKETCHPLAN_SKETCH_CHECKS_H
#define SKETCHPLAN_SKETCH_CHECKS_H

#include "sketchplan/pddl/task.hpp"
#include "sketchplan/sketch/sketch.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sketchplan::sketch {

enum class TerminationVerdict { Terminating, Unknown };

struct TerminationStep {
    std::string rule_id;
    /* 'a' numerical decrement nobody re-increases, 'b' Boolean change nobody
       opposes, 'd' every opposing rule is condition-separated on a feature
       marked earlier. */
    char case_tag = 'a';
    /* Features marked by this elimination ('a'/'b' only). */
    std::vector<std::string> marked;
};

struct TerminationReport {
    TerminationVerdict verdict = TerminationVerdict::Unknown;
    std::vector<TerminationStep> steps;
    std::vector<std::string> marked_features;
    /* Rules left when no elimination case fires (empty iff terminating). */
    std::vector<std::string> stuck_rules;

    bool terminating() const {
        return verdict == TerminationVerdict::Terminating;
    }
    std::vector<std::string> elimination_order() const;
};

/*
  Syntactic termination check. Repeatedly eliminates rules:
    (a) a rule decrementing a numerical feature that no other remaining rule
        increments or may change (`n++`/`n?`), marking that feature;
    (b) a rule changing a Boolean b (b in C and !b in E, or vice versa) that
        no other remaining rule changes oppositely or may change (`b?`),
        marking that feature;
    (d) a rule with a decrement or Boolean change all of whose opposing
        remaining rules carry a condition complementary to one of the rule's
        own conditions on some already-marked feature.
  Each pass scans the remaining rules in file order trying (a), then (b),
  then (d), eliminates the first rule that fires, and restarts. The check is
  sound but not complete: `Unknown` means no case fired, not a proof of
  non-termination.
*/
TerminationReport check_termination(const Sketch &sketch);

struct GoalSeparationReport {
    bool separated = false;
    /* Boolean valuations observed at goal states across all tasks. */
    std::vector<std::map<std::string, bool>> goal_valuations;
    /* On failure: a non-goal state whose Boolean valuation matches a goal. */
    std::string witness;
    std::int64_t states_examined = 0;

    std::string goal_valuations_to_string() const;
};

/*
  Enumerates every reachable state of each task, projects the feature
  valuation to Booleans, and verifies that goal membership depends only on
  that projection: no non-goal state may share a projected valuation with any
  goal state (across tasks). Throws util::ResourceError if a task has more
  than max_states reachable states.
*/
GoalSeparationReport check_goal_separation(
    const Sketch &sketch, const dl::Pool &pool,
    const std::vector<const pddl::GroundTask *> &tasks,
    std::int64_t max_states = 200000);

struct WellFormedReport {
    TerminationReport termination;
    GoalSeparationReport separation;
    std::vector<std::string> warnings;

    /* Strict mode also rejects an Unknown termination verdict. */
    bool accepted(bool strict) const {
        if (!separation.separated)
            return false;
        return termination.terminating() || !strict;
    }
};

WellFormedReport check_well_formed(
    const Sketch &sketch, const dl::Pool &pool,
    const std::vector<const pddl::GroundTask *> &tasks,
    std::int64_t max_states = 200000);

} // namespace sketchplan::sketch

#endif
