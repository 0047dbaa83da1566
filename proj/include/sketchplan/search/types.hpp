#ifndef SKETCHPLAN_SEARCH_TYPES_H
#define SKETCHPLAN_SEARCH_TYPES_H

#include "sketchplan/pddl/task.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sketchplan::search {

enum class Status { Solved, Exhausted, BudgetExceeded };

const char *status_name(Status status);

struct SearchResult {
    Status status = Status::Exhausted;
    std::vector<int> plan;   // action indices into the task's action list
    int64_t expanded = 0;
    int64_t generated = 0;
    std::optional<int> effective_width;
    /* expanded <= sum_{m<=k} C(N,m) held on every IW(k) call of this run. */
    bool novelty_bound_ok = true;

    int plan_length() const { return static_cast<int>(plan.size()); }
    bool solved() const { return status == Status::Solved; }
};

struct EpisodeRecord {
    std::string start_digest;
    std::string rule_id;      // sketch rule id, "goal-count", or "top-goal"
    int width = 0;
    int plan_length = 0;
    int64_t expanded = 0;
    int64_t generated = 0;
    int plan_begin = 0;       // offset of this episode's segment in the full plan
};

struct SubproblemTrace {
    std::vector<EpisodeRecord> episodes;
    std::string final_digest;
};

/* (AW, MW) = (mean, max) of episode widths. Throws on an empty trace. */
std::pair<double, int> effective_width_stats(const SubproblemTrace &trace);

using GoalTest = std::function<bool(const pddl::State &)>;

/*
  Per-episode subgoal interface supplied by the sketch layer. The search only
  sees a state predicate; features play no role inside the IW iterations.
*/
struct EpisodeGoal {
    /* No rule condition holds at the episode root. */
    bool deadend = false;
    /* Rendered f(root), for diagnostics. */
    std::string root_valuation;
    /* Raw feature values at the root, for boundary-repeat detection. */
    std::vector<int64_t> valuation_key;
    /* First rule (file order) satisfied by (f(root), f(s')), if any. */
    std::function<std::optional<std::string>(const pddl::State &)> subgoal_rule;
};

class SketchOracle {
public:
    virtual ~SketchOracle() = default;
    virtual EpisodeGoal episode_goal(const pddl::State &root) = 0;
};

/* SIW_R reached a non-goal state where no rule condition holds. */
class SketchDeadend : public std::runtime_error {
public:
    SketchDeadend(const std::string &digest, const std::string &valuation)
        : std::runtime_error("sketch deadend at state " + digest +
                             " with valuation " + valuation),
          digest_(digest), valuation_(valuation) {}

    const std::string &digest() const { return digest_; }
    const std::string &valuation() const { return valuation_; }

private:
    std::string digest_;
    std::string valuation_;
};

/* An SIW_R episode boundary revisited an earlier feature valuation. */
class BoundaryRepeat : public std::runtime_error {
public:
    BoundaryRepeat(const std::string &digest, const std::string &valuation)
        : std::runtime_error("repeated episode-boundary valuation " + valuation +
                             " at state " + digest) {}
};

} // namespace sketchplan::search

#endif
