#ifndef SKETCHPLAN_SEARCH_SEARCH_H
#define SKETCHPLAN_SEARCH_SEARCH_H

#include "sketchplan/search/novelty.hpp"
#include "sketchplan/search/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sketchplan::search {

inline constexpr int64_t kDefaultBudget = 1000000;   // generated nodes per IW call
inline constexpr int kMaxWidthCap = 3;

struct IwOptions {
    /* Use the full-scan novelty path instead of the incremental one. */
    bool full_scan_novelty = false;
    /* When set, digests of expanded states are appended here. */
    std::vector<std::string> *expanded_digests = nullptr;
};

/*
  Unpruned breadth-first search; the optimality oracle. Ties broken by
  generation order (FIFO layers, ascending action index), goal tested at
  generation, the root before any expansion.
*/
SearchResult bfs_optimal(const pddl::GroundTask &task, const pddl::State &root,
                         const GoalTest &goal, int64_t budget = kDefaultBudget);

/*
  Smallest m <= k such that s has an unseen m-tuple, else k+1; records all
  tuples of s. Standalone entry point over a caller-owned table (k >= 1).
*/
int novelty(NoveltyTable &table, const pddl::State &s);

/*
  IW(k). k=0 is the explicit zero-or-one-step check. For k >= 1, breadth-first
  search pruning generated states whose novelty exceeds k.
*/
SearchResult iw_k(const pddl::GroundTask &task, const pddl::State &root,
                  const GoalTest &goal, int k, int64_t budget = kDefaultBudget,
                  const IwOptions &options = {});

/* Iterated IW: iw_k for k = 0..max_k, sharing one generated-node budget. */
SearchResult iw(const pddl::GroundTask &task, const pddl::State &root,
                const GoalTest &goal, int max_k, int64_t budget = kDefaultBudget,
                const IwOptions &options = {});

/*
  Serialized IW over the task's top goal: episodes each strictly decrease the
  count of unsatisfied goal literals. The budget applies per episode.
*/
std::pair<SearchResult, SubproblemTrace>
siw(const pddl::GroundTask &task, int max_k, int64_t budget = kDefaultBudget,
    const IwOptions &options = {});

/*
  Sketch-driven SIW: episode goals are "top goal or some applicable rule's
  subgoal". Throws SketchDeadend when no rule condition holds at a non-goal
  episode root and BoundaryRepeat when an episode-boundary feature valuation
  repeats within the run.
*/
std::pair<SearchResult, SubproblemTrace>
siwr(const pddl::GroundTask &task, SketchOracle &oracle, int max_k,
     int64_t budget = kDefaultBudget, const IwOptions &options = {});

/* Replays a plan from a state; throws if some action is inapplicable. */
pddl::State replay_plan(const pddl::GroundTask &task, const pddl::State &from,
                        const std::vector<int> &plan);

} // namespace sketchplan::search

#endif
