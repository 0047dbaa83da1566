#include "sketchplan/search/search.hpp"

#include "sketchplan/util/error.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <unordered_set>

using namespace std;
using sketchplan::pddl::GroundTask;
using sketchplan::pddl::State;

namespace sketchplan::search {

const char *status_name(Status status) {
    switch (status) {
    case Status::Solved: return "solved";
    case Status::Exhausted: return "exhausted";
    case Status::BudgetExceeded: return "budget-exceeded";
    }
    return "?";
}

pair<double, int> effective_width_stats(const SubproblemTrace &trace) {
    if (trace.episodes.empty())
        throw runtime_error("effective_width_stats: empty trace");
    double sum = 0;
    int max_width = 0;
    for (const EpisodeRecord &e : trace.episodes) {
        sum += e.width;
        max_width = max(max_width, e.width);
    }
    return {sum / static_cast<double>(trace.episodes.size()), max_width};
}

State replay_plan(const GroundTask &task, const State &from,
                  const vector<int> &plan) {
    State s = from;
    for (size_t i = 0; i < plan.size(); ++i) {
        const pddl::GroundAction &a = task.actions[plan[i]];
        if (!task.is_applicable(a, s))
            throw runtime_error("plan step " + to_string(i) + " (" +
                                task.action_name(plan[i]) + ") is inapplicable");
        s = task.apply(a, s);
    }
    return s;
}

int novelty(NoveltyTable &table, const State &s) {
    return table.check_and_record(s);
}

namespace {

struct Node {
    State s;
    int parent;
    int action;
};

vector<int> extract_plan(const vector<Node> &nodes, int leaf, int last_action) {
    vector<int> plan;
    if (last_action >= 0)
        plan.push_back(last_action);
    for (int i = leaf; nodes[i].parent >= 0; i = nodes[i].parent)
        plan.push_back(nodes[i].action);
    reverse(plan.begin(), plan.end());
    return plan;
}

/* Saturating sum_{m<=k} C(n,m); the IW(k) expanded-node bound. */
int64_t node_bound(int n, int k) {
    constexpr int64_t kCap = INT64_MAX / 2;
    int64_t total = 0;
    int64_t term = 1;   // C(n,0)
    for (int m = 0; m <= k; ++m) {
        total += term;
        if (total >= kCap)
            return kCap;
        // C(n,m+1) = C(n,m) * (n-m) / (m+1)
        if (term > kCap / max(1, n))
            term = kCap;
        else
            term = term * (n - m) / (m + 1);
    }
    return min(total, kCap);
}

} // namespace

SearchResult bfs_optimal(const GroundTask &task, const State &root,
                         const GoalTest &goal, int64_t budget) {
    SearchResult result;
    if (goal(root)) {
        result.status = Status::Solved;
        return result;
    }

    vector<Node> nodes;
    nodes.push_back({root, -1, -1});
    unordered_set<State, pddl::StateHash> closed{root};

    for (size_t head = 0; head < nodes.size(); ++head) {
        ++result.expanded;
        // nodes[head] may be invalidated by push_back; copy the state.
        State current = nodes[head].s;
        for (auto &[action, succ] : task.successors(current)) {
            ++result.generated;
            if (goal(succ)) {
                result.status = Status::Solved;
                result.plan = extract_plan(nodes, static_cast<int>(head), action);
                return result;
            }
            if (result.generated > budget) {
                result.status = Status::BudgetExceeded;
                return result;
            }
            if (closed.insert(succ).second)
                nodes.push_back({move(succ), static_cast<int>(head), action});
        }
    }
    result.status = Status::Exhausted;
    return result;
}

SearchResult iw_k(const GroundTask &task, const State &root, const GoalTest &goal,
                  int k, int64_t budget, const IwOptions &options) {
    if (k < 0 || k > kMaxWidthCap)
        throw invalid_argument("iw_k: k out of range");
    SearchResult result;

    if (goal(root)) {
        result.status = Status::Solved;
        result.novelty_bound_ok = result.expanded <= node_bound(task.atom_count(), k);
        return result;
    }

    if (k == 0) {
        ++result.expanded;
        if (options.expanded_digests)
            options.expanded_digests->push_back(root.digest());
        for (auto &[action, succ] : task.successors(root)) {
            ++result.generated;
            if (goal(succ)) {
                result.status = Status::Solved;
                result.plan = {action};
                result.novelty_bound_ok =
                    result.expanded <= node_bound(task.atom_count(), k);
                return result;
            }
            if (result.generated > budget) {
                result.status = Status::BudgetExceeded;
                return result;
            }
        }
        result.status = Status::Exhausted;
        result.novelty_bound_ok = result.expanded <= node_bound(task.atom_count(), k);
        return result;
    }

    NoveltyTable table(k, task.atom_count());
    table.check_and_record(root);

    vector<Node> nodes;
    nodes.push_back({root, -1, -1});

    for (size_t head = 0; head < nodes.size(); ++head) {
        ++result.expanded;
        if (options.expanded_digests)
            options.expanded_digests->push_back(nodes[head].s.digest());
        State current = nodes[head].s;
        for (auto &[action, succ] : task.successors(current)) {
            ++result.generated;
            if (goal(succ)) {
                result.status = Status::Solved;
                result.plan = extract_plan(nodes, static_cast<int>(head), action);
                result.novelty_bound_ok =
                    result.expanded <= node_bound(task.atom_count(), k);
                return result;
            }
            if (result.generated > budget) {
                result.status = Status::BudgetExceeded;
                return result;
            }
            int m = options.full_scan_novelty
                        ? table.check_and_record(succ)
                        : table.check_and_record_delta(succ, current);
            if (m <= k)
                nodes.push_back({move(succ), static_cast<int>(head), action});
        }
    }
    result.status = Status::Exhausted;
    result.novelty_bound_ok = result.expanded <= node_bound(task.atom_count(), k);
    return result;
}

SearchResult iw(const GroundTask &task, const State &root, const GoalTest &goal,
                int max_k, int64_t budget, const IwOptions &options) {
    if (max_k > kMaxWidthCap)
        throw invalid_argument("iw: max_k exceeds the hard cap");
    SearchResult total;
    total.status = Status::Exhausted;
    for (int k = 0; k <= max_k; ++k) {
        int64_t remaining = budget - total.generated;
        if (remaining <= 0) {
            total.status = Status::BudgetExceeded;
            return total;
        }
        SearchResult r = iw_k(task, root, goal, k, remaining, options);
        total.expanded += r.expanded;
        total.generated += r.generated;
        total.novelty_bound_ok = total.novelty_bound_ok && r.novelty_bound_ok;
        if (r.status == Status::Solved) {
            total.status = Status::Solved;
            total.plan = move(r.plan);
            total.effective_width = k;
            return total;
        }
        if (r.status == Status::BudgetExceeded) {
            total.status = Status::BudgetExceeded;
            return total;
        }
    }
    return total;
}

namespace {

/*
  Shared episode loop of SIW and SIW_R. make_goal(s) returns the episode's
  goal test and trace id resolver, or deadend.
*/
struct Episode {
    GoalTest goal;
    function<string(const State &)> rule_id;   // id for non-top-goal terminals
};

pair<SearchResult, SubproblemTrace>
serialized_iw(const GroundTask &task, int max_k, int64_t budget,
              const IwOptions &options,
              const function<Episode(const State &)> &make_episode) {
    SearchResult total;
    SubproblemTrace trace;
    State s = task.s0;
    trace.final_digest = s.digest();

    while (!task.is_goal(s)) {
        Episode episode = make_episode(s);
        GoalTest goal = [&](const State &candidate) {
            return task.is_goal(candidate) || episode.goal(candidate);
        };
        SearchResult r = iw(task, s, goal, max_k, budget, options);
        total.expanded += r.expanded;
        total.generated += r.generated;
        total.novelty_bound_ok = total.novelty_bound_ok && r.novelty_bound_ok;
        if (r.status != Status::Solved) {
            total.status = r.status;
            return {move(total), move(trace)};
        }

        State end = replay_plan(task, s, r.plan);
        EpisodeRecord record;
        record.start_digest = s.digest();
        record.rule_id = task.is_goal(end) ? "top-goal" : episode.rule_id(end);
        record.width = *r.effective_width;
        record.plan_length = r.plan_length();
        record.expanded = r.expanded;
        record.generated = r.generated;
        record.plan_begin = total.plan_length();
        trace.episodes.push_back(move(record));

        total.plan.insert(total.plan.end(), r.plan.begin(), r.plan.end());
        s = move(end);
        trace.final_digest = s.digest();
    }
    total.status = Status::Solved;
    if (!trace.episodes.empty()) {
        auto [aw, mw] = effective_width_stats(trace);
        (void)aw;
        total.effective_width = mw;
    }
    return {move(total), move(trace)};
}

} // namespace

pair<SearchResult, SubproblemTrace> siw(const GroundTask &task, int max_k,
                                        int64_t budget, const IwOptions &options) {
    auto make_episode = [&task](const State &root) {
        int base = task.unsatisfied_goal_count(root);
        Episode episode;
        episode.goal = [&task, base](const State &candidate) {
            return task.unsatisfied_goal_count(candidate) < base;
        };
        episode.rule_id = [](const State &) { return string("goal-count"); };
        return episode;
    };
    return serialized_iw(task, max_k, budget, options, make_episode);
}

pair<SearchResult, SubproblemTrace> siwr(const GroundTask &task,
                                         SketchOracle &oracle, int max_k,
                                         int64_t budget, const IwOptions &options) {
    // Termination witness: episode roots may never repeat a feature valuation.
    auto seen_boundaries = make_shared<vector<vector<int64_t>>>();
    auto make_episode = [&task, &oracle, seen_boundaries](const State &root) {
        EpisodeGoal eg = oracle.episode_goal(root);
        if (eg.deadend)
            throw SketchDeadend(root.digest(), eg.root_valuation);
        for (const auto &key : *seen_boundaries)
            if (key == eg.valuation_key)
                throw BoundaryRepeat(root.digest(), eg.root_valuation);
        seen_boundaries->push_back(eg.valuation_key);

        Episode episode;
        auto subgoal_rule = eg.subgoal_rule;
        episode.goal = [subgoal_rule](const State &candidate) {
            return subgoal_rule(candidate).has_value();
        };
        episode.rule_id = [subgoal_rule](const State &end) {
            auto id = subgoal_rule(end);
            assert(id.has_value());
            return *id;
        };
        return episode;
    };
    return serialized_iw(task, max_k, budget, options, make_episode);
}

} // namespace sketchplan::search
