#ifndef SKETCHPLAN_TESTS_SUPPORT_H
#define SKETCHPLAN_TESTS_SUPPORT_H

#include "sketchplan/domains/domains.hpp"
#include "sketchplan/pddl/parser.hpp"
#include "sketchplan/pddl/task.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace testsupport {

inline std::string domains_dir() { return SKETCHPLAN_DOMAINS_DIR; }

inline sketchplan::pddl::GroundTask task_from_text(const std::string &domain_text,
                                                   const std::string &problem_text) {
    using namespace sketchplan::pddl;
    DomainDef domain = parse_domain(domain_text);
    ProblemDef problem = parse_problem(problem_text, domain);
    return ground(domain, problem);
}

inline sketchplan::pddl::GroundTask
make_task(const std::string &pack_id, std::uint64_t seed,
          const std::map<std::string, int> &overrides = {}) {
    using namespace sketchplan;
    const domains::DomainPack *pack = domains::find_pack(pack_id);
    domains::GenParams params = domains::default_params(*pack, seed);
    for (const auto &[name, value] : overrides)
        params.values[name] = value;
    pddl::DomainDef domain =
        pddl::parse_domain(pddl::read_file(pack->domain_file()));
    pddl::ProblemDef problem =
        pddl::parse_problem(domains::generate(*pack, params), domain);
    return pddl::ground(domain, problem);
}

inline sketchplan::pddl::GroundTask
make_micro_task(const std::string &pack_id, std::size_t index) {
    using namespace sketchplan;
    const domains::DomainPack *pack = domains::find_pack(pack_id);
    domains::GenParams params = domains::micro_suite(*pack).at(index);
    pddl::DomainDef domain =
        pddl::parse_domain(pddl::read_file(pack->domain_file()));
    pddl::ProblemDef problem =
        pddl::parse_problem(domains::generate(*pack, params), domain);
    return pddl::ground(domain, problem);
}

/* Chain task over 0-ary atoms: init p0, step_i turns p_{i-1} into p_i,
   goal p_n. Solvable only by the n-step chain; every state adds one new
   atom, so the whole family has width 1 (width 0 for n = 1). */
inline std::string chain_domain(int n) {
    std::ostringstream out;
    out << "(define (domain chain)\n  (:requirements :strips)\n  (:predicates";
    for (int i = 0; i <= n; ++i)
        out << " (p" << i << ")";
    out << ")\n";
    for (int i = 1; i <= n; ++i)
        out << "  (:action step" << i << "\n    :parameters ()\n"
            << "    :precondition (and (p" << i - 1 << "))\n"
            << "    :effect (and (p" << i << ")))\n";
    out << ")\n";
    return out.str();
}

inline std::string chain_problem(int n) {
    std::ostringstream out;
    out << "(define (problem chain-" << n << ")\n  (:domain chain)\n"
        << "  (:init (p0))\n  (:goal (p" << n << ")))\n";
    return out.str();
}

/* Four-bit binary counter: exactly one increment action applies in every
   state, so the only trajectory counts 0000 up to 1111 in 15 steps. The
   state for 11 = 1011 carries no unseen singleton or pair, which makes the
   goal unreachable for IW(2) but not for IW(3). */
inline std::string counter_domain() {
    return R"((define (domain counter4)
  (:requirements :strips :negative-preconditions)
  (:predicates (b0) (b1) (b2) (b3))
  (:action inc0
    :parameters ()
    :precondition (and (not (b0)))
    :effect (and (b0)))
  (:action inc1
    :parameters ()
    :precondition (and (b0) (not (b1)))
    :effect (and (b1) (not (b0))))
  (:action inc2
    :parameters ()
    :precondition (and (b0) (b1) (not (b2)))
    :effect (and (b2) (not (b0)) (not (b1))))
  (:action inc3
    :parameters ()
    :precondition (and (b0) (b1) (b2) (not (b3)))
    :effect (and (b3) (not (b0)) (not (b1)) (not (b2)))))
)";
}

inline std::string counter_problem() {
    return R"((define (problem counter4-up)
  (:domain counter4)
  (:init)
  (:goal (and (b0) (b1) (b2) (b3))))
)";
}

/* Applicability and successor computation straight from the ground action's
   atom-index sets, independent of GroundTask::successors. */
inline bool naive_applicable(const sketchplan::pddl::GroundAction &a,
                             const sketchplan::pddl::State &s) {
    for (int atom : a.pre_pos)
        if (!s.atoms.test(atom))
            return false;
    for (int atom : a.pre_neg)
        if (s.atoms.test(atom))
            return false;
    return true;
}

inline sketchplan::pddl::State
naive_apply(const sketchplan::pddl::GroundAction &a,
            const sketchplan::pddl::State &s) {
    sketchplan::pddl::State out = s;
    for (int atom : a.del)
        out.atoms.reset(atom);
    for (int atom : a.add)
        out.atoms.set(atom);
    return out;
}

/* Breadth-first distance to the nearest top-goal state using the naive
   successor oracle; -1 when the goal is unreachable. */
inline int naive_optimal_length(const sketchplan::pddl::GroundTask &task) {
    using namespace sketchplan::pddl;
    if (task.is_goal(task.s0))
        return 0;
    std::unordered_map<State, int, StateHash> dist{{task.s0, 0}};
    std::deque<State> open{task.s0};
    while (!open.empty()) {
        State s = open.front();
        open.pop_front();
        int d = dist.at(s);
        for (const GroundAction &a : task.actions) {
            if (!naive_applicable(a, s))
                continue;
            State succ = naive_apply(a, s);
            if (task.is_goal(succ))
                return d + 1;
            if (dist.emplace(succ, d + 1).second)
                open.push_back(succ);
        }
    }
    return -1;
}

inline std::vector<sketchplan::pddl::State>
enumerate_reachable(const sketchplan::pddl::GroundTask &task,
                    std::size_t cap = 200000) {
    using namespace sketchplan::pddl;
    std::unordered_set<State, StateHash> seen{task.s0};
    std::deque<State> open{task.s0};
    std::vector<State> out{task.s0};
    while (!open.empty()) {
        State s = open.front();
        open.pop_front();
        for (auto &[action, succ] : task.successors(s)) {
            (void)action;
            if (seen.size() >= cap)
                return out;
            if (seen.insert(succ).second) {
                out.push_back(succ);
                open.push_back(succ);
            }
        }
    }
    return out;
}

} // namespace testsupport

#endif
