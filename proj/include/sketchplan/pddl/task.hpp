#ifndef SKETCHPLAN_PDDL_TASK_H
#define SKETCHPLAN_PDDL_TASK_H

#include "sketchplan/pddl/model.hpp"
#include "sketchplan/util/bits.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sketchplan::pddl {

struct GroundAtom {
    int predicate = -1;
    std::vector<int> args;   // object indices

    auto operator<=>(const GroundAtom &) const = default;
};

/* Set of true atoms over the task's dense atom indexing. */
struct State {
    util::Bitset atoms;

    bool contains(int atom) const { return atoms.test(atom); }
    bool operator==(const State &other) const { return atoms == other.atoms; }
    uint64_t hash() const { return util::hash_bits(atoms); }
    std::string digest() const { return util::hex_digest(atoms); }
};

struct StateHash {
    size_t operator()(const State &s) const { return s.hash(); }
};

struct GroundAction {
    std::string name;            // "(name arg ...)" rendering is via GroundTask
    int schema = -1;
    std::vector<int> args;       // object indices
    std::vector<int> pre_pos;    // sorted atom indices
    std::vector<int> pre_neg;
    std::vector<int> add;        // normalized: add and del are disjoint
    std::vector<int> del;
};

struct GroundBudget {
    int64_t max_atoms = 200000;
    int64_t max_actions = 500000;
};

class GroundTask {
public:
    DomainDef domain;
    ProblemDef problem;

    std::vector<GroundAtom> atoms;
    std::vector<GroundAction> actions;
    State s0;
    std::vector<int> goal_pos;
    std::vector<int> goal_neg;

    /* True for predicates never added or deleted by any ground action. */
    std::vector<bool> predicate_static;
    /* Per predicate: (atom index, atom) pairs, ascending by atom index. */
    std::vector<std::vector<int>> atoms_of_predicate;

    int atom_count() const { return static_cast<int>(atoms.size()); }
    int object_count() const { return static_cast<int>(problem.object_names.size()); }

    int find_atom(int predicate, const std::vector<int> &args) const;
    std::string atom_name(int atom) const;
    std::string action_name(int action) const;

    bool is_applicable(const GroundAction &a, const State &s) const;
    State apply(const GroundAction &a, const State &s) const;

    /*
      Applicable (action index, successor) pairs in ascending action index.
      Iterates only actions whose static precondition part holds in s0;
      the remaining ones can never become applicable.
    */
    std::vector<std::pair<int, State>> successors(const State &s) const;

    bool is_goal(const State &s) const;

    /* Number of unsatisfied top-goal literals (#g). */
    int unsatisfied_goal_count(const State &s) const;

    bool goal_ignores_negatives() const { return goal_neg.empty(); }

private:
    friend GroundTask ground(const DomainDef &, const ProblemDef &, const GroundBudget &);

    std::vector<int> live_actions_;
};

GroundTask ground(const DomainDef &domain, const ProblemDef &problem,
                  const GroundBudget &budget = {});

} // namespace sketchplan::pddl

#endif
