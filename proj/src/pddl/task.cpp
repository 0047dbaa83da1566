#include "sketchplan/pddl/task.hpp"

#include "sketchplan/util/error.hpp"

#include <algorithm>
#include <map>
#include <set>

using namespace std;

namespace sketchplan::pddl {

int GroundTask::find_atom(int predicate, const vector<int> &args) const {
    GroundAtom key{predicate, args};
    auto it = lower_bound(atoms.begin(), atoms.end(), key);
    if (it == atoms.end() || !(*it == key))
        return -1;
    return static_cast<int>(it - atoms.begin());
}

string GroundTask::atom_name(int atom) const {
    const GroundAtom &a = atoms[atom];
    string out = "(" + domain.predicates[a.predicate].name;
    for (int obj : a.args)
        out += " " + problem.object_names[obj];
    return out + ")";
}

string GroundTask::action_name(int action) const {
    const GroundAction &a = actions[action];
    string out = "(" + a.name;
    for (int obj : a.args)
        out += " " + problem.object_names[obj];
    return out + ")";
}

bool GroundTask::is_applicable(const GroundAction &a, const State &s) const {
    for (int atom : a.pre_pos)
        if (!s.atoms.test(atom))
            return false;
    for (int atom : a.pre_neg)
        if (s.atoms.test(atom))
            return false;
    return true;
}

State GroundTask::apply(const GroundAction &a, const State &s) const {
    State out = s;
    for (int atom : a.del)
        out.atoms.reset(atom);
    for (int atom : a.add)
        out.atoms.set(atom);
    return out;
}

vector<pair<int, State>> GroundTask::successors(const State &s) const {
    vector<pair<int, State>> out;
    for (int idx : live_actions_) {
        const GroundAction &a = actions[idx];
        if (is_applicable(a, s))
            out.emplace_back(idx, apply(a, s));
    }
    return out;
}

bool GroundTask::is_goal(const State &s) const {
    for (int atom : goal_pos)
        if (!s.atoms.test(atom))
            return false;
    for (int atom : goal_neg)
        if (s.atoms.test(atom))
            return false;
    return true;
}

int GroundTask::unsatisfied_goal_count(const State &s) const {
    int count = 0;
    for (int atom : goal_pos)
        if (!s.atoms.test(atom))
            ++count;
    for (int atom : goal_neg)
        if (s.atoms.test(atom))
            ++count;
    return count;
}

namespace {

/* Enumerates type-consistent bindings of a schema; calls f(binding). */
template <typename F>
void enumerate_bindings(const vector<vector<int>> &objects_by_type,
                        const ActionSchema &schema, F &&f) {
    int arity = static_cast<int>(schema.param_names.size());
    vector<int> binding(arity, -1);

    auto equalities_hold = [&]() {
        for (const EqualityConstraint &eq : schema.equalities) {
            bool equal = binding[eq.left] == binding[eq.right];
            if (equal == eq.negated)
                return false;
        }
        return true;
    };

    auto rec = [&](auto &&self, int level) -> void {
        if (level == arity) {
            if (equalities_hold())
                f(binding);
            return;
        }
        for (int obj : objects_by_type[schema.param_types[level]]) {
            binding[level] = obj;
            self(self, level + 1);
        }
    };
    rec(rec, 0);
}

vector<int> sorted_unique(vector<int> v) {
    sort(v.begin(), v.end());
    v.erase(unique(v.begin(), v.end()), v.end());
    return v;
}

} // namespace

GroundTask ground(const DomainDef &domain, const ProblemDef &problem,
                  const GroundBudget &budget) {
    GroundTask task;
    task.domain = domain;
    task.problem = problem;

    int num_types = static_cast<int>(domain.types.names.size());
    int num_objects = static_cast<int>(problem.object_names.size());
    vector<vector<int>> objects_by_type(num_types);
    for (int t = 0; t < num_types; ++t)
        for (int obj = 0; obj < num_objects; ++obj)
            if (domain.types.is_subtype(problem.object_types[obj], t))
                objects_by_type[t].push_back(obj);

    // Pass 1: collect the atom universe from init, goal, and every
    // instantiated schema literal.
    set<GroundAtom> universe;
    for (const GroundLiteral &lit : problem.init)
        universe.insert({lit.predicate, lit.args});
    for (const GroundLiteral &lit : problem.goal)
        universe.insert({lit.predicate, lit.args});

    int64_t action_count = 0;
    for (const ActionSchema &schema : domain.schemas) {
        enumerate_bindings(objects_by_type, schema, [&](const vector<int> &binding) {
            ++action_count;
            if (action_count > budget.max_actions)
                throw util::ResourceError(
                    "grounding exceeds the action budget (" +
                    to_string(budget.max_actions) + ")");
            auto instantiate = [&](const SchemaLiteral &lit) {
                GroundAtom atom;
                atom.predicate = lit.predicate;
                for (int param : lit.args)
                    atom.args.push_back(binding[param]);
                universe.insert(atom);
            };
            for (const SchemaLiteral &lit : schema.preconditions)
                instantiate(lit);
            for (const SchemaLiteral &lit : schema.effects)
                instantiate(lit);
        });
    }

    task.atoms.assign(universe.begin(), universe.end());
    if (static_cast<int64_t>(task.atoms.size()) > budget.max_atoms)
        throw util::ResourceError("grounding exceeds the atom budget (" +
                                  to_string(budget.max_atoms) + ")");

    auto atom_id = [&](int predicate, const vector<int> &args) {
        int id = task.find_atom(predicate, args);
        return id;   // pass 1 guarantees presence
    };

    // Pass 2: build ground actions with final atom indices.
    for (size_t si = 0; si < domain.schemas.size(); ++si) {
        const ActionSchema &schema = domain.schemas[si];
        enumerate_bindings(objects_by_type, schema, [&](const vector<int> &binding) {
            GroundAction action;
            action.name = schema.name;
            action.schema = static_cast<int>(si);
            action.args = binding;
            vector<int> add, del;
            for (const SchemaLiteral &lit : schema.preconditions) {
                vector<int> args;
                for (int param : lit.args)
                    args.push_back(binding[param]);
                (lit.negated ? action.pre_neg : action.pre_pos)
                    .push_back(atom_id(lit.predicate, args));
            }
            for (const SchemaLiteral &lit : schema.effects) {
                vector<int> args;
                for (int param : lit.args)
                    args.push_back(binding[param]);
                (lit.negated ? del : add).push_back(atom_id(lit.predicate, args));
            }
            action.pre_pos = sorted_unique(move(action.pre_pos));
            action.pre_neg = sorted_unique(move(action.pre_neg));
            add = sorted_unique(move(add));
            del = sorted_unique(move(del));
            // Delete-then-add normalization: an atom in both sets stays added.
            vector<int> del_only;
            set_difference(del.begin(), del.end(), add.begin(), add.end(),
                           back_inserter(del_only));
            action.add = move(add);
            action.del = move(del_only);
            task.actions.push_back(move(action));
        });
    }

    int num_predicates = static_cast<int>(domain.predicates.size());
    task.predicate_static.assign(num_predicates, true);
    for (const GroundAction &a : task.actions) {
        for (int atom : a.add)
            task.predicate_static[task.atoms[atom].predicate] = false;
        for (int atom : a.del)
            task.predicate_static[task.atoms[atom].predicate] = false;
    }

    task.atoms_of_predicate.assign(num_predicates, {});
    for (int i = 0; i < task.atom_count(); ++i)
        task.atoms_of_predicate[task.atoms[i].predicate].push_back(i);

    task.s0.atoms.resize(task.atom_count());
    for (const GroundLiteral &lit : problem.init)
        task.s0.atoms.set(atom_id(lit.predicate, lit.args));

    for (const GroundLiteral &lit : problem.goal) {
        int id = atom_id(lit.predicate, lit.args);
        (lit.negated ? task.goal_neg : task.goal_pos).push_back(id);
    }
    task.goal_pos = sorted_unique(move(task.goal_pos));
    task.goal_neg = sorted_unique(move(task.goal_neg));

    // Actions whose static precondition part fails in s0 can never apply.
    for (size_t i = 0; i < task.actions.size(); ++i) {
        const GroundAction &a = task.actions[i];
        bool live = true;
        for (int atom : a.pre_pos)
            if (task.predicate_static[task.atoms[atom].predicate] &&
                !task.s0.atoms.test(atom)) {
                live = false;
                break;
            }
        if (live)
            for (int atom : a.pre_neg)
                if (task.predicate_static[task.atoms[atom].predicate] &&
                    task.s0.atoms.test(atom)) {
                    live = false;
                    break;
                }
        if (live)
            task.live_actions_.push_back(static_cast<int>(i));
    }

    return task;
}

} // namespace sketchplan::pddl
