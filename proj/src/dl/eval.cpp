#include "sketchplan/dl/eval.hpp"

#include "sketchplan/util/error.hpp"

#include <algorithm>
#include <set>

using namespace std;
using sketchplan::pddl::GroundTask;
using sketchplan::pddl::State;
using sketchplan::util::Bitset;
using sketchplan::util::TypeError;

namespace sketchplan::dl {

string value_to_string(const FeatureValue &value) {
    if (value.boolean)
        return value.truth ? "true" : "false";
    if (value.num == kInfinity)
        return "inf";
    return to_string(value.num);
}

map<string, bool> boolean_projection(const FeatureValuation &f) {
    map<string, bool> b;
    for (const auto &[name, value] : f) {
        if (value.boolean)
            b.emplace(name, value.truth);
        else
            b.emplace(name, value.num == 0);
    }
    return b;
}

size_t RoleDen::pair_count() const {
    size_t total = 0;
    for (const Bitset &row : rows)
        total += row.count();
    return total;
}

namespace {
size_t words(int bits) { return static_cast<size_t>(bits) / 64 + 1; }
} // namespace

Evaluator::Evaluator(const Pool &pool, const GroundTask &task)
    : pool_(pool), task_(task), num_objects_(task.object_count()) {
    static_subtree_.assign(pool_.size(), 0);
    checked_.assign(pool_.size(), 0);
}

bool Evaluator::is_static_subtree(int id) const {
    return static_subtree_[id] != 0;
}

void Evaluator::check(int expr_id) {
    if (expr_id < 0 || expr_id >= pool_.size())
        throw TypeError("expression id out of range");
    if (expr_id < static_cast<int>(checked_.size()) && checked_[expr_id])
        return;
    if (pool_.size() > static_cast<int>(checked_.size())) {
        checked_.resize(pool_.size(), 0);
        static_subtree_.resize(pool_.size(), 0);
    }
    const Node &n = pool_.node(expr_id);
    bool is_static = false;
    switch (n.kind) {
    case NodeKind::CPrimitive:
    case NodeKind::RPrimitive: {
        int pred = task_.domain.find_predicate(n.predicate);
        if (pred < 0)
            throw TypeError("unknown predicate '" + n.predicate + "'");
        int arity = static_cast<int>(task_.domain.predicates[pred].param_types.size());
        if (n.i >= arity || n.j >= arity)
            throw TypeError("projection index out of range for '" + n.predicate +
                            "' (arity " + to_string(arity) + ")");
        is_static = task_.predicate_static[pred];
        break;
    }
    case NodeKind::Nominal: {
        if (task_.problem.find_object(n.object) < 0)
            throw TypeError("unknown object '" + n.object + "'");
        is_static = true;
        break;
    }
    case NodeKind::Top:
    case NodeKind::Bot:
        is_static = true;
        break;
    case NodeKind::CGoal:
    case NodeKind::RGoal: {
        check(n.child0);
        // Everything under goal() is state independent, but the wrapped
        // predicates must actually occur in the goal.
        set<int> goal_preds;
        for (int atom_id : task_.goal_pos)
            goal_preds.insert(task_.atoms[atom_id].predicate);
        vector<int> stack{n.child0};
        while (!stack.empty()) {
            const Node &m = pool_.node(stack.back());
            stack.pop_back();
            if (m.kind == NodeKind::CPrimitive || m.kind == NodeKind::RPrimitive) {
                int pred = task_.domain.find_predicate(m.predicate);
                if (!goal_preds.count(pred))
                    throw TypeError("goal() wraps predicate '" + m.predicate +
                                    "' which does not occur in the goal");
            }
            if (m.child0 >= 0)
                stack.push_back(m.child0);
            if (m.child1 >= 0)
                stack.push_back(m.child1);
        }
        is_static = true;
        break;
    }
    default:
        check(n.child0);
        is_static = static_subtree_[n.child0];
        if (n.child1 >= 0) {
            check(n.child1);
            is_static = is_static && static_subtree_[n.child1];
        }
        break;
    }
    static_subtree_[expr_id] = is_static ? 1 : 0;
    checked_[expr_id] = 1;
}

void Evaluator::check(const FeatureExpr &feature) {
    auto check_role = [&](int id, const char *where) {
        check(id);
        if (!pool_.is_role(id))
            throw TypeError(string(where) + ": expected a role");
    };
    switch (feature.kind) {
    case FeatureKind::Empty:
    case FeatureKind::Nonempty:
    case FeatureKind::Count:
        check(feature.x0);
        break;
    case FeatureKind::ConceptDist:
        check(feature.x0);
        if (pool_.is_role(feature.x0))
            throw TypeError("concept_dist: first argument must be a concept");
        check_role(feature.x1, "concept_dist");
        check(feature.x2);
        if (pool_.is_role(feature.x2))
            throw TypeError("concept_dist: third argument must be a concept");
        break;
    case FeatureKind::RoleDist:
        check_role(feature.x0, "role_dist");
        check_role(feature.x1, "role_dist");
        check_role(feature.x2, "role_dist");
        break;
    case FeatureKind::SumRoleDist:
        check_role(feature.x0, "sum_role_dist");
        check_role(feature.x1, "sum_role_dist");
        check_role(feature.x2, "sum_role_dist");
        break;
    case FeatureKind::GoalCount:
        break;
    }
}

void Evaluator::begin_state(const State &s) {
    if (current_ && *current_ == s)
        return;
    state_cache_.clear();
    owned_state_ = s;
    current_ = &owned_state_;
}

bool Evaluator::atom_holds(int atom_id, bool in_goal) const {
    if (in_goal)
        return binary_search(task_.goal_pos.begin(), task_.goal_pos.end(), atom_id);
    return current_->contains(atom_id);
}

ConceptDen Evaluator::primitive_concept(const Node &n, bool in_goal) {
    ConceptDen den;
    den.objects.resize(num_objects_);
    int pred = task_.domain.find_predicate(n.predicate);
    for (int atom_id : task_.atoms_of_predicate[pred]) {
        ops_ += 1;
        if (atom_holds(atom_id, in_goal))
            den.objects.set(task_.atoms[atom_id].args[n.i]);
    }
    return den;
}

RoleDen Evaluator::primitive_role(const Node &n, bool in_goal) {
    RoleDen den;
    den.rows.assign(num_objects_, Bitset(num_objects_));
    int pred = task_.domain.find_predicate(n.predicate);
    for (int atom_id : task_.atoms_of_predicate[pred]) {
        ops_ += 1;
        if (atom_holds(atom_id, in_goal)) {
            const auto &args = task_.atoms[atom_id].args;
            den.rows[args[n.i]].set(args[n.j]);
        }
    }
    return den;
}

ConceptDen Evaluator::eval_concept_node(const Node &n, bool in_goal) {
    const int nobj = num_objects_;
    ConceptDen den;
    den.objects.resize(nobj);
    switch (n.kind) {
    case NodeKind::CPrimitive:
        return primitive_concept(n, in_goal);
    case NodeKind::Top:
        den.objects.set();
        ops_ += words(nobj);
        break;
    case NodeKind::Bot:
        break;
    case NodeKind::CUnion:
        den.objects = evaluate(n.child0, in_goal).c.objects |
                      evaluate(n.child1, in_goal).c.objects;
        ops_ += words(nobj);
        break;
    case NodeKind::CIntersection:
        den.objects = evaluate(n.child0, in_goal).c.objects &
                      evaluate(n.child1, in_goal).c.objects;
        ops_ += words(nobj);
        break;
    case NodeKind::CNot:
        den.objects = ~evaluate(n.child0, in_goal).c.objects;
        ops_ += words(nobj);
        break;
    case NodeKind::CDiff:
        den.objects = evaluate(n.child0, in_goal).c.objects -
                      evaluate(n.child1, in_goal).c.objects;
        ops_ += words(nobj);
        break;
    case NodeKind::Some: {
        const RoleDen &r = evaluate(n.child0, in_goal).r;
        const ConceptDen &c = evaluate(n.child1, in_goal).c;
        for (int a = 0; a < nobj; ++a) {
            ops_ += words(nobj);
            if (r.rows[a].intersects(c.objects))
                den.objects.set(a);
        }
        break;
    }
    case NodeKind::All: {
        const RoleDen &r = evaluate(n.child0, in_goal).r;
        const ConceptDen &c = evaluate(n.child1, in_goal).c;
        for (int a = 0; a < nobj; ++a) {
            ops_ += words(nobj);
            if (r.rows[a].is_subset_of(c.objects))
                den.objects.set(a);
        }
        break;
    }
    case NodeKind::Nominal:
        den.objects.set(task_.problem.find_object(n.object));
        ops_ += 1;
        break;
    case NodeKind::RvmEqual: {
        const RoleDen &r = evaluate(n.child0, in_goal).r;
        const RoleDen &s = evaluate(n.child1, in_goal).r;
        for (int a = 0; a < nobj; ++a) {
            ops_ += words(nobj);
            if (r.rows[a] == s.rows[a])
                den.objects.set(a);
        }
        break;
    }
    case NodeKind::RvmSubset: {
        const RoleDen &r = evaluate(n.child0, in_goal).r;
        const RoleDen &s = evaluate(n.child1, in_goal).r;
        for (int a = 0; a < nobj; ++a) {
            ops_ += words(nobj);
            if (r.rows[a].is_subset_of(s.rows[a]))
                den.objects.set(a);
        }
        break;
    }
    case NodeKind::Extract: {
        const RoleDen &r = evaluate(n.child0, in_goal).r;
        if (n.i == 0) {
            for (int a = 0; a < nobj; ++a) {
                ops_ += words(nobj);
                if (r.rows[a].any())
                    den.objects.set(a);
            }
        } else {
            for (int a = 0; a < nobj; ++a) {
                ops_ += words(nobj);
                den.objects |= r.rows[a];
            }
        }
        break;
    }
    case NodeKind::CGoal:
        return evaluate(n.child0, true).c;
    default:
        throw TypeError("not a concept node");
    }
    return den;
}

RoleDen Evaluator::eval_role_node(const Node &n, bool in_goal) {
    const int nobj = num_objects_;
    RoleDen den;
    den.rows.assign(nobj, Bitset(nobj));
    switch (n.kind) {
    case NodeKind::RPrimitive:
        return primitive_role(n, in_goal);
    case NodeKind::RUnion: {
        const RoleDen &r = evaluate(n.child0, in_goal).r;
        const RoleDen &s = evaluate(n.child1, in_goal).r;
        for (int a = 0; a < nobj; ++a) {
            den.rows[a] = r.rows[a] | s.rows[a];
            ops_ += words(nobj);
        }
        break;
    }
    case NodeKind::RIntersection: {
        const RoleDen &r = evaluate(n.child0, in_goal).r;
        const RoleDen &s = evaluate(n.child1, in_goal).r;
        for (int a = 0; a < nobj; ++a) {
            den.rows[a] = r.rows[a] & s.rows[a];
            ops_ += words(nobj);
        }
        break;
    }
    case NodeKind::RNot: {
        const RoleDen &r = evaluate(n.child0, in_goal).r;
        for (int a = 0; a < nobj; ++a) {
            den.rows[a] = ~r.rows[a];
            ops_ += words(nobj);
        }
        break;
    }
    case NodeKind::RDiff: {
        const RoleDen &r = evaluate(n.child0, in_goal).r;
        const RoleDen &s = evaluate(n.child1, in_goal).r;
        for (int a = 0; a < nobj; ++a) {
            den.rows[a] = r.rows[a] - s.rows[a];
            ops_ += words(nobj);
        }
        break;
    }
    case NodeKind::Compose: {
        const RoleDen &r = evaluate(n.child0, in_goal).r;
        const RoleDen &s = evaluate(n.child1, in_goal).r;
        for (int a = 0; a < nobj; ++a) {
            util::for_each_bit(r.rows[a], [&](size_t b) {
                den.rows[a] |= s.rows[b];
                ops_ += words(nobj);
            });
        }
        break;
    }
    case NodeKind::Inverse: {
        const RoleDen &r = evaluate(n.child0, in_goal).r;
        for (int a = 0; a < nobj; ++a) {
            util::for_each_bit(r.rows[a], [&](size_t b) {
                den.rows[b].set(a);
                ops_ += 1;
            });
        }
        break;
    }
    case NodeKind::TClosure:
    case NodeKind::RTClosure: {
        den = evaluate(n.child0, in_goal).r;
        for (int k = 0; k < nobj; ++k) {
            for (int a = 0; a < nobj; ++a) {
                if (den.rows[a].test(k)) {
                    den.rows[a] |= den.rows[k];
                    ops_ += words(nobj);
                }
            }
        }
        if (n.kind == NodeKind::RTClosure) {
            for (int a = 0; a < nobj; ++a)
                den.rows[a].set(a);
            ops_ += nobj;
        }
        break;
    }
    case NodeKind::Restrict: {
        const RoleDen &r = evaluate(n.child0, in_goal).r;
        const ConceptDen &c = evaluate(n.child1, in_goal).c;
        for (int a = 0; a < nobj; ++a) {
            den.rows[a] = r.rows[a] & c.objects;
            ops_ += words(nobj);
        }
        break;
    }
    case NodeKind::Identity: {
        const ConceptDen &c = evaluate(n.child0, in_goal).c;
        util::for_each_bit(c.objects, [&](size_t a) {
            den.rows[a].set(a);
            ops_ += 1;
        });
        break;
    }
    case NodeKind::RGoal:
        return evaluate(n.child0, true).r;
    default:
        throw TypeError("not a role node");
    }
    return den;
}

const Evaluator::Entry &Evaluator::evaluate(int id, bool in_goal) {
    check(id);
    int64_t key = static_cast<int64_t>(id) * 2 + (in_goal ? 1 : 0);
    bool fixed = in_goal || is_static_subtree(id);
    auto &cache = fixed ? fixed_cache_ : state_cache_;
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    Entry entry;
    entry.is_role = pool_.is_role(id);
    const Node &n = pool_.node(id);
    if (entry.is_role)
        entry.r = eval_role_node(n, in_goal);
    else
        entry.c = eval_concept_node(n, in_goal);
    return cache.emplace(key, move(entry)).first->second;
}

ConceptDen Evaluator::eval_concept(int expr_id, const State &s) {
    check(expr_id);
    if (pool_.is_role(expr_id))
        throw TypeError("eval_concept on a role expression");
    begin_state(s);
    return evaluate(expr_id, false).c;
}

RoleDen Evaluator::eval_role(int expr_id, const State &s) {
    check(expr_id);
    if (!pool_.is_role(expr_id))
        throw TypeError("eval_role on a concept expression");
    begin_state(s);
    return evaluate(expr_id, false).r;
}

int64_t Evaluator::path_dist(const Bitset &sources, const RoleDen &edges,
                             const Bitset &targets) {
    if (sources.intersects(targets))
        return 0;
    if (sources.none() || targets.none())
        return kInfinity;
    Bitset visited = sources;
    Bitset frontier = sources;
    int64_t depth = 0;
    while (frontier.any()) {
        Bitset next(visited.size());
        util::for_each_bit(frontier, [&](size_t a) {
            next |= edges.rows[a];
            ops_ += words(static_cast<int>(visited.size()));
        });
        next -= visited;
        ++depth;
        if (next.intersects(targets))
            return depth;
        if (next.none())
            return kInfinity;
        visited |= next;
        frontier = std::move(next);
    }
    return kInfinity;
}

int64_t Evaluator::concept_dist(int c_id, int r_id, int d_id, const State &s) {
    begin_state(s);
    const ConceptDen &c = evaluate(c_id, false).c;
    const RoleDen &r = evaluate(r_id, false).r;
    const ConceptDen &d = evaluate(d_id, false).c;
    return path_dist(c.objects, r, d.objects);
}

int64_t Evaluator::role_dist(int r_id, int s_id, int t_id, const State &s) {
    begin_state(s);
    const RoleDen &r = evaluate(r_id, false).r;
    const RoleDen &edges = evaluate(s_id, false).r;
    const RoleDen &t = evaluate(t_id, false).r;
    int64_t best = kInfinity;
    for (int a = 0; a < num_objects_; ++a) {
        if (r.rows[a].none())
            continue;
        int64_t d = path_dist(r.rows[a], edges, t.rows[a]);
        best = min(best, d);
    }
    return best;
}

int64_t Evaluator::sum_role_dist(int r_id, int s_id, int t_id, const State &s) {
    begin_state(s);
    const RoleDen &r = evaluate(r_id, false).r;
    const RoleDen &edges = evaluate(s_id, false).r;
    const RoleDen &t = evaluate(t_id, false).r;
    int64_t total = 0;
    for (int a = 0; a < num_objects_; ++a) {
        bool infinite = false;
        util::for_each_bit(r.rows[a], [&](size_t x0) {
            if (infinite)
                return;
            Bitset source(num_objects_);
            source.set(x0);
            int64_t d = path_dist(source, edges, t.rows[a]);
            if (d == kInfinity)
                infinite = true;
            else
                total += d;
        });
        if (infinite)
            return kInfinity;
    }
    return total;
}

FeatureValue Evaluator::eval_feature(const FeatureExpr &feature, const State &s) {
    check(feature);
    begin_state(s);
    switch (feature.kind) {
    case FeatureKind::Empty:
    case FeatureKind::Nonempty: {
        const Entry &e = evaluate(feature.x0, false);
        bool empty = e.is_role
            ? all_of(e.r.rows.begin(), e.r.rows.end(),
                     [](const Bitset &row) { return row.none(); })
            : e.c.objects.none();
        return FeatureValue::of_bool(feature.kind == FeatureKind::Empty ? empty
                                                                        : !empty);
    }
    case FeatureKind::Count: {
        const Entry &e = evaluate(feature.x0, false);
        int64_t count = e.is_role ? static_cast<int64_t>(e.r.pair_count())
                                  : static_cast<int64_t>(e.c.objects.count());
        return FeatureValue::of_num(count);
    }
    case FeatureKind::ConceptDist:
        return FeatureValue::of_num(
            concept_dist(feature.x0, feature.x1, feature.x2, s));
    case FeatureKind::RoleDist:
        return FeatureValue::of_num(role_dist(feature.x0, feature.x1, feature.x2, s));
    case FeatureKind::SumRoleDist:
        return FeatureValue::of_num(
            sum_role_dist(feature.x0, feature.x1, feature.x2, s));
    case FeatureKind::GoalCount:
        return FeatureValue::of_num(task_.unsatisfied_goal_count(s));
    }
    throw TypeError("unreachable feature kind");
}

FeatureValuation Evaluator::valuate(const vector<NamedFeature> &phi, const State &s) {
    begin_state(s);
    FeatureValuation f;
    for (const NamedFeature &feature : phi)
        f.emplace(feature.name, eval_feature(feature.expr, s));
    return f;
}

} // namespace sketchplan::dl
