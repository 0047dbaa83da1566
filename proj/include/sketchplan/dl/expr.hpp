#ifndef SKETCHPLAN_DL_EXPR_H
#define SKETCHPLAN_DL_EXPR_H

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace sketchplan::dl {

enum class NodeKind {
    // concepts
    CPrimitive, Top, Bot, CUnion, CIntersection, CNot, CDiff,
    Some, All, Nominal, RvmEqual, RvmSubset, Extract, CGoal,
    // roles
    RPrimitive, RUnion, RIntersection, RNot, RDiff,
    Compose, Inverse, TClosure, RTClosure, Restrict, Identity, RGoal,
};

bool is_role_kind(NodeKind kind);

struct Node {
    NodeKind kind;
    int child0 = -1;
    int child1 = -1;
    std::string predicate;   // primitives
    std::string object;      // nominal
    int i = -1;              // projection indices
    int j = -1;
};

/*
  Hash-consed expression DAG shared by every expression of one sketch or
  feature set. Node ids are stable; structurally equal subtrees get one id,
  which is what the evaluator's caches key on. Builders throw TypeError on
  concept/role misuse; predicate and object names are resolved later, when an
  evaluator binds the pool to a task.
*/
class Pool {
public:
    int concept_primitive(const std::string &predicate, int i);
    int role_primitive(const std::string &predicate, int i, int j);
    int top();
    int bot();
    int union_of(int a, int b);
    int intersection_of(int a, int b);
    int negation_of(int a);
    int difference_of(int a, int b);
    int some(int role, int c);
    int all(int role, int c);
    int nominal(const std::string &object);
    int rvm_equal(int r, int s);
    int rvm_subset(int r, int s);
    int extract(int role, int index);
    int goal_of(int x);
    int compose(int r, int s);
    int inverse(int r);
    int tclosure(int r);
    int rtclosure(int r);
    int restrict_to(int role, int c);
    int identity(int c);

    bool is_role(int id) const { return is_role_kind(nodes_[id].kind); }
    const Node &node(int id) const { return nodes_[id]; }
    int size() const { return static_cast<int>(nodes_.size()); }

    /* Rendering in the textual grammar, e.g. "some(primitive(at,0,1), top)". */
    std::string to_string(int id) const;

private:
    int intern(Node node);
    int require_concept(int id, const char *where) const;
    int require_role(int id, const char *where) const;

    using Key = std::tuple<int, int, int, std::string, std::string, int, int>;
    std::vector<Node> nodes_;
    std::map<Key, int> index_;
};

enum class FeatureKind {
    Empty, Nonempty, Count, ConceptDist, RoleDist, SumRoleDist, GoalCount
};

/*
  One feature over pool expressions. Empty/Nonempty are Boolean; the rest are
  numerical. GoalCount takes no expressions (number of unsatisfied top goals).
*/
struct FeatureExpr {
    FeatureKind kind = FeatureKind::GoalCount;
    int x0 = -1;
    int x1 = -1;
    int x2 = -1;

    bool is_boolean() const {
        return kind == FeatureKind::Empty || kind == FeatureKind::Nonempty;
    }
};

std::string feature_to_string(const Pool &pool, const FeatureExpr &feature);

} // namespace sketchplan::dl

#endif
