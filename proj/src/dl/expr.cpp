#include "sketchplan/dl/expr.hpp"

#include "sketchplan/util/error.hpp"

#include <stdexcept>

using namespace std;
using sketchplan::util::TypeError;

namespace sketchplan::dl {

bool is_role_kind(NodeKind kind) {
    switch (kind) {
    case NodeKind::RPrimitive:
    case NodeKind::RUnion:
    case NodeKind::RIntersection:
    case NodeKind::RNot:
    case NodeKind::RDiff:
    case NodeKind::Compose:
    case NodeKind::Inverse:
    case NodeKind::TClosure:
    case NodeKind::RTClosure:
    case NodeKind::Restrict:
    case NodeKind::Identity:
    case NodeKind::RGoal:
        return true;
    default:
        return false;
    }
}

int Pool::intern(Node node) {
    Key key{static_cast<int>(node.kind), node.child0, node.child1,
            node.predicate, node.object, node.i, node.j};
    auto it = index_.find(key);
    if (it != index_.end())
        return it->second;
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(move(node));
    index_.emplace(move(key), id);
    return id;
}

int Pool::require_concept(int id, const char *where) const {
    if (id < 0 || id >= size())
        throw TypeError(string(where) + ": invalid expression id");
    if (is_role(id))
        throw TypeError(string(where) + ": expected a concept, got a role");
    return id;
}

int Pool::require_role(int id, const char *where) const {
    if (id < 0 || id >= size())
        throw TypeError(string(where) + ": invalid expression id");
    if (!is_role(id))
        throw TypeError(string(where) + ": expected a role, got a concept");
    return id;
}

int Pool::concept_primitive(const string &predicate, int i) {
    if (i < 0)
        throw TypeError("primitive: negative index");
    Node n;
    n.kind = NodeKind::CPrimitive;
    n.predicate = predicate;
    n.i = i;
    return intern(move(n));
}

int Pool::role_primitive(const string &predicate, int i, int j) {
    if (i < 0 || j < 0)
        throw TypeError("primitive: negative index");
    Node n;
    n.kind = NodeKind::RPrimitive;
    n.predicate = predicate;
    n.i = i;
    n.j = j;
    return intern(move(n));
}

int Pool::top() {
    Node n;
    n.kind = NodeKind::Top;
    return intern(move(n));
}

int Pool::bot() {
    Node n;
    n.kind = NodeKind::Bot;
    return intern(move(n));
}

namespace {
Node binary(NodeKind kind, int a, int b) {
    Node n;
    n.kind = kind;
    n.child0 = a;
    n.child1 = b;
    return n;
}
Node unary(NodeKind kind, int a) {
    Node n;
    n.kind = kind;
    n.child0 = a;
    return n;
}
} // namespace

int Pool::union_of(int a, int b) {
    if (is_role(a) != is_role(b))
        throw TypeError("union: operands mix concept and role");
    return intern(binary(is_role(a) ? NodeKind::RUnion : NodeKind::CUnion, a, b));
}

int Pool::intersection_of(int a, int b) {
    if (is_role(a) != is_role(b))
        throw TypeError("intersection: operands mix concept and role");
    return intern(binary(
        is_role(a) ? NodeKind::RIntersection : NodeKind::CIntersection, a, b));
}

int Pool::negation_of(int a) {
    return intern(unary(is_role(a) ? NodeKind::RNot : NodeKind::CNot, a));
}

int Pool::difference_of(int a, int b) {
    if (is_role(a) != is_role(b))
        throw TypeError("diff: operands mix concept and role");
    return intern(binary(is_role(a) ? NodeKind::RDiff : NodeKind::CDiff, a, b));
}

int Pool::some(int role, int c) {
    return intern(binary(NodeKind::Some, require_role(role, "some"),
                         require_concept(c, "some")));
}

int Pool::all(int role, int c) {
    return intern(binary(NodeKind::All, require_role(role, "all"),
                         require_concept(c, "all")));
}

int Pool::nominal(const string &object) {
    Node n;
    n.kind = NodeKind::Nominal;
    n.object = object;
    return intern(move(n));
}

int Pool::rvm_equal(int r, int s) {
    return intern(binary(NodeKind::RvmEqual, require_role(r, "equal"),
                         require_role(s, "equal")));
}

int Pool::rvm_subset(int r, int s) {
    return intern(binary(NodeKind::RvmSubset, require_role(r, "subset"),
                         require_role(s, "subset")));
}

int Pool::extract(int role, int index) {
    if (index != 0 && index != 1)
        throw TypeError("extract: index must be 0 or 1");
    Node n = unary(NodeKind::Extract, require_role(role, "extract"));
    n.i = index;
    return intern(move(n));
}

int Pool::goal_of(int x) {
    return intern(unary(is_role(x) ? NodeKind::RGoal : NodeKind::CGoal, x));
}

int Pool::compose(int r, int s) {
    return intern(binary(NodeKind::Compose, require_role(r, "compose"),
                         require_role(s, "compose")));
}

int Pool::inverse(int r) {
    return intern(unary(NodeKind::Inverse, require_role(r, "inverse")));
}

int Pool::tclosure(int r) {
    return intern(unary(NodeKind::TClosure, require_role(r, "tclosure")));
}

int Pool::rtclosure(int r) {
    return intern(unary(NodeKind::RTClosure, require_role(r, "rtclosure")));
}

int Pool::restrict_to(int role, int c) {
    return intern(binary(NodeKind::Restrict, require_role(role, "restrict"),
                         require_concept(c, "restrict")));
}

int Pool::identity(int c) {
    return intern(unary(NodeKind::Identity, require_concept(c, "identity")));
}

string Pool::to_string(int id) const {
    const Node &n = nodes_[id];
    auto one = [&](const char *f) { return string(f) + "(" + to_string(n.child0) + ")"; };
    auto two = [&](const char *f) {
        return string(f) + "(" + to_string(n.child0) + ", " + to_string(n.child1) + ")";
    };
    switch (n.kind) {
    case NodeKind::CPrimitive:
        return "primitive(" + n.predicate + ", " + std::to_string(n.i) + ")";
    case NodeKind::RPrimitive:
        return "primitive(" + n.predicate + ", " + std::to_string(n.i) + ", " +
               std::to_string(n.j) + ")";
    case NodeKind::Top: return "top";
    case NodeKind::Bot: return "bot";
    case NodeKind::CUnion: case NodeKind::RUnion: return two("union");
    case NodeKind::CIntersection: case NodeKind::RIntersection:
        return two("intersection");
    case NodeKind::CNot: case NodeKind::RNot: return one("not");
    case NodeKind::CDiff: case NodeKind::RDiff: return two("diff");
    case NodeKind::Some: return two("some");
    case NodeKind::All: return two("all");
    case NodeKind::Nominal: return "nominal(" + n.object + ")";
    case NodeKind::RvmEqual: return two("equal");
    case NodeKind::RvmSubset: return two("subset");
    case NodeKind::Extract:
        return "extract(" + to_string(n.child0) + ", " + std::to_string(n.i) + ")";
    case NodeKind::CGoal: case NodeKind::RGoal: return one("goal");
    case NodeKind::Compose: return two("compose");
    case NodeKind::Inverse: return one("inverse");
    case NodeKind::TClosure: return one("tclosure");
    case NodeKind::RTClosure: return one("rtclosure");
    case NodeKind::Restrict: return two("restrict");
    case NodeKind::Identity: return one("identity");
    }
    return "?";
}

string feature_to_string(const Pool &pool, const FeatureExpr &feature) {
    switch (feature.kind) {
    case FeatureKind::Empty: return "empty(" + pool.to_string(feature.x0) + ")";
    case FeatureKind::Nonempty:
        return "nonempty(" + pool.to_string(feature.x0) + ")";
    case FeatureKind::Count: return "count(" + pool.to_string(feature.x0) + ")";
    case FeatureKind::ConceptDist:
        return "concept_dist(" + pool.to_string(feature.x0) + ", " +
               pool.to_string(feature.x1) + ", " + pool.to_string(feature.x2) + ")";
    case FeatureKind::RoleDist:
        return "role_dist(" + pool.to_string(feature.x0) + ", " +
               pool.to_string(feature.x1) + ", " + pool.to_string(feature.x2) + ")";
    case FeatureKind::SumRoleDist:
        return "sum_role_dist(" + pool.to_string(feature.x0) + ", " +
               pool.to_string(feature.x1) + ", " + pool.to_string(feature.x2) + ")";
    case FeatureKind::GoalCount: return "goal_count()";
    }
    return "?";
}

} // namespace sketchplan::dl
