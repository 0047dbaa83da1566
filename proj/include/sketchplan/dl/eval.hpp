#ifndef SKETCHPLAN_DL_EVAL_H
#define SKETCHPLAN_DL_EVAL_H

#include "sketchplan/dl/expr.hpp"
#include "sketchplan/pddl/task.hpp"
#include "sketchplan/util/bits.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace sketchplan::dl {

/* Extended natural: plain values plus an infinity that orders above all. */
constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max();

struct FeatureValue {
    bool boolean = false;
    bool truth = false;
    std::int64_t num = 0;

    static FeatureValue of_bool(bool b) {
        FeatureValue v;
        v.boolean = true;
        v.truth = b;
        return v;
    }
    static FeatureValue of_num(std::int64_t n) {
        FeatureValue v;
        v.num = n;
        return v;
    }
    bool operator==(const FeatureValue &o) const {
        return boolean == o.boolean && truth == o.truth && num == o.num;
    }
    bool operator!=(const FeatureValue &o) const { return !(*this == o); }
};

std::string value_to_string(const FeatureValue &value);

using FeatureValuation = std::map<std::string, FeatureValue>;

/* Booleans pass through; a numerical value n maps to the truth of n == 0. */
std::map<std::string, bool> boolean_projection(const FeatureValuation &f);

struct ConceptDen {
    util::Bitset objects;

    bool operator==(const ConceptDen &o) const { return objects == o.objects; }
};

struct RoleDen {
    std::vector<util::Bitset> rows;  // rows[a] = {b | (a, b) in denotation}

    bool operator==(const RoleDen &o) const { return rows == o.rows; }
    bool contains(int a, int b) const { return rows[a].test(b); }
    std::size_t pair_count() const;
};

struct NamedFeature {
    std::string name;
    FeatureExpr expr;
};

/*
  Binds a Pool to one ground task and evaluates expressions against states.
  check() resolves names against the task up front, so evaluation never fails.
  Denotations of subtrees built only from static predicates, nominals, or
  goal-wrapped expressions are cached across states; everything else is cached
  within a single state only. The ops counter tracks denotation words touched
  and backs the quadratic-cost assertion in the tests.
*/
class Evaluator {
public:
    Evaluator(const Pool &pool, const pddl::GroundTask &task);

    /* Construction-time validation; throws TypeError on unknown names,
       arity violations, or goal() around non-goal predicates. */
    void check(int expr_id);
    void check(const FeatureExpr &feature);

    ConceptDen eval_concept(int expr_id, const pddl::State &s);
    RoleDen eval_role(int expr_id, const pddl::State &s);
    FeatureValue eval_feature(const FeatureExpr &feature, const pddl::State &s);
    FeatureValuation valuate(const std::vector<NamedFeature> &phi,
                             const pddl::State &s);

    int object_count() const { return num_objects_; }
    std::uint64_t ops() const { return ops_; }
    void reset_ops() { ops_ = 0; }

private:
    struct Entry {
        bool is_role = false;
        ConceptDen c;
        RoleDen r;
    };

    const Entry &evaluate(int id, bool in_goal);
    ConceptDen eval_concept_node(const Node &n, bool in_goal);
    RoleDen eval_role_node(const Node &n, bool in_goal);
    RoleDen primitive_role(const Node &n, bool in_goal);
    ConceptDen primitive_concept(const Node &n, bool in_goal);
    bool atom_holds(int atom_id, bool in_goal) const;
    bool is_static_subtree(int id) const;

    std::int64_t concept_dist(int c_id, int r_id, int d_id, const pddl::State &s);
    std::int64_t role_dist(int r_id, int s_id, int t_id, const pddl::State &s);
    std::int64_t sum_role_dist(int r_id, int s_id, int t_id, const pddl::State &s);
    std::int64_t path_dist(const util::Bitset &sources, const RoleDen &edges,
                           const util::Bitset &targets);

    void begin_state(const pddl::State &s);

    const Pool &pool_;
    const pddl::GroundTask &task_;
    int num_objects_;
    std::vector<char> static_subtree_;       // per node id, validated lazily
    std::vector<char> checked_;
    pddl::State owned_state_;
    const pddl::State *current_ = nullptr;
    std::unordered_map<std::int64_t, Entry> state_cache_;   // id*2 + in_goal
    std::unordered_map<std::int64_t, Entry> fixed_cache_;   // statics and goal()
    std::uint64_t ops_ = 0;
};

} // namespace sketchplan::dl

#endif
