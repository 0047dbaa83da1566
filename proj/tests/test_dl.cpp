#include "doctest.h"

#include "sketchplan/dl/eval.hpp"
#include "sketchplan/dl/expr.hpp"
#include "sketchplan/sketch/sketch.hpp"
#include "sketchplan/util/error.hpp"

#include "support.hpp"

#include <set>
#include <string>
#include <vector>

using namespace sketchplan;
using namespace testsupport;
using std::string;
using std::vector;

namespace {

/*
  A four-place corridor pa - pb - pc - pd with bidirectional adjacency.
  Key k1 sits at pc and must reach pa; key k2 sits at pa and must reach pd.
*/
const char *kCorridor =
    "(define (problem corridor) (:domain grid)"
    " (:objects pa pb pc pd - place k1 k2 - key s1 - shape)"
    " (:init (conn pa pb) (conn pb pa) (conn pb pc) (conn pc pb)"
    "        (conn pc pd) (conn pd pc)"
    "        (open pa) (open pb) (open pc) (open pd)"
    "        (key-shape k1 s1) (key-shape k2 s1)"
    "        (at k1 pc) (at k2 pa) (at-robot pa) (arm-empty))"
    " (:goal (and (at k1 pa) (at k2 pd))))";

/* Directed two-edge chain pa -> pb -> pc with no return edges. */
const char *kDirected =
    "(define (problem directed) (:domain grid)"
    " (:objects pa pb pc - place k1 - key s1 - shape)"
    " (:init (conn pa pb) (conn pb pc) (open pa) (open pb) (open pc)"
    "        (key-shape k1 s1) (at k1 pa) (at-robot pa) (arm-empty))"
    " (:goal (at k1 pc)))";

pddl::GroundTask corridor_task() {
    pddl::DomainDef domain = pddl::parse_domain(
        pddl::read_file(domains_dir() + "/grid/domain.pddl"));
    return pddl::ground(domain, pddl::parse_problem(kCorridor, domain));
}

pddl::GroundTask directed_task() {
    pddl::DomainDef domain = pddl::parse_domain(
        pddl::read_file(domains_dir() + "/grid/domain.pddl"));
    return pddl::ground(domain, pddl::parse_problem(kDirected, domain));
}

int obj(const pddl::GroundTask &task, const string &name) {
    for (std::size_t i = 0; i < task.problem.object_names.size(); ++i)
        if (task.problem.object_names[i] == name)
            return (int)i;
    REQUIRE(false);
    return -1;
}

std::set<string> members(const pddl::GroundTask &task,
                         const dl::ConceptDen &den) {
    std::set<string> out;
    for (std::size_t i = 0; i < den.objects.size(); ++i)
        if (den.objects.test(i))
            out.insert(task.problem.object_names[i]);
    return out;
}

dl::FeatureExpr feature(dl::FeatureKind kind, int x0 = -1, int x1 = -1,
                        int x2 = -1) {
    dl::FeatureExpr f;
    f.kind = kind;
    f.x0 = x0;
    f.x1 = x1;
    f.x2 = x2;
    return f;
}

} // namespace

TEST_CASE("primitive concepts and roles denote the instance atoms") {
    pddl::GroundTask task = corridor_task();
    dl::Pool pool;
    dl::Evaluator ev(pool, task);

    int robot = pool.concept_primitive("at-robot", 0);
    ev.check(robot);
    CHECK(members(task, ev.eval_concept(robot, task.s0)) ==
          std::set<string>{"pa"});

    int holding = pool.concept_primitive("holding", 0);
    ev.check(holding);
    CHECK(members(task, ev.eval_concept(holding, task.s0)).empty());

    int conn = pool.role_primitive("conn", 0, 1);
    ev.check(conn);
    dl::RoleDen edges = ev.eval_role(conn, task.s0);
    CHECK(edges.pair_count() == 6);
    CHECK(edges.contains(obj(task, "pa"), obj(task, "pb")));
    CHECK(edges.contains(obj(task, "pb"), obj(task, "pa")));
    CHECK_FALSE(edges.contains(obj(task, "pa"), obj(task, "pc")));
    CHECK_FALSE(edges.contains(obj(task, "pa"), obj(task, "pa")));

    int at = pool.role_primitive("at", 0, 1);
    ev.check(at);
    dl::RoleDen where = ev.eval_role(at, task.s0);
    CHECK(where.pair_count() == 2);
    CHECK(where.contains(obj(task, "k1"), obj(task, "pc")));
    CHECK(where.contains(obj(task, "k2"), obj(task, "pa")));
}

TEST_CASE("top and bottom denote the universe and the empty set") {
    pddl::GroundTask task = corridor_task();
    dl::Pool pool;
    dl::Evaluator ev(pool, task);
    CHECK((int)members(task, ev.eval_concept(pool.top(), task.s0)).size() ==
          task.object_count());
    CHECK(members(task, ev.eval_concept(pool.bot(), task.s0)).empty());
    CHECK(members(task, ev.eval_concept(pool.negation_of(pool.top()),
                                        task.s0)).empty());
}

TEST_CASE("goal wrappers evaluate against the goal atoms, not the state") {
    pddl::GroundTask task = corridor_task();
    dl::Pool pool;
    dl::Evaluator ev(pool, task);
    int goal_at = pool.goal_of(pool.role_primitive("at", 0, 1));
    ev.check(goal_at);
    dl::RoleDen den = ev.eval_role(goal_at, task.s0);
    CHECK(den.pair_count() == 2);
    CHECK(den.contains(obj(task, "k1"), obj(task, "pa")));
    CHECK(den.contains(obj(task, "k2"), obj(task, "pd")));
    CHECK_FALSE(den.contains(obj(task, "k1"), obj(task, "pc")));
}

TEST_CASE("set algebra on concepts follows the obvious laws by hand") {
    pddl::GroundTask task = corridor_task();
    dl::Pool pool;
    dl::Evaluator ev(pool, task);
    int at0 = pool.extract(pool.role_primitive("at", 0, 1), 0);
    int at1 = pool.extract(pool.role_primitive("at", 0, 1), 1);
    ev.check(at0);
    ev.check(at1);
    CHECK(members(task, ev.eval_concept(at0, task.s0)) ==
          std::set<string>{"k1", "k2"});
    CHECK(members(task, ev.eval_concept(at1, task.s0)) ==
          std::set<string>{"pa", "pc"});

    int both = pool.union_of(at0, at1);
    ev.check(both);
    CHECK(members(task, ev.eval_concept(both, task.s0)) ==
          std::set<string>{"k1", "k2", "pa", "pc"});

    int keys_only = pool.difference_of(both, at1);
    ev.check(keys_only);
    CHECK(members(task, ev.eval_concept(keys_only, task.s0)) ==
          std::set<string>{"k1", "k2"});

    int nothing = pool.intersection_of(at0, at1);
    ev.check(nothing);
    CHECK(members(task, ev.eval_concept(nothing, task.s0)).empty());

    int named = pool.nominal("pb");
    ev.check(named);
    CHECK(members(task, ev.eval_concept(named, task.s0)) ==
          std::set<string>{"pb"});
}

TEST_CASE("existential and universal restrictions select by role rows") {
    pddl::GroundTask task = corridor_task();
    dl::Pool pool;
    dl::Evaluator ev(pool, task);
    int at = pool.role_primitive("at", 0, 1);

    /* Objects with some at-successor in {pc}: exactly k1. */
    int holds_pc = pool.some(at, pool.nominal("pc"));
    ev.check(holds_pc);
    CHECK(members(task, ev.eval_concept(holds_pc, task.s0)) ==
          std::set<string>{"k1"});

    /* all(at, {pc}) excludes only k2, whose at-row is {pa}. */
    int all_pc = pool.all(at, pool.nominal("pc"));
    ev.check(all_pc);
    std::set<string> den = members(task, ev.eval_concept(all_pc, task.s0));
    CHECK(den.count("k1") == 1);
    CHECK(den.count("k2") == 0);
    CHECK(den.count("pa") == 1);
    CHECK((int)den.size() == task.object_count() - 1);
}

TEST_CASE("role composition and closures on a directed chain") {
    pddl::GroundTask task = directed_task();
    dl::Pool pool;
    dl::Evaluator ev(pool, task);
    int conn = pool.role_primitive("conn", 0, 1);
    int pa = obj(task, "pa"), pb = obj(task, "pb"), pc = obj(task, "pc");

    dl::RoleDen composed =
        ev.eval_role(pool.compose(conn, conn), task.s0);
    CHECK(composed.pair_count() == 1);
    CHECK(composed.contains(pa, pc));

    dl::RoleDen plus = ev.eval_role(pool.tclosure(conn), task.s0);
    CHECK(plus.pair_count() == 3);
    CHECK(plus.contains(pa, pb));
    CHECK(plus.contains(pb, pc));
    CHECK(plus.contains(pa, pc));
    CHECK_FALSE(plus.contains(pa, pa));

    dl::RoleDen star = ev.eval_role(pool.rtclosure(conn), task.s0);
    CHECK(star.pair_count() == 3 + (std::size_t)task.object_count());
    for (int d = 0; d < task.object_count(); ++d)
        CHECK(star.contains(d, d));

    dl::RoleDen inv = ev.eval_role(pool.inverse(conn), task.s0);
    CHECK(inv.pair_count() == 2);
    CHECK(inv.contains(pb, pa));
    CHECK(inv.contains(pc, pb));
}

TEST_CASE("algebraic identities hold denotation-for-denotation") {
    pddl::GroundTask task = corridor_task();
    dl::Pool pool;
    dl::Evaluator ev(pool, task);
    int at0 = pool.extract(pool.role_primitive("at", 0, 1), 0);
    int open = pool.concept_primitive("open", 0);
    int conn = pool.role_primitive("conn", 0, 1);
    int at = pool.role_primitive("at", 0, 1);

    int lhs = pool.negation_of(pool.union_of(at0, open));
    int rhs = pool.intersection_of(pool.negation_of(at0),
                                   pool.negation_of(open));
    CHECK(ev.eval_concept(lhs, task.s0) == ev.eval_concept(rhs, task.s0));

    CHECK(ev.eval_role(pool.inverse(pool.inverse(at)), task.s0) ==
          ev.eval_role(at, task.s0));

    CHECK(ev.eval_role(pool.tclosure(pool.tclosure(conn)), task.s0) ==
          ev.eval_role(pool.tclosure(conn), task.s0));

    CHECK(ev.eval_role(pool.rtclosure(conn), task.s0) ==
          ev.eval_role(pool.union_of(pool.identity(pool.top()),
                                     pool.tclosure(conn)),
                       task.s0));

    CHECK(ev.eval_concept(pool.extract(at, 0), task.s0) ==
          ev.eval_concept(pool.some(at, pool.top()), task.s0));
    CHECK(ev.eval_concept(pool.extract(at, 1), task.s0) ==
          ev.eval_concept(pool.some(pool.inverse(at), pool.top()), task.s0));
}

TEST_CASE("role-value maps compare rows object by object") {
    pddl::GroundTask task = corridor_task();
    dl::Pool pool;
    dl::Evaluator ev(pool, task);
    int conn = pool.role_primitive("conn", 0, 1);
    int at = pool.role_primitive("at", 0, 1);
    int open = pool.concept_primitive("open", 0);

    int symmetric = pool.rvm_equal(conn, pool.inverse(conn));
    ev.check(symmetric);
    CHECK((int)members(task, ev.eval_concept(symmetric, task.s0)).size() ==
          task.object_count());

    int restricted = pool.rvm_subset(pool.restrict_to(conn, open), conn);
    ev.check(restricted);
    CHECK((int)members(task, ev.eval_concept(restricted, task.s0)).size() ==
          task.object_count());

    /* at agrees with its goal rows only for objects with no at-row at all. */
    int settled = pool.rvm_equal(at, pool.goal_of(at));
    ev.check(settled);
    std::set<string> den = members(task, ev.eval_concept(settled, task.s0));
    CHECK(den.count("k1") == 0);
    CHECK(den.count("k2") == 0);
    CHECK((int)den.size() == task.object_count() - 2);
}

TEST_CASE("restriction keeps exactly the pairs whose target qualifies") {
    pddl::GroundTask task = corridor_task();
    dl::Pool pool;
    dl::Evaluator ev(pool, task);
    int conn = pool.role_primitive("conn", 0, 1);
    int to_pb = pool.restrict_to(conn, pool.nominal("pb"));
    ev.check(to_pb);
    dl::RoleDen den = ev.eval_role(to_pb, task.s0);
    CHECK(den.pair_count() == 2);
    CHECK(den.contains(obj(task, "pa"), obj(task, "pb")));
    CHECK(den.contains(obj(task, "pc"), obj(task, "pb")));
}

TEST_CASE("concept distance walks the corridor") {
    pddl::GroundTask task = corridor_task();
    dl::Pool pool;
    dl::Evaluator ev(pool, task);
    int robot = pool.concept_primitive("at-robot", 0);
    int conn = pool.role_primitive("conn", 0, 1);

    auto dist = [&](int target) {
        return ev.eval_feature(
            feature(dl::FeatureKind::ConceptDist, robot, conn, target),
            task.s0);
    };
    CHECK(dist(pool.nominal("pd")).num == 3);
    CHECK(dist(pool.nominal("pc")).num == 2);
    CHECK(dist(pool.nominal("pa")).num == 0);
    CHECK(dist(pool.bot()).num == dl::kInfinity);

    /* Keys take part in no conn edge, so they are unreachable. */
    CHECK(ev.eval_feature(feature(dl::FeatureKind::ConceptDist,
                                  pool.nominal("k1"), conn,
                                  pool.nominal("pa")),
                          task.s0).num == dl::kInfinity);
}

TEST_CASE("role distances connect each key to its goal place") {
    pddl::GroundTask task = corridor_task();
    dl::Pool pool;
    dl::Evaluator ev(pool, task);
    int at = pool.role_primitive("at", 0, 1);
    int conn = pool.role_primitive("conn", 0, 1);
    int goal_at = pool.goal_of(at);

    /* k1: pc to pa is 2 steps; k2: pa to pd is 3. The minimum is 2. */
    CHECK(ev.eval_feature(feature(dl::FeatureKind::RoleDist, at, conn,
                                  goal_at),
                          task.s0).num == 2);
    CHECK(ev.eval_feature(feature(dl::FeatureKind::SumRoleDist, at, conn,
                                  goal_at),
                          task.s0).num == 5);

    /* With no edges at all, only coincident pairs would have distance 0. */
    int no_edges = pool.difference_of(conn, conn);
    CHECK(ev.eval_feature(feature(dl::FeatureKind::SumRoleDist, at, no_edges,
                                  goal_at),
                          task.s0).num == dl::kInfinity);

    /* In a state satisfying the goal rows, every term collapses to 0. */
    pddl::State done = task.s0;
    int at_pred = task.domain.find_predicate("at");
    for (int i = 0; i < task.atom_count(); ++i)
        if (task.atoms[i].predicate == at_pred)
            done.atoms.reset(i);
    for (const pddl::GroundLiteral &lit : task.problem.goal)
        for (int i = 0; i < task.atom_count(); ++i)
            if (task.atoms[i].predicate == lit.predicate &&
                task.atoms[i].args == lit.args)
                done.atoms.set(i);
    CHECK(ev.eval_feature(feature(dl::FeatureKind::SumRoleDist, at, conn,
                                  goal_at),
                          done).num == 0);
}

TEST_CASE("count and emptiness features never produce infinity") {
    pddl::GroundTask task = corridor_task();
    dl::Pool pool;
    dl::Evaluator ev(pool, task);
    int at = pool.role_primitive("at", 0, 1);
    int open = pool.concept_primitive("open", 0);
    int holding = pool.concept_primitive("holding", 0);

    CHECK(ev.eval_feature(feature(dl::FeatureKind::Count, open), task.s0)
              .num == 4);
    CHECK(ev.eval_feature(feature(dl::FeatureKind::Count, at), task.s0)
              .num == 2);
    dl::FeatureValue none =
        ev.eval_feature(feature(dl::FeatureKind::Empty, holding), task.s0);
    CHECK(none.boolean);
    CHECK(none.truth);
    dl::FeatureValue some_open =
        ev.eval_feature(feature(dl::FeatureKind::Nonempty, open), task.s0);
    CHECK(some_open.boolean);
    CHECK(some_open.truth);

    dl::FeatureValue unmet =
        ev.eval_feature(feature(dl::FeatureKind::GoalCount), task.s0);
    CHECK(unmet.num == task.unsatisfied_goal_count(task.s0));
    CHECK(unmet.num == 2);
}

TEST_CASE("valuations carry every named feature and project to booleans") {
    pddl::GroundTask task = corridor_task();
    dl::Pool pool;
    vector<dl::NamedFeature> phi;
    phi.push_back({"held", feature(dl::FeatureKind::Nonempty,
                                   pool.concept_primitive("holding", 0))});
    phi.push_back({"todo", feature(dl::FeatureKind::GoalCount)});
    dl::Evaluator ev(pool, task);
    dl::FeatureValuation f = ev.valuate(phi, task.s0);
    REQUIRE(f.size() == 2);
    CHECK_FALSE(f.at("held").truth);
    CHECK(f.at("todo").num == 2);

    auto b = dl::boolean_projection(f);
    CHECK_FALSE(b.at("held"));
    CHECK_FALSE(b.at("todo"));

    dl::FeatureValuation edge;
    edge["zero"] = dl::FeatureValue::of_num(0);
    edge["far"] = dl::FeatureValue::of_num(dl::kInfinity);
    edge["on"] = dl::FeatureValue::of_bool(true);
    auto eb = dl::boolean_projection(edge);
    CHECK(eb.at("zero"));
    CHECK_FALSE(eb.at("far"));
    CHECK(eb.at("on"));
}

TEST_CASE("construction and checking reject ill-typed expressions") {
    pddl::GroundTask task = corridor_task();
    dl::Pool pool;
    int open = pool.concept_primitive("open", 0);
    int conn = pool.role_primitive("conn", 0, 1);

    CHECK_THROWS_AS(pool.some(open, open), util::TypeError);
    CHECK_THROWS_AS(pool.inverse(open), util::TypeError);
    CHECK_THROWS_AS(pool.compose(open, conn), util::TypeError);

    dl::Evaluator ev(pool, task);
    int unknown = pool.concept_primitive("no-such-predicate", 0);
    CHECK_THROWS_AS(ev.check(unknown), util::TypeError);
    int bad_index = pool.role_primitive("at", 0, 5);
    CHECK_THROWS_AS(ev.check(bad_index), util::TypeError);
    int missing_object = pool.nominal("pz");
    CHECK_THROWS_AS(ev.check(missing_object), util::TypeError);
    /* open never occurs in the corridor goal. */
    int bad_goal = pool.goal_of(pool.concept_primitive("open", 0));
    CHECK_THROWS_AS(ev.check(bad_goal), util::TypeError);
}

TEST_CASE("hash consing shares structurally equal subtrees") {
    dl::Pool pool;
    int a = pool.concept_primitive("open", 0);
    int b = pool.concept_primitive("open", 0);
    CHECK(a == b);
    int u1 = pool.union_of(a, pool.nominal("pa"));
    int u2 = pool.union_of(b, pool.nominal("pa"));
    CHECK(u1 == u2);
    CHECK(pool.to_string(u1) == pool.to_string(u2));
}

TEST_CASE("static subexpressions are cached across states") {
    pddl::GroundTask task = corridor_task();
    dl::Pool pool;
    dl::Evaluator ev(pool, task);
    int closure = pool.tclosure(pool.role_primitive("conn", 0, 1));
    ev.check(closure);

    auto successors = task.successors(task.s0);
    REQUIRE(!successors.empty());

    ev.reset_ops();
    ev.eval_role(closure, task.s0);
    std::uint64_t first = ev.ops();
    CHECK(first > 0);

    ev.reset_ops();
    ev.eval_role(closure, successors[0].second);
    CHECK(ev.ops() < first);

    ev.reset_ops();
    CHECK(ev.ops() == 0);
}

TEST_CASE("feature evaluation cost stays within the quadratic budget") {
    for (const char *pack : {"grid", "tpp", "driverlog", "schedule"}) {
        pddl::GroundTask task = make_micro_task(pack, 0);
        dl::Pool pool;
        sketch::Sketch sk = sketch::parse_sketch_file(
            domains_dir() + "/" + pack + "/sketch.sk", pool);
        dl::Evaluator ev(pool, task);

        std::uint64_t delta = (std::uint64_t)task.object_count();
        std::uint64_t budget = 4 * delta * delta * (std::uint64_t)pool.size();

        vector<pddl::State> states;
        states.push_back(task.s0);
        for (auto &[a, s] : task.successors(task.s0)) {
            (void)a;
            states.push_back(s);
        }
        for (const pddl::State &s : states) {
            ev.reset_ops();
            ev.valuate(sk.features, s);
            CHECK(ev.ops() <= budget);
        }
    }
}
