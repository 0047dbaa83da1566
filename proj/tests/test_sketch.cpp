#include "doctest.h"

#include "sketchplan/sketch/checks.hpp"
#include "sketchplan/sketch/semantics.hpp"
#include "sketchplan/sketch/sketch.hpp"
#include "sketchplan/util/error.hpp"

#include "support.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace sketchplan;
using namespace testsupport;
using std::string;
using std::vector;

namespace {

sketch::Sketch shipped(const string &pack, dl::Pool &pool) {
    return sketch::parse_sketch_file(domains_dir() + "/" + pack + "/sketch.sk",
                                     pool);
}

/* "r2(a:w)" for an elimination of r2 under case a marking feature w. */
vector<string> order_of(const sketch::TerminationReport &report) {
    vector<string> out;
    for (const sketch::TerminationStep &step : report.steps) {
        string entry = step.rule_id + "(" + step.case_tag;
        for (std::size_t i = 0; i < step.marked.size(); ++i)
            entry += (i == 0 ? ":" : ",") + step.marked[i];
        entry += ")";
        out.push_back(entry);
    }
    return out;
}

dl::FeatureValuation vals(std::int64_t n, bool b) {
    dl::FeatureValuation f;
    f["n"] = dl::FeatureValue::of_num(n);
    f["b"] = dl::FeatureValue::of_bool(b);
    return f;
}

const char *kPairSketch =
    "feature n : num := goal_count()\n"
    "feature b : bool := empty(primitive(x, 0))\n"
    "rule { n>0 } -> { n-- }\n"
    "rule { b } -> { !b }\n"
    "rule { n>0 } -> { n++ }\n"
    "rule { n=0 } -> { n? }\n";

/* Both rules oppose each other's Boolean change, so no elimination fires. */
const char *kFlipFlop =
    "feature b : bool := empty(primitive(x, 0))\n"
    "rule { !b } -> { b }\n"
    "rule { b } -> { !b }\n";

} // namespace

TEST_CASE("the goal-count sketch parses to one feature and one rule") {
    dl::Pool pool;
    sketch::Sketch sk = sketch::parse_sketch_file(
        domains_dir() + "/goal-count.sk", pool);
    CHECK(sk.declared_width == 2);
    REQUIRE(sk.features.size() == 1);
    CHECK(sk.features[0].name == "gc");
    CHECK(sk.features[0].expr.kind == dl::FeatureKind::GoalCount);
    CHECK_FALSE(sk.feature_is_boolean(0));
    REQUIRE(sk.rules.size() == 1);
    CHECK(sk.rules[0].id == "r1");
    REQUIRE(sk.rules[0].conditions.size() == 1);
    CHECK(sk.rules[0].conditions[0].kind ==
          sketch::ConditionKind::NumPositive);
    REQUIRE(sk.rules[0].effects.size() == 1);
    CHECK(sk.rules[0].effects[0].kind == sketch::EffectKind::NumDec);
}

TEST_CASE("sketch files reject undeclared, duplicated, or mistyped features") {
    dl::Pool pool;
    CHECK_THROWS_AS(sketch::parse_sketch(
                        "feature a : num := goal_count()\n"
                        "rule { z>0 } -> { a-- }\n",
                        pool),
                    util::ParseError);
    CHECK_THROWS_AS(sketch::parse_sketch(
                        "feature a : num := goal_count()\n"
                        "rule { a>0, a=0 } -> { a-- }\n",
                        pool),
                    util::ParseError);
    CHECK_THROWS_AS(sketch::parse_sketch(
                        "feature a : num := goal_count()\n"
                        "rule { a>0 } -> { a--, a++ }\n",
                        pool),
                    util::ParseError);
    CHECK_THROWS_AS(sketch::parse_sketch(
                        "feature a : num := goal_count()\n"
                        "rule { a } -> { a-- }\n",
                        pool),
                    util::ParseError);
    CHECK_THROWS_AS(sketch::parse_sketch(
                        "feature b : bool := empty(primitive(x, 0))\n"
                        "rule { b>0 } -> { b }\n",
                        pool),
                    util::ParseError);
    CHECK_THROWS_AS(sketch::parse_sketch(
                        "feature b : bool := count(primitive(x, 0))\n",
                        pool),
                    util::ParseError);
    CHECK_THROWS_AS(sketch::parse_sketch(
                        "feature a : num := goal_count()\n"
                        "rule { a>0 } ->\n",
                        pool),
                    util::ParseError);
}

TEST_CASE("conditions compare against zero under the extended order") {
    dl::Pool pool;
    sketch::Sketch sk = sketch::parse_sketch(kPairSketch, pool);
    const sketch::SketchRule &positive = sk.rules[0];
    const sketch::SketchRule &boolean = sk.rules[1];
    const sketch::SketchRule &zero = sk.rules[3];

    CHECK(sketch::condition_holds(sk, positive, vals(5, false)));
    CHECK(sketch::condition_holds(sk, positive, vals(dl::kInfinity, false)));
    CHECK_FALSE(sketch::condition_holds(sk, positive, vals(0, false)));
    CHECK(sketch::condition_holds(sk, zero, vals(0, true)));
    CHECK_FALSE(sketch::condition_holds(sk, zero, vals(dl::kInfinity, true)));
    CHECK(sketch::condition_holds(sk, boolean, vals(0, true)));
    CHECK_FALSE(sketch::condition_holds(sk, boolean, vals(0, false)));
}

TEST_CASE("rule satisfaction demands strict changes and frozen bystanders") {
    dl::Pool pool;
    sketch::Sketch sk = sketch::parse_sketch(kPairSketch, pool);
    const sketch::SketchRule &dec = sk.rules[0];
    const sketch::SketchRule &flip = sk.rules[1];
    const sketch::SketchRule &inc = sk.rules[2];
    const sketch::SketchRule &any = sk.rules[3];

    CHECK(sketch::pair_satisfies(sk, dec, vals(5, false), vals(3, false)));
    CHECK_FALSE(sketch::pair_satisfies(sk, dec, vals(5, false),
                                       vals(5, false)));
    CHECK_FALSE(sketch::pair_satisfies(sk, dec, vals(5, false),
                                       vals(7, false)));
    /* Infinity sits above every integer, so this is a strict decrease. */
    CHECK(sketch::pair_satisfies(sk, dec, vals(dl::kInfinity, false),
                                 vals(5, false)));
    CHECK_FALSE(sketch::pair_satisfies(sk, dec, vals(dl::kInfinity, false),
                                       vals(dl::kInfinity, false)));
    CHECK_FALSE(sketch::pair_satisfies(sk, dec, vals(0, false),
                                       vals(0, false)));
    /* The unmentioned Boolean must keep its value. */
    CHECK_FALSE(sketch::pair_satisfies(sk, dec, vals(5, false),
                                       vals(3, true)));

    CHECK(sketch::pair_satisfies(sk, flip, vals(4, true), vals(4, false)));
    CHECK_FALSE(sketch::pair_satisfies(sk, flip, vals(4, true),
                                       vals(3, false)));
    CHECK_FALSE(sketch::pair_satisfies(sk, flip, vals(4, true),
                                       vals(4, true)));

    CHECK(sketch::pair_satisfies(sk, inc, vals(3, false), vals(5, false)));
    CHECK(sketch::pair_satisfies(sk, inc, vals(3, false),
                                 vals(dl::kInfinity, false)));
    CHECK_FALSE(sketch::pair_satisfies(sk, inc, vals(dl::kInfinity, false),
                                       vals(dl::kInfinity, false)));

    CHECK(sketch::pair_satisfies(sk, any, vals(0, true), vals(0, true)));
    CHECK(sketch::pair_satisfies(sk, any, vals(0, true),
                                 vals(dl::kInfinity, true)));
    CHECK_FALSE(sketch::pair_satisfies(sk, any, vals(0, true), vals(0, false)));
}

TEST_CASE("shipped sketches have the expected shapes") {
    std::map<string, std::pair<int, int>> shapes = {
        {"barman", {4, 4}},    {"childsnack", {6, 6}}, {"driverlog", {6, 6}},
        {"floortile", {2, 1}}, {"grid", {4, 4}},       {"schedule", {5, 4}},
        {"tpp", {2, 2}},
    };
    for (const auto &[pack, shape] : shapes) {
        dl::Pool pool;
        sketch::Sketch sk = shipped(pack, pool);
        CHECK(sk.domain_name == pack);
        CHECK((int)sk.features.size() == shape.first);
        CHECK((int)sk.rules.size() == shape.second);
        CHECK(sk.declared_width >= 0);
    }
}

TEST_CASE("the childsnack sketch starts gluten-free supplies first") {
    dl::Pool pool;
    sketch::Sketch sk = shipped("childsnack", pool);
    const sketch::SketchRule &r1 = sk.rules[0];
    REQUIRE(r1.conditions.size() == 3);
    int c_g = sk.find_feature("c_g");
    int s_g_k = sk.find_feature("s_g_k");
    int s_g_t = sk.find_feature("s_g_t");
    REQUIRE(c_g >= 0);
    REQUIRE(s_g_k >= 0);
    REQUIRE(s_g_t >= 0);
    CHECK(r1.condition_on(c_g)->kind == sketch::ConditionKind::NumPositive);
    CHECK(r1.condition_on(s_g_k)->kind == sketch::ConditionKind::BoolFalse);
    CHECK(r1.condition_on(s_g_t)->kind == sketch::ConditionKind::BoolFalse);
    CHECK(r1.condition_on(sk.find_feature("c_r")) == nullptr);
}

TEST_CASE("the trading sketch decrements demand or remaining units") {
    dl::Pool pool;
    sketch::Sketch sk = shipped("tpp", pool);
    int u = sk.find_feature("u");
    int w = sk.find_feature("w");
    REQUIRE(u >= 0);
    REQUIRE(w >= 0);
    CHECK(sk.rules[0].condition_on(u)->kind ==
          sketch::ConditionKind::NumPositive);
    CHECK(sk.rules[0].effect_on(u)->kind == sketch::EffectKind::NumDec);
    CHECK(sk.rules[0].effect_on(w) == nullptr);
    CHECK(sk.rules[1].condition_on(w)->kind ==
          sketch::ConditionKind::NumPositive);
    CHECK(sk.rules[1].effect_on(w)->kind == sketch::EffectKind::NumDec);
    CHECK(sk.rules[1].effect_on(u)->kind == sketch::EffectKind::NumAny);
}

TEST_CASE("the machining sketch never touches the hot-part count") {
    dl::Pool pool;
    sketch::Sketch sk = shipped("schedule", pool);
    int h = sk.find_feature("h");
    REQUIRE(h >= 0);
    for (const sketch::SketchRule &rule : sk.rules) {
        CHECK(rule.condition_on(h) == nullptr);
        CHECK(rule.effect_on(h) == nullptr);
    }
}

TEST_CASE("every shipped sketch passes the termination check") {
    std::map<string, vector<string>> orders = {
        {"floortile", {"r1(a:g)"}},
        {"tpp", {"r2(a:w)", "r1(a:u)"}},
        {"barman", {"r4(a:g)", "r1(b:c1)", "r2(b:c2)", "r3(a:u)"}},
        {"grid", {"r1(a:l)", "r2(a:k)", "r3(d)", "r4(b:t)"}},
        {"childsnack",
         {"r5(a:c_g)", "r6(a:c_r)", "r4(b:s_t)", "r3(b:s_g_t)", "r1(b:s_g_k)",
          "r2(b:s_k)"}},
        {"driverlog",
         {"r3(a:p)", "r2(b:l)", "r5(a:t)", "r1(d)", "r4(a:d_t)", "r6(a:d_g)"}},
        {"schedule", {"r1(a:p1)", "r2(a:p2)", "r3(a:p3)", "r4(b:o)"}},
    };
    for (const auto &[pack, expected] : orders) {
        CAPTURE(pack);
        dl::Pool pool;
        sketch::Sketch sk = shipped(pack, pool);
        sketch::TerminationReport report = sketch::check_termination(sk);
        CHECK(report.terminating());
        CHECK(report.stuck_rules.empty());
        CHECK(order_of(report) == expected);
    }
}

TEST_CASE("the goal-count sketch terminates by its single decrement") {
    dl::Pool pool;
    sketch::Sketch sk = sketch::parse_sketch_file(
        domains_dir() + "/goal-count.sk", pool);
    sketch::TerminationReport report = sketch::check_termination(sk);
    CHECK(report.terminating());
    CHECK(order_of(report) == vector<string>{"r1(a:gc)"});
    CHECK(report.marked_features == vector<string>{"gc"});
}

TEST_CASE("opposing boolean rules defeat the termination check") {
    dl::Pool pool;
    sketch::Sketch sk = sketch::parse_sketch(kFlipFlop, pool);
    sketch::TerminationReport report = sketch::check_termination(sk);
    CHECK_FALSE(report.terminating());
    CHECK(report.steps.empty());
    CHECK(report.stuck_rules == vector<string>{"r1", "r2"});
}

TEST_CASE("the termination verdict survives rule reordering") {
    for (const char *pack : {"tpp", "barman", "driverlog"}) {
        string text =
            pddl::read_file(domains_dir() + "/" + pack + "/sketch.sk");
        std::istringstream in(text);
        vector<string> head, rules;
        string line;
        while (std::getline(in, line)) {
            if (line.rfind("rule", 0) == 0)
                rules.push_back(line);
            else
                head.push_back(line);
        }
        REQUIRE(rules.size() >= 2);
        string reversed;
        for (const string &h : head)
            reversed += h + "\n";
        for (auto it = rules.rbegin(); it != rules.rend(); ++it)
            reversed += *it + "\n";
        dl::Pool pool;
        sketch::Sketch sk = sketch::parse_sketch(reversed, pool);
        CHECK(sketch::check_termination(sk).terminating());
    }
}

TEST_CASE("goal separation holds for the shipped sketches on micro tasks") {
    for (const char *pack : {"tpp", "schedule", "grid"}) {
        CAPTURE(pack);
        const domains::DomainPack *p = domains::find_pack(pack);
        vector<pddl::GroundTask> tasks;
        for (std::size_t i = 0; i < domains::micro_suite(*p).size(); ++i)
            tasks.push_back(make_micro_task(pack, (int)i));
        vector<const pddl::GroundTask *> refs;
        for (const pddl::GroundTask &t : tasks)
            refs.push_back(&t);

        dl::Pool pool;
        sketch::Sketch sk = shipped(pack, pool);
        sketch::GoalSeparationReport report =
            sketch::check_goal_separation(sk, pool, refs);
        CHECK(report.separated);
        CHECK(report.witness.empty());
        CHECK(report.states_examined > 0);
        if (string(pack) == "tpp")
            CHECK(report.goal_valuations.size() == 1);
        if (string(pack) == "schedule")
            CHECK(report.goal_valuations.size() == 2);
        if (string(pack) == "grid")
            CHECK(report.goal_valuations.size() == 2);
    }
}

TEST_CASE("separation enforces its reachable-state ceiling") {
    vector<pddl::GroundTask> tasks;
    tasks.push_back(make_micro_task("tpp", 1));
    vector<const pddl::GroundTask *> refs{&tasks[0]};
    dl::Pool pool;
    sketch::Sketch sk = shipped("tpp", pool);
    CHECK_THROWS_AS(sketch::check_goal_separation(sk, pool, refs, 10),
                    util::ResourceError);
}

TEST_CASE("dropping the unit counter breaks trading goal separation") {
    /*
      Without w, a state whose remaining goods are all loaded on the truck
      projects to u=0 exactly like a goal state, but is not a goal.
    */
    dl::Pool pool;
    sketch::Sketch sk = sketch::parse_sketch(
        "domain tpp\n"
        "width 1\n"
        "feature u : num := count(diff(extract(diff(goal(primitive(stored, 0,"
        " 1)), primitive(stored, 0, 1)), 0), some(primitive(loaded, 0, 2),"
        " primitive(next, 0))))\n"
        "rule { u>0 } -> { u-- }\n",
        pool);
    vector<pddl::GroundTask> tasks;
    for (int i = 0; i < 3; ++i)
        tasks.push_back(make_micro_task("tpp", i));
    vector<const pddl::GroundTask *> refs;
    for (const pddl::GroundTask &t : tasks)
        refs.push_back(&t);
    sketch::GoalSeparationReport report =
        sketch::check_goal_separation(sk, pool, refs);
    CHECK_FALSE(report.separated);
    CHECK_FALSE(report.witness.empty());
}

TEST_CASE("non-strict acceptance tolerates an unknown termination verdict") {
    string text = pddl::read_file(domains_dir() + "/tpp/sketch.sk");
    text += "feature z : bool := empty(diff(primitive(stored, 0),"
            " primitive(stored, 0)))\n"
            "rule { z } -> { !z }\n"
            "rule { !z } -> { z }\n";
    dl::Pool pool;
    sketch::Sketch sk = sketch::parse_sketch(text, pool);

    vector<pddl::GroundTask> tasks;
    for (int i = 0; i < 3; ++i)
        tasks.push_back(make_micro_task("tpp", i));
    vector<const pddl::GroundTask *> refs;
    for (const pddl::GroundTask &t : tasks)
        refs.push_back(&t);

    sketch::WellFormedReport report =
        sketch::check_well_formed(sk, pool, refs);
    CHECK(report.separation.separated);
    CHECK_FALSE(report.termination.terminating());
    CHECK(report.accepted(false));
    CHECK_FALSE(report.accepted(true));
}

TEST_CASE("the runner reports the first matching rule in file order") {
    /* One locked place, one matching key next to the robot: the only
       successor of the start state picks the key up, which satisfies the
       grab-a-useful-key rule and no earlier one. */
    pddl::DomainDef domain = pddl::parse_domain(
        pddl::read_file(domains_dir() + "/grid/domain.pddl"));
    pddl::ProblemDef problem = pddl::parse_problem(
        "(define (problem locked) (:domain grid)"
        " (:objects pa pb - place k1 - key s1 - shape)"
        " (:init (conn pa pb) (conn pb pa) (open pa) (locked pb)"
        "        (lock-shape pb s1) (key-shape k1 s1)"
        "        (at k1 pa) (at-robot pa) (arm-empty))"
        " (:goal (at k1 pb)))",
        domain);
    pddl::GroundTask task = pddl::ground(domain, problem);

    dl::Pool pool;
    sketch::Sketch sk = shipped("grid", pool);
    sketch::SketchRunner runner(sk, pool, task);

    dl::FeatureValuation root = runner.valuate(task.s0);
    CHECK(root.at("l").num == 1);
    CHECK(root.at("k").num == 1);
    CHECK_FALSE(root.at("o").truth);
    CHECK_FALSE(root.at("t").truth);

    auto successors = task.successors(task.s0);
    REQUIRE(successors.size() == 1);
    const pddl::State &picked = successors[0].second;
    CHECK(runner.matching_rule(root, picked) == std::optional<string>("r3"));

    search::EpisodeGoal goal = runner.episode_goal(task.s0);
    CHECK_FALSE(goal.deadend);
    CHECK(goal.subgoal_rule(picked) == std::optional<string>("r3"));
    CHECK_FALSE(goal.subgoal_rule(task.s0).has_value());
}

TEST_CASE("rules render back to their textual form") {
    dl::Pool pool;
    sketch::Sketch sk = shipped("tpp", pool);
    CHECK(sk.rule_to_string(sk.rules[0]) == "r1: {u>0} -> {u--}");
    CHECK(sk.rule_to_string(sk.rules[1]) == "r2: {w>0} -> {u?, w--}");
}
