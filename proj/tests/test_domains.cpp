#include "doctest.h"

#include "sketchplan/domains/domains.hpp"
#include "sketchplan/pddl/parser.hpp"
#include "sketchplan/pddl/task.hpp"
#include "sketchplan/search/search.hpp"
#include "sketchplan/sketch/semantics.hpp"
#include "sketchplan/sketch/sketch.hpp"
#include "sketchplan/util/error.hpp"

#include "support.hpp"

#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

using namespace sketchplan;
using namespace testsupport;
using std::string;
using std::vector;

TEST_CASE("seven packs are registered in alphabetical order") {
    const vector<domains::DomainPack> &all = domains::packs();
    REQUIRE(all.size() == 7);
    vector<string> ids;
    for (const domains::DomainPack &pack : all)
        ids.push_back(pack.id);
    CHECK(ids == vector<string>{"barman", "childsnack", "driverlog",
                                "floortile", "grid", "schedule", "tpp"});
    CHECK(domains::find_pack("grid") != nullptr);
    CHECK(domains::find_pack("freecell") == nullptr);
}

TEST_CASE("pack width claims agree with the sketch width directives") {
    for (const domains::DomainPack &pack : domains::packs()) {
        dl::Pool pool;
        sketch::Sketch sk = sketch::parse_sketch_file(pack.sketch_file(), pool);
        CHECK(pack.width_claim == sk.declared_width);
        CHECK(sk.domain_name == pack.id);
    }
}

TEST_CASE("parameter schema files match the compiled-in parameter specs") {
    std::regex line_re(
        R"(^param\s+(\S+)\s+min\s+(-?\d+)\s+max\s+(-?\d+)\s+default\s+(-?\d+))");
    for (const domains::DomainPack &pack : domains::packs()) {
        CAPTURE(pack.id);
        std::ifstream in(pack.schema_file());
        REQUIRE(in.good());
        vector<std::tuple<string, int, int, int>> listed;
        string line;
        while (std::getline(in, line)) {
            std::smatch m;
            if (std::regex_search(line, m, line_re))
                listed.emplace_back(m[1], std::stoi(m[2]), std::stoi(m[3]),
                                    std::stoi(m[4]));
        }
        REQUIRE(listed.size() == pack.params.size());
        for (std::size_t i = 0; i < listed.size(); ++i) {
            const domains::ParamSpec &spec = pack.params[i];
            CHECK(std::get<0>(listed[i]) == spec.name);
            CHECK(std::get<1>(listed[i]) == spec.min_value);
            CHECK(std::get<2>(listed[i]) == spec.max_value);
            CHECK(std::get<3>(listed[i]) == spec.default_value);
        }
    }
}

TEST_CASE("parameter validation rejects unknown names and bad values") {
    const domains::DomainPack *grid = domains::find_pack("grid");
    REQUIRE(grid != nullptr);

    domains::GenParams unknown = domains::default_params(*grid, 1);
    unknown.values["teleporters"] = 1;
    CHECK_THROWS_AS(domains::validate_params(*grid, unknown),
                    util::ParseError);

    domains::GenParams low = domains::default_params(*grid, 1);
    low.values["rows"] = 1;
    CHECK_THROWS_AS(domains::validate_params(*grid, low), util::ParseError);

    domains::GenParams high = domains::default_params(*grid, 1);
    high.values["keys"] = 99;
    CHECK_THROWS_AS(domains::validate_params(*grid, high), util::ParseError);

    /* Two locks on the top row need at least three columns between them. */
    domains::GenParams cramped = domains::default_params(*grid, 1);
    cramped.values["cols"] = 2;
    cramped.values["locks"] = 2;
    CHECK_THROWS_AS(domains::validate_params(*grid, cramped),
                    util::ParseError);

    /* Every lock needs a key of its shape. */
    domains::GenParams keyless = domains::default_params(*grid, 1);
    keyless.values["keys"] = 1;
    keyless.values["locks"] = 2;
    CHECK_THROWS_AS(domains::validate_params(*grid, keyless),
                    util::ParseError);

    CHECK_NOTHROW(domains::validate_params(
        *grid, domains::default_params(*grid, 1)));
}

TEST_CASE("generation is a pure function of the parameters and seed") {
    for (const domains::DomainPack &pack : domains::packs()) {
        CAPTURE(pack.id);
        domains::GenParams params = domains::default_params(pack, 5);
        string once = domains::generate(pack, params);
        string twice = domains::generate(pack, params);
        CHECK(once == twice);

        domains::GenParams other = domains::default_params(pack, 6);
        CHECK(domains::generate(pack, other) != once);
    }
}

TEST_CASE("every benchmark instance parses, grounds, and names its seed") {
    for (const domains::DomainPack &pack : domains::packs()) {
        CAPTURE(pack.id);
        vector<domains::GenParams> suite = domains::benchmark_suite(pack);
        CHECK(suite.size() >= 10);
        pddl::DomainDef domain =
            pddl::parse_domain(pddl::read_file(pack.domain_file()));
        for (const domains::GenParams &params : suite) {
            CHECK_NOTHROW(domains::validate_params(pack, params));
            pddl::ProblemDef problem =
                pddl::parse_problem(domains::generate(pack, params), domain);
            CHECK(problem.name.find(pack.id) == 0);
            pddl::GroundTask task = pddl::ground(domain, problem);
            CHECK(task.atom_count() > 0);
            CHECK_FALSE(task.is_goal(task.s0));
        }
    }
}

TEST_CASE("micro instances are few, small, and exhaustively enumerable") {
    std::size_t total = 0;
    for (const domains::DomainPack &pack : domains::packs()) {
        CAPTURE(pack.id);
        vector<domains::GenParams> suite = domains::micro_suite(pack);
        CHECK(!suite.empty());
        total += suite.size();
        for (std::size_t i = 0; i < suite.size(); ++i) {
            CHECK_NOTHROW(domains::validate_params(pack, suite[i]));
            pddl::GroundTask task = make_micro_task(pack.id, (int)i);
            vector<pddl::State> reachable = enumerate_reachable(task, 100001);
            CHECK(reachable.size() <= 100000);
        }
    }
    CHECK(total == 20);
}

TEST_CASE("sketch-driven search solves every micro instance") {
    for (const domains::DomainPack &pack : domains::packs()) {
        CAPTURE(pack.id);
        for (std::size_t i = 0; i < domains::micro_suite(pack).size(); ++i) {
            pddl::GroundTask task = make_micro_task(pack.id, (int)i);
            dl::Pool pool;
            sketch::Sketch sk =
                sketch::parse_sketch_file(pack.sketch_file(), pool);
            sketch::SketchRunner runner(sk, pool, task);
            auto [result, trace] = search::siwr(task, runner, 2);
            REQUIRE(result.status == search::Status::Solved);
            CHECK(task.is_goal(
                search::replay_plan(task, task.s0, result.plan)));
            if (!trace.episodes.empty()) {
                auto [aw, mw] = search::effective_width_stats(trace);
                CHECK(mw <= pack.width_claim);
                CHECK(aw <= pack.width_claim);
            }
        }
    }
}

TEST_CASE("generated instances stay within the declared atom budget") {
    /* Desk-scale means every suite member grounds in the default budget with
       room to spare. */
    for (const domains::DomainPack &pack : domains::packs()) {
        domains::GenParams params = domains::benchmark_suite(pack).back();
        pddl::DomainDef domain =
            pddl::parse_domain(pddl::read_file(pack.domain_file()));
        pddl::ProblemDef problem =
            pddl::parse_problem(domains::generate(pack, params), domain);
        pddl::GroundTask task = pddl::ground(domain, problem);
        CHECK(task.atom_count() < 20000);
        CHECK((int)task.actions.size() < 100000);
    }
}
