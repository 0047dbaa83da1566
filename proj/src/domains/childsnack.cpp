#include "sketchplan/domains/domains.hpp"

#include "sketchplan/util/rng.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <vector>

using namespace std;

namespace sketchplan::domains {

/*
  Children split into allergic and regular groups. Supplies are tight: one
  bread and one content portion per child, and the number of gluten-free
  portions equals the number of allergic children. Serving a gluten-free
  sandwich to a regular child therefore strands an allergic child, which is
  exactly the mistake a plain goal-count serialization makes: its breadth
  first search builds the gluten-free sandwich first (that schema grounds
  first) and serves it to a regular child at the first table (that serve
  schema grounds first). Regular children all wait at table1 to keep that
  failure deterministic; allergic children are spread round-robin.
*/
string generate_childsnack(const GenParams &params) {
    int allergic = params.at("allergic");
    int regular = params.at("regular");
    int trays = params.at("trays");
    int tables = params.at("tables");
    util::Rng rng(params.seed);

    int children = allergic + regular;
    vector<int> bread_ids(children);
    iota(bread_ids.begin(), bread_ids.end(), 0);
    rng.shuffle(bread_ids);
    vector<bool> gluten_free_bread(children, false);
    for (int i = 0; i < allergic; ++i)
        gluten_free_bread[bread_ids[i]] = true;

    vector<int> content_ids(children);
    iota(content_ids.begin(), content_ids.end(), 0);
    rng.shuffle(content_ids);
    vector<bool> gluten_free_content(children, false);
    for (int i = 0; i < allergic; ++i)
        gluten_free_content[content_ids[i]] = true;

    ostringstream out;
    out << "(define (problem childsnack-a" << allergic << "-r" << regular
        << "-t" << tables << "-s" << params.seed << ")\n";
    out << "  (:domain childsnack)\n";
    out << "  (:objects\n    ";
    for (int i = 0; i < children; ++i)
        out << "child" << i + 1 << " ";
    out << "- child\n    ";
    for (int i = 0; i < children; ++i)
        out << "bread" << i + 1 << " ";
    out << "- bread-portion\n    ";
    for (int i = 0; i < children; ++i)
        out << "content" << i + 1 << " ";
    out << "- content-portion\n    ";
    for (int i = 0; i < children; ++i)
        out << "sandw" << i + 1 << " ";
    out << "- sandwich\n    ";
    for (int i = 0; i < trays; ++i)
        out << "tray" << i + 1 << " ";
    out << "- tray\n    kitchen1 ";
    for (int i = 0; i < tables; ++i)
        out << "table" << i + 1 << " ";
    out << "- place)\n";

    out << "  (:init\n";
    out << "    (kitchen kitchen1)\n";
    for (int i = 0; i < children; ++i) {
        out << "    (at-kitchen-bread bread" << i + 1 << ")\n";
        if (gluten_free_bread[i])
            out << "    (no-gluten-bread bread" << i + 1 << ")\n";
        out << "    (at-kitchen-content content" << i + 1 << ")\n";
        if (gluten_free_content[i])
            out << "    (no-gluten-content content" << i + 1 << ")\n";
        out << "    (notexist sandw" << i + 1 << ")\n";
    }
    for (int i = 0; i < trays; ++i)
        out << "    (at tray" << i + 1 << " kitchen1)\n";
    /* Children 1..regular are the non-allergic ones at table1. */
    for (int i = 0; i < regular; ++i) {
        out << "    (not-allergic-gluten child" << i + 1 << ")\n";
        out << "    (waiting child" << i + 1 << " table1)\n";
    }
    for (int i = 0; i < allergic; ++i) {
        out << "    (allergic-gluten child" << regular + i + 1 << ")\n";
        out << "    (waiting child" << regular + i + 1 << " table"
            << i % tables + 1 << ")\n";
    }
    out << "  )\n";

    out << "  (:goal (and\n";
    for (int i = 0; i < children; ++i)
        out << "    (served child" << i + 1 << ")\n";
    out << "  ))\n";
    out << ")\n";
    return out.str();
}

} // namespace sketchplan::domains
