#include "sketchplan/domains/domains.hpp"

#include "sketchplan/util/rng.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <vector>

using namespace std;

namespace sketchplan::domains {

namespace {

string pos(int r, int c) {
    return "pos_" + to_string(r) + "_" + to_string(c);
}

} // namespace

/*
  Four-connected rows x cols grid. Locks occupy the top row at every second
  column, so the open region stays connected and every lock is adjacent to
  the open cell below it. Lock i and key i share shape i modulo the shape
  count, which guarantees a matching key for every lock (the registry checks
  keys >= locks and cols >= 2*locks - 1). Robot and keys start on distinct
  open cells; every key gets a target cell different from where it starts.
*/
string generate_grid(const GenParams &params) {
    int rows = params.at("rows");
    int cols = params.at("cols");
    int keys = params.at("keys");
    int locks = params.at("locks");
    int shapes = params.at("shapes");
    util::Rng rng(params.seed);

    auto locked_at = [&](int r, int c) {
        return r == 0 && c % 2 == 0 && c / 2 < locks;
    };

    vector<pair<int, int>> open_cells;
    vector<pair<int, int>> all_cells;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            all_cells.emplace_back(r, c);
            if (!locked_at(r, c))
                open_cells.emplace_back(r, c);
        }

    rng.shuffle(open_cells);
    pair<int, int> robot_cell = open_cells[0];
    vector<pair<int, int>> key_cells(open_cells.begin() + 1,
                                     open_cells.begin() + 1 + keys);

    vector<pair<int, int>> goal_cells;
    for (int i = 0; i < keys; ++i) {
        pair<int, int> target = key_cells[i];
        while (target == key_cells[i])
            target = all_cells[rng.below(static_cast<int>(all_cells.size()))];
        goal_cells.push_back(target);
    }

    ostringstream out;
    out << "(define (problem grid-" << rows << "x" << cols << "-k" << keys
        << "-l" << locks << "-s" << params.seed << ")\n";
    out << "  (:domain grid)\n";
    out << "  (:objects\n    ";
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            out << pos(r, c) << " ";
    out << "- place\n    ";
    for (int i = 0; i < keys; ++i)
        out << "key" << i + 1 << " ";
    out << "- key\n    ";
    for (int s = 0; s < shapes; ++s)
        out << "shape" << s + 1 << " ";
    out << "- shape)\n";

    out << "  (:init\n";
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (r + 1 < rows) {
                out << "    (conn " << pos(r, c) << " " << pos(r + 1, c)
                    << ") (conn " << pos(r + 1, c) << " " << pos(r, c)
                    << ")\n";
            }
            if (c + 1 < cols) {
                out << "    (conn " << pos(r, c) << " " << pos(r, c + 1)
                    << ") (conn " << pos(r, c + 1) << " " << pos(r, c)
                    << ")\n";
            }
        }
    for (auto [r, c] : all_cells) {
        if (locked_at(r, c)) {
            out << "    (locked " << pos(r, c) << ")\n";
            out << "    (lock-shape " << pos(r, c) << " shape"
                << (c / 2) % shapes + 1 << ")\n";
        } else {
            out << "    (open " << pos(r, c) << ")\n";
        }
    }
    for (int i = 0; i < keys; ++i)
        out << "    (key-shape key" << i + 1 << " shape" << i % shapes + 1
            << ")\n";
    out << "    (at-robot " << pos(robot_cell.first, robot_cell.second)
        << ")\n";
    out << "    (arm-empty)\n";
    for (int i = 0; i < keys; ++i)
        out << "    (at key" << i + 1 << " "
            << pos(key_cells[i].first, key_cells[i].second) << ")\n";
    out << "  )\n";

    out << "  (:goal (and\n";
    for (int i = 0; i < keys; ++i)
        out << "    (at key" << i + 1 << " "
            << pos(goal_cells[i].first, goal_cells[i].second) << ")\n";
    out << "  ))\n";
    out << ")\n";
    return out.str();
}

} // namespace sketchplan::domains
