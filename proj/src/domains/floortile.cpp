#include "sketchplan/domains/domains.hpp"

#include "sketchplan/util/rng.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <vector>

using namespace std;

namespace sketchplan::domains {

namespace {

string tile(int r, int c) {
    return "tile_" + to_string(r) + "_" + to_string(c);
}

} // namespace

/*
  Grid of rows x cols tiles, row 0 at the top. Every row except the bottom
  one must be painted in a two-color chessboard pattern; robots start on the
  bottom row, which never needs paint and serves as the escape lane. Painting
  top to bottom per column always works, so every instance is solvable.
*/
string generate_floortile(const GenParams &params) {
    int rows = params.at("rows");
    int cols = params.at("cols");
    int robots = params.at("robots");
    util::Rng rng(params.seed);

    int flip = rng.below(2);
    auto color_of = [&](int r, int c) {
        return (r + c + flip) % 2 == 0 ? string("white") : string("black");
    };

    vector<int> columns(cols);
    iota(columns.begin(), columns.end(), 0);
    rng.shuffle(columns);
    vector<int> robot_cols(columns.begin(), columns.begin() + robots);
    sort(robot_cols.begin(), robot_cols.end());

    ostringstream out;
    out << "(define (problem floortile-" << rows << "x" << cols << "-r"
        << robots << "-s" << params.seed << ")\n";
    out << "  (:domain floortile)\n";
    out << "  (:objects\n    ";
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            out << tile(r, c) << " ";
    out << "- tile\n    white black - color\n    ";
    for (int i = 0; i < robots; ++i)
        out << "bot" << i + 1 << " ";
    out << "- robot)\n";

    out << "  (:init\n";
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (r > 0)
                out << "    (up " << tile(r - 1, c) << " " << tile(r, c)
                    << ")\n";
            if (r + 1 < rows)
                out << "    (down " << tile(r + 1, c) << " " << tile(r, c)
                    << ")\n";
            if (c > 0)
                out << "    (left " << tile(r, c - 1) << " " << tile(r, c)
                    << ")\n";
            if (c + 1 < cols)
                out << "    (right " << tile(r, c + 1) << " " << tile(r, c)
                    << ")\n";
        }
    }
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            bool occupied = false;
            if (r == rows - 1)
                for (int rc : robot_cols)
                    occupied |= rc == c;
            if (!occupied)
                out << "    (clear " << tile(r, c) << ")\n";
        }
    }
    for (int i = 0; i < robots; ++i) {
        out << "    (robot-at bot" << i + 1 << " "
            << tile(rows - 1, robot_cols[i]) << ")\n";
        out << "    (robot-has bot" << i + 1 << " "
            << color_of(rows - 2, robot_cols[i]) << ")\n";
    }
    out << "    (available-color white)\n";
    out << "    (available-color black)\n";
    out << "  )\n";

    out << "  (:goal (and\n";
    for (int r = 0; r + 1 < rows; ++r)
        for (int c = 0; c < cols; ++c)
            out << "    (painted " << tile(r, c) << " " << color_of(r, c)
                << ")\n";
    out << "  ))\n";
    out << ")\n";
    return out.str();
}

} // namespace sketchplan::domains
