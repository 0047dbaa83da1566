#include "sketchplan/domains/domains.hpp"

#include "sketchplan/util/rng.hpp"

#include <sstream>
#include <string>
#include <vector>

using namespace std;

namespace sketchplan::domains {

/*
  One machine of each kind. Each part draws a nonempty goal subset from
  {shape cylindrical, surface smooth or polished, painted some color}; each
  of the three goal kinds lands on at least one part.
  Parts start cold with raw surface and no paint; parts with a shape goal
  start flat or oval. Every goal is reachable with cold-only work steps
  (lathe, grind, polish, paint), so all instances are solvable; the roller
  offers a tempting but ruinous shortcut that heats the part for good.
*/
string generate_schedule(const GenParams &params) {
    int parts = params.at("parts");
    int colors = params.at("colors");
    util::Rng rng(params.seed);

    struct PartSpec {
        bool shape_goal = false;
        int surface_goal = -1;
        int color_goal = -1;
        string init_shape;
    };
    vector<PartSpec> specs(parts);
    for (auto &spec : specs) {
        while (!spec.shape_goal && spec.surface_goal < 0 &&
               spec.color_goal < 0) {
            spec.shape_goal = rng.below(2) == 1;
            spec.surface_goal = rng.below(3) - 1;
            spec.color_goal = rng.chance(1, 2) ? rng.below(colors) : -1;
        }
        if (spec.shape_goal)
            spec.init_shape = rng.below(2) == 1 ? "flat" : "oval";
        else
            spec.init_shape =
                vector<string>{"flat", "oval", "cylindrical"}[rng.below(3)];
    }

    /* Each goal predicate (shape, surface-condition, painted) must occur in
       the goal, so every instance exercises all three feature counters. */
    bool have_shape = false, have_surface = false, have_color = false;
    for (const auto &spec : specs) {
        have_shape = have_shape || spec.shape_goal;
        have_surface = have_surface || spec.surface_goal >= 0;
        have_color = have_color || spec.color_goal >= 0;
    }
    if (!have_shape) {
        PartSpec &spec = specs[rng.below(parts)];
        spec.shape_goal = true;
        spec.init_shape = rng.below(2) == 1 ? "flat" : "oval";
    }
    if (!have_surface)
        specs[rng.below(parts)].surface_goal = rng.below(2);
    if (!have_color)
        specs[rng.below(parts)].color_goal = rng.below(colors);

    ostringstream out;
    out << "(define (problem schedule-p" << parts << "-c" << colors << "-s"
        << params.seed << ")\n";
    out << "  (:domain schedule)\n";
    out << "  (:objects\n    ";
    for (int i = 0; i < parts; ++i)
        out << "part" << i + 1 << " ";
    out << "- part\n";
    out << "    lathe1 - lathe\n    roller1 - roller\n"
        << "    polisher1 - polisher\n    grinder1 - grinder\n"
        << "    painter1 - painter\n";
    out << "    cylindrical - cyl-shape\n    flat oval - shape-value\n";
    out << "    rough - rough-kind\n    smooth - smooth-kind\n"
        << "    polished - polished-kind\n    raw - raw-kind\n";
    out << "    no-color - bare-color\n    ";
    for (int i = 0; i < colors; ++i)
        out << "color" << i + 1 << " ";
    out << "- real-color\n";
    out << "    cold - cold-kind\n    hot - hot-kind)\n";

    out << "  (:init\n";
    for (const char *m :
         {"lathe1", "roller1", "polisher1", "grinder1", "painter1"})
        out << "    (free " << m << ")\n";
    for (int i = 0; i < parts; ++i) {
        out << "    (ready part" << i + 1 << ")\n";
        out << "    (shape part" << i + 1 << " " << specs[i].init_shape
            << ")\n";
        out << "    (surface-condition part" << i + 1 << " raw)\n";
        out << "    (painted part" << i + 1 << " no-color)\n";
        out << "    (temperature part" << i + 1 << " cold)\n";
    }
    out << "  )\n";

    out << "  (:goal (and\n";
    for (int i = 0; i < parts; ++i) {
        if (specs[i].shape_goal)
            out << "    (shape part" << i + 1 << " cylindrical)\n";
        if (specs[i].surface_goal == 0)
            out << "    (surface-condition part" << i + 1 << " smooth)\n";
        if (specs[i].surface_goal == 1)
            out << "    (surface-condition part" << i + 1 << " polished)\n";
        if (specs[i].color_goal >= 0)
            out << "    (painted part" << i + 1 << " color"
                << specs[i].color_goal + 1 << ")\n";
    }
    out << "  ))\n";
    out << ")\n";
    return out.str();
}

} // namespace sketchplan::domains
