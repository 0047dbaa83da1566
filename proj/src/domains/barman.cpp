#include "sketchplan/domains/domains.hpp"

#include "sketchplan/util/rng.hpp"

#include <sstream>
#include <string>
#include <vector>

using namespace std;

namespace sketchplan::domains {

/*
  Bar with two hands, one shaker (levels l0..l2), a dispenser per ingredient,
  and one shot glass per goal drink plus a few spares. Each cocktail names two
  distinct recipe ingredients. Goals put a specific drink into a specific
  shot; at least one goal is a plain ingredient poured straight from its
  dispenser. Everything is reversible (shots and the shaker can always be
  emptied and cleaned), so every instance is solvable.
*/
string generate_barman(const GenParams &params) {
    int cocktails = params.at("cocktails");
    int ingredients = params.at("ingredients");
    int extra_shots = params.at("extra_shots");
    int ingredient_goals = params.at("ingredient_goals");
    util::Rng rng(params.seed);

    int shots = cocktails + ingredient_goals + extra_shots;

    vector<pair<int, int>> recipes;
    for (int c = 0; c < cocktails; ++c) {
        int first = rng.below(ingredients);
        int second = rng.below(ingredients - 1);
        if (second >= first)
            ++second;
        recipes.emplace_back(first, second);
    }
    vector<int> ingredient_goal_drinks;
    for (int i = 0; i < ingredient_goals; ++i)
        ingredient_goal_drinks.push_back(rng.below(ingredients));

    auto shot = [](int i) { return "shot" + to_string(i + 1); };
    auto ing = [](int i) { return "ing" + to_string(i + 1); };
    auto cock = [](int i) { return "cock" + to_string(i + 1); };

    ostringstream out;
    out << "(define (problem barman-c" << cocktails << "-i" << ingredients
        << "-g" << ingredient_goals << "-s" << params.seed << ")\n";
    out << "  (:domain barman)\n";
    out << "  (:objects\n";
    out << "    hand1 hand2 - hand\n";
    out << "    l0 l1 l2 - level\n    ";
    for (int i = 0; i < shots; ++i)
        out << shot(i) << " ";
    out << "- shot\n    shaker1 - shaker\n    ";
    for (int i = 0; i < ingredients; ++i)
        out << ing(i) << " ";
    out << "- ingredient\n    ";
    for (int c = 0; c < cocktails; ++c)
        out << cock(c) << " ";
    out << "- cocktail)\n";

    out << "  (:init\n";
    out << "    (next l0 l1)\n    (next l1 l2)\n    (bottom l0)\n";
    out << "    (handempty hand1)\n    (handempty hand2)\n";
    for (int i = 0; i < shots; ++i)
        out << "    (ontable " << shot(i) << ") (empty " << shot(i)
            << ") (clean " << shot(i) << ")\n";
    out << "    (ontable shaker1) (empty shaker1) (clean shaker1)\n";
    out << "    (shaker-level shaker1 l0)\n";
    for (int i = 0; i < ingredients; ++i)
        out << "    (dispenses " << ing(i) << ")\n";
    for (int c = 0; c < cocktails; ++c) {
        out << "    (cocktail-part1 " << cock(c) << " " << ing(recipes[c].first)
            << ")\n";
        out << "    (cocktail-part2 " << cock(c) << " "
            << ing(recipes[c].second) << ")\n";
    }
    out << "  )\n";

    out << "  (:goal (and\n";
    int next_shot = 0;
    for (int i = 0; i < ingredient_goals; ++i, ++next_shot)
        out << "    (contains " << shot(next_shot) << " "
            << ing(ingredient_goal_drinks[i]) << ")\n";
    for (int c = 0; c < cocktails; ++c, ++next_shot)
        out << "    (contains " << shot(next_shot) << " " << cock(c) << ")\n";
    out << "  ))\n";
    out << ")\n";
    return out.str();
}

} // namespace sketchplan::domains
