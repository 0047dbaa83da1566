#include "sketchplan/domains/domains.hpp"

#include "sketchplan/util/rng.hpp"

#include <sstream>
#include <vector>

using namespace std;

namespace sketchplan::domains {

/*
  One depot plus a ring of markets. Every good has a stored goal of one or
  more units; its full demand is stocked at one market, with random extra
  stock elsewhere, so buying demand units and storing them always works.
*/
string generate_tpp(const GenParams &params) {
    int markets = params.at("markets");
    int goods = params.at("goods");
    int levels = params.at("levels");
    int trucks = params.at("trucks");
    util::Rng rng(params.seed);

    auto level = [](int i) { return "level" + to_string(i); };
    auto market = [](int i) { return "market" + to_string(i); };

    vector<int> demand(goods), home(goods);
    vector<vector<int>> stock(goods, vector<int>(markets, 0));
    for (int g = 0; g < goods; ++g) {
        demand[g] = rng.range(1, levels - 1);
        home[g] = rng.below(markets);
        stock[g][home[g]] = demand[g];
        for (int m = 0; m < markets; ++m)
            if (m != home[g] && rng.chance(1, 3))
                stock[g][m] = rng.range(1, levels - 1);
    }
    vector<int> truck_at(trucks);
    for (int t = 0; t < trucks; ++t)
        truck_at[t] = rng.below(markets + 1);   // 0 = depot

    vector<string> places;
    places.push_back("depot1");
    for (int m = 0; m < markets; ++m)
        places.push_back(market(m + 1));

    ostringstream out;
    out << "(define (problem tpp-m" << markets << "-g" << goods << "-l"
        << levels << "-s" << params.seed << ")\n";
    out << "  (:domain tpp)\n";
    out << "  (:objects\n    ";
    for (const string &p : places)
        out << p << " ";
    out << "- market\n    ";
    for (int g = 0; g < goods; ++g)
        out << "good" << g + 1 << " ";
    out << "- good\n    ";
    for (int l = 0; l < levels; ++l)
        out << level(l) << " ";
    out << "- level\n    ";
    for (int t = 0; t < trucks; ++t)
        out << "truck" << t + 1 << " ";
    out << "- truck)\n";

    out << "  (:init\n";
    out << "    (depot depot1)\n";
    int n = static_cast<int>(places.size());
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        out << "    (connected " << places[i] << " " << places[j] << ")\n";
        out << "    (connected " << places[j] << " " << places[i] << ")\n";
    }
    for (int l = 1; l < levels; ++l)
        out << "    (next " << level(l) << " " << level(l - 1) << ")\n";
    for (int t = 0; t < trucks; ++t)
        out << "    (at truck" << t + 1 << " " << places[truck_at[t]]
            << ")\n";
    for (int g = 0; g < goods; ++g) {
        out << "    (stored good" << g + 1 << " " << level(0) << ")\n";
        for (int t = 0; t < trucks; ++t)
            out << "    (loaded good" << g + 1 << " truck" << t + 1 << " "
                << level(0) << ")\n";
        for (int m = 0; m < markets; ++m)
            out << "    (on-sale good" << g + 1 << " " << market(m + 1)
                << " " << level(stock[g][m]) << ")\n";
    }
    out << "  )\n";

    out << "  (:goal (and\n";
    for (int g = 0; g < goods; ++g)
        out << "    (stored good" << g + 1 << " " << level(demand[g])
            << ")\n";
    out << "  ))\n";
    out << ")\n";
    return out.str();
}

} // namespace sketchplan::domains
