#include "sketchplan/domains/domains.hpp"

#include "sketchplan/util/rng.hpp"

#include <sstream>
#include <string>
#include <vector>

using namespace std;

namespace sketchplan::domains {

/*
  Ring of locations carrying both the link and the path relation in both
  directions, so trucks and drivers can always reach every place. Drivers,
  trucks, and packages start at random places; everyone gets a goal place,
  and package goals always differ from their start so each delivery needs a
  truck ride. All moves are reversible, hence every instance is solvable.
*/
string generate_driverlog(const GenParams &params) {
    int locations = params.at("locations");
    int drivers = params.at("drivers");
    int trucks = params.at("trucks");
    int packages = params.at("packages");
    util::Rng rng(params.seed);

    auto loc = [](int i) { return "loc" + to_string(i + 1); };

    vector<int> driver_start(drivers), truck_start(trucks);
    vector<int> package_start(packages), package_goal(packages);
    vector<int> driver_goal(drivers), truck_goal(trucks);
    for (int &p : driver_start)
        p = rng.below(locations);
    for (int &p : truck_start)
        p = rng.below(locations);
    for (int &p : driver_goal)
        p = rng.below(locations);
    for (int &p : truck_goal)
        p = rng.below(locations);
    for (int i = 0; i < packages; ++i) {
        package_start[i] = rng.below(locations);
        package_goal[i] = (package_start[i] + 1 + rng.below(locations - 1)) %
                          locations;
    }

    ostringstream out;
    out << "(define (problem driverlog-l" << locations << "-d" << drivers
        << "-t" << trucks << "-p" << packages << "-s" << params.seed << ")\n";
    out << "  (:domain driverlog)\n";
    out << "  (:objects\n    ";
    for (int i = 0; i < locations; ++i)
        out << loc(i) << " ";
    out << "- place\n    ";
    for (int i = 0; i < drivers; ++i)
        out << "driver" << i + 1 << " ";
    out << "- driver\n    ";
    for (int i = 0; i < trucks; ++i)
        out << "truck" << i + 1 << " ";
    out << "- truck\n    ";
    for (int i = 0; i < packages; ++i)
        out << "package" << i + 1 << " ";
    out << "- obj)\n";

    out << "  (:init\n";
    for (int i = 0; i < locations; ++i) {
        int j = (i + 1) % locations;
        out << "    (link " << loc(i) << " " << loc(j) << ") (link " << loc(j)
            << " " << loc(i) << ")\n";
        out << "    (path " << loc(i) << " " << loc(j) << ") (path " << loc(j)
            << " " << loc(i) << ")\n";
    }
    for (int i = 0; i < drivers; ++i) {
        out << "    (driver driver" << i + 1 << ")\n";
        out << "    (at driver" << i + 1 << " " << loc(driver_start[i])
            << ")\n";
    }
    for (int i = 0; i < trucks; ++i) {
        out << "    (truck truck" << i + 1 << ")\n";
        out << "    (at truck" << i + 1 << " " << loc(truck_start[i])
            << ")\n";
        out << "    (empty truck" << i + 1 << ")\n";
    }
    for (int i = 0; i < packages; ++i) {
        out << "    (obj package" << i + 1 << ")\n";
        out << "    (at package" << i + 1 << " " << loc(package_start[i])
            << ")\n";
    }
    out << "  )\n";

    out << "  (:goal (and\n";
    for (int i = 0; i < packages; ++i)
        out << "    (at package" << i + 1 << " " << loc(package_goal[i])
            << ")\n";
    for (int i = 0; i < trucks; ++i)
        out << "    (at truck" << i + 1 << " " << loc(truck_goal[i]) << ")\n";
    for (int i = 0; i < drivers; ++i)
        out << "    (at driver" << i + 1 << " " << loc(driver_goal[i])
            << ")\n";
    out << "  ))\n";
    out << ")\n";
    return out.str();
}

} // namespace sketchplan::domains
