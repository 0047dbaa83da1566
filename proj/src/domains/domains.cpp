#include "sketchplan/domains/domains.hpp"

#include "sketchplan/util/error.hpp"

#include <cstdlib>
#include <string>
#include <vector>

using namespace std;

namespace sketchplan::domains {

namespace {

string domains_root() {
    if (const char *env = getenv("SKETCHPLAN_DOMAINS"); env && *env)
        return env;
    return SKETCHPLAN_DOMAINS_DIR;
}

vector<DomainPack> make_packs() {
    vector<DomainPack> table;

    table.push_back(
        {"barman",
         2,
         {{"cocktails", 1, 3, 2, "cocktails with recipes and goals"},
          {"ingredients", 2, 4, 3, "dispensable ingredients"},
          {"extra_shots", 0, 2, 1, "spare shots beyond the goal ones"},
          {"ingredient_goals", 1, 2, 1,
           "shots to fill straight from a dispenser"}},
         generate_barman});

    table.push_back(
        {"childsnack",
         1,
         {{"allergic", 1, 3, 2, "gluten-allergic children"},
          {"regular", 1, 4, 2, "children without allergy"},
          {"trays", 1, 2, 1, "serving trays"},
          {"tables", 1, 3, 2, "tables where children wait"}},
         generate_childsnack});

    table.push_back(
        {"driverlog",
         1,
         {{"locations", 3, 8, 5, "places on the ring map"},
          {"drivers", 1, 2, 1, "drivers"},
          {"trucks", 1, 2, 1, "trucks"},
          {"packages", 1, 4, 2, "packages to deliver"}},
         generate_driverlog});

    table.push_back(
        {"floortile",
         2,
         {{"rows", 3, 7, 5, "grid rows including the unpainted bottom row"},
          {"cols", 2, 6, 3, "grid columns"},
          {"robots", 1, 2, 1, "painting robots"}},
         generate_floortile});

    table.push_back(
        {"grid",
         1,
         {{"rows", 2, 6, 3, "grid rows"},
          {"cols", 2, 7, 4, "grid columns"},
          {"keys", 1, 4, 2, "keys to deliver"},
          {"locks", 0, 3, 2, "locked places on the top row"},
          {"shapes", 1, 3, 2, "key and lock shapes"}},
         generate_grid});

    table.push_back(
        {"schedule",
         2,
         {{"parts", 1, 6, 3, "parts to machine"},
          {"colors", 1, 3, 2, "paint colors"}},
         generate_schedule});

    table.push_back(
        {"tpp",
         1,
         {{"markets", 1, 4, 2, "markets selling goods"},
          {"goods", 1, 5, 3, "goods to buy and store"},
          {"levels", 2, 7, 4, "quantity levels"},
          {"trucks", 1, 2, 1, "trucks"}},
         generate_tpp});

    return table;
}

} // namespace

string DomainPack::domain_file() const {
    return domains_root() + "/" + id + "/domain.pddl";
}

string DomainPack::sketch_file() const {
    return domains_root() + "/" + id + "/sketch.sk";
}

string DomainPack::schema_file() const {
    return domains_root() + "/" + id + "/gen.schema";
}

const ParamSpec *DomainPack::find_param(const string &name) const {
    for (const ParamSpec &spec : params)
        if (spec.name == name)
            return &spec;
    return nullptr;
}

const vector<DomainPack> &packs() {
    static const vector<DomainPack> table = make_packs();
    return table;
}

const DomainPack *find_pack(const string &id) {
    for (const DomainPack &pack : packs())
        if (pack.id == id)
            return &pack;
    return nullptr;
}

GenParams default_params(const DomainPack &pack, uint64_t seed) {
    GenParams params;
    params.seed = seed;
    for (const ParamSpec &spec : pack.params)
        params.values[spec.name] = spec.default_value;
    return params;
}

void validate_params(const DomainPack &pack, const GenParams &params) {
    for (const auto &[name, value] : params.values) {
        const ParamSpec *spec = pack.find_param(name);
        if (!spec)
            throw util::ParseError("unknown parameter '" + name +
                                   "' for domain " + pack.id);
        if (value < spec->min_value || value > spec->max_value)
            throw util::ParseError(
                "parameter " + name + "=" + to_string(value) +
                " out of range [" + to_string(spec->min_value) + ", " +
                to_string(spec->max_value) + "] for domain " + pack.id);
    }
    for (const ParamSpec &spec : pack.params)
        if (!params.values.count(spec.name))
            throw util::ParseError("missing parameter '" + spec.name +
                                   "' for domain " + pack.id);

    auto at = [&](const char *name) { return params.values.at(name); };
    if (pack.id == "grid") {
        if (at("cols") < 2 * at("locks") - 1)
            throw util::ParseError(
                "grid needs cols >= 2*locks - 1 so locks stay separated");
        if (at("keys") < at("locks"))
            throw util::ParseError(
                "grid needs keys >= locks so every lock has a matching key");
        if (at("rows") * at("cols") - at("locks") < at("keys") + 1)
            throw util::ParseError(
                "grid needs enough open cells for the robot and all keys");
    }
    if (pack.id == "floortile" && at("robots") > at("cols"))
        throw util::ParseError(
            "floortile needs robots <= cols, one start column each");
}

string generate(const DomainPack &pack, const GenParams &params) {
    validate_params(pack, params);
    return pack.generate(params);
}

namespace {

GenParams entry(const DomainPack &pack, uint64_t seed,
                const vector<pair<const char *, int>> &overrides) {
    GenParams params = default_params(pack, seed);
    for (const auto &[name, value] : overrides)
        params.values[name] = value;
    return params;
}

} // namespace

vector<GenParams> benchmark_suite(const DomainPack &pack) {
    const DomainPack &p = pack;
    if (pack.id == "barman")
        return {
            entry(p, 11, {{"cocktails", 1}, {"ingredients", 2}, {"extra_shots", 0}}),
            entry(p, 12, {{"cocktails", 1}, {"ingredients", 2}}),
            entry(p, 13, {{"cocktails", 1}, {"ingredients", 3}}),
            entry(p, 14, {{"cocktails", 2}, {"extra_shots", 0}}),
            entry(p, 15, {{"cocktails", 2}}),
            entry(p, 16, {{"cocktails", 2}, {"ingredient_goals", 2}}),
            entry(p, 17, {{"cocktails", 2}, {"ingredients", 4}}),
            entry(p, 18, {{"cocktails", 3}}),
            entry(p, 19, {{"cocktails", 3}, {"ingredients", 4}, {"extra_shots", 0}}),
            entry(p, 20, {{"cocktails", 3}, {"ingredients", 4}, {"extra_shots", 2}, {"ingredient_goals", 2}}),
        };
    if (pack.id == "childsnack")
        return {
            entry(p, 21, {{"allergic", 1}, {"regular", 1}, {"tables", 1}}),
            entry(p, 22, {{"allergic", 1}, {"regular", 2}, {"tables", 1}}),
            entry(p, 23, {{"allergic", 2}, {"regular", 2}, {"tables", 1}}),
            entry(p, 24, {{"allergic", 2}, {"regular", 2}}),
            entry(p, 25, {{"allergic", 1}, {"regular", 3}}),
            entry(p, 26, {{"allergic", 2}, {"regular", 3}}),
            entry(p, 27, {{"allergic", 2}, {"regular", 2}, {"trays", 2}}),
            entry(p, 28, {{"allergic", 3}, {"regular", 3}}),
            entry(p, 29, {{"allergic", 2}, {"regular", 4}, {"tables", 3}}),
            entry(p, 30, {{"allergic", 3}, {"regular", 4}, {"trays", 2}, {"tables", 3}}),
        };
    if (pack.id == "driverlog")
        return {
            entry(p, 31, {{"locations", 3}, {"packages", 1}}),
            entry(p, 32, {{"locations", 4}, {"packages", 1}}),
            entry(p, 33, {{"locations", 4}}),
            entry(p, 34, {{"locations", 5}}),
            entry(p, 35, {{"locations", 5}, {"trucks", 2}}),
            entry(p, 36, {{"locations", 5}, {"drivers", 2}}),
            entry(p, 37, {{"locations", 6}, {"packages", 3}}),
            entry(p, 38, {{"locations", 6}, {"drivers", 2}, {"trucks", 2}}),
            entry(p, 39, {{"locations", 7}, {"packages", 3}}),
            entry(p, 40, {{"locations", 8}, {"drivers", 2}, {"trucks", 2}, {"packages", 4}}),
        };
    if (pack.id == "floortile")
        return {
            entry(p, 41, {{"rows", 3}, {"cols", 2}}),
            entry(p, 42, {{"rows", 3}, {"cols", 3}}),
            entry(p, 43, {{"rows", 4}, {"cols", 2}}),
            entry(p, 44, {{"rows", 4}, {"cols", 3}}),
            entry(p, 45, {{"rows", 4}, {"cols", 3}, {"robots", 2}}),
            entry(p, 46, {{"rows", 5}, {"cols", 2}}),
            entry(p, 47, {{"rows", 5}, {"cols", 3}}),
            entry(p, 48, {{"rows", 5}, {"cols", 3}, {"robots", 2}}),
            entry(p, 49, {{"rows", 4}, {"cols", 4}}),
            entry(p, 50, {{"rows", 5}, {"cols", 4}}),
        };
    if (pack.id == "grid")
        return {
            entry(p, 51, {{"rows", 2}, {"cols", 3}, {"keys", 1}, {"locks", 1}, {"shapes", 1}}),
            entry(p, 52, {{"rows", 3}, {"cols", 3}, {"keys", 1}, {"locks", 1}, {"shapes", 1}}),
            entry(p, 53, {{"rows", 3}, {"cols", 4}, {"keys", 2}, {"locks", 1}}),
            entry(p, 54, {{"rows", 3}, {"cols", 4}}),
            entry(p, 55, {{"rows", 2}, {"cols", 5}}),
            entry(p, 56, {{"rows", 4}, {"cols", 4}, {"shapes", 1}}),
            entry(p, 57, {{"rows", 3}, {"cols", 5}, {"keys", 3}, {"locks", 3}}),
            entry(p, 58, {{"rows", 4}, {"cols", 5}, {"shapes", 3}}),
            entry(p, 59, {{"rows", 3}, {"cols", 6}, {"keys", 3}}),
            entry(p, 60, {{"rows", 4}, {"cols", 6}, {"keys", 4}, {"locks", 3}, {"shapes", 3}}),
        };
    if (pack.id == "schedule")
        return {
            entry(p, 61, {{"parts", 1}, {"colors", 1}}),
            entry(p, 62, {{"parts", 2}, {"colors", 1}}),
            entry(p, 63, {{"parts", 2}}),
            entry(p, 64, {{"parts", 3}, {"colors", 1}}),
            entry(p, 65, {{"parts", 3}}),
            entry(p, 66, {{"parts", 3}, {"colors", 3}}),
            entry(p, 67, {{"parts", 4}}),
            entry(p, 68, {{"parts", 4}, {"colors", 3}}),
            entry(p, 69, {{"parts", 5}}),
            entry(p, 70, {{"parts", 6}}),
        };
    if (pack.id == "tpp")
        return {
            entry(p, 71, {{"markets", 1}, {"goods", 2}, {"levels", 3}}),
            entry(p, 72, {{"markets", 1}, {"goods", 3}}),
            entry(p, 73, {{"markets", 2}, {"goods", 2}}),
            entry(p, 74, {{"markets", 2}}),
            entry(p, 75, {{"markets", 2}, {"levels", 5}}),
            entry(p, 76, {{"markets", 2}, {"goods", 4}}),
            entry(p, 77, {{"markets", 3}}),
            entry(p, 78, {{"markets", 2}, {"trucks", 2}}),
            entry(p, 79, {{"markets", 3}, {"goods", 4}, {"levels", 5}}),
            entry(p, 80, {{"markets", 4}, {"goods", 3}, {"levels", 6}}),
        };
    return {};
}

vector<GenParams> micro_suite(const DomainPack &pack) {
    const DomainPack &p = pack;
    if (pack.id == "barman")
        return {
            entry(p, 111, {{"cocktails", 1}, {"ingredients", 2}, {"extra_shots", 0}}),
        };
    if (pack.id == "childsnack")
        return {
            entry(p, 121, {{"allergic", 1}, {"regular", 1}, {"tables", 1}}),
            entry(p, 122, {{"allergic", 1}, {"regular", 1}, {"tables", 1}}),
            entry(p, 123, {{"allergic", 1}, {"regular", 2}, {"tables", 1}}),
        };
    if (pack.id == "driverlog")
        return {
            entry(p, 131, {{"locations", 3}, {"packages", 1}}),
            entry(p, 132, {{"locations", 3}, {"packages", 1}}),
            entry(p, 133, {{"locations", 4}, {"packages", 1}}),
        };
    if (pack.id == "floortile")
        return {
            entry(p, 141, {{"rows", 3}, {"cols", 2}}),
            entry(p, 142, {{"rows", 3}, {"cols", 2}}),
            entry(p, 143, {{"rows", 3}, {"cols", 3}}),
        };
    if (pack.id == "grid")
        return {
            entry(p, 151, {{"rows", 2}, {"cols", 2}, {"keys", 1}, {"locks", 1}, {"shapes", 1}}),
            entry(p, 152, {{"rows", 2}, {"cols", 2}, {"keys", 1}, {"locks", 1}, {"shapes", 1}}),
            entry(p, 153, {{"rows", 2}, {"cols", 3}, {"keys", 1}, {"locks", 1}, {"shapes", 1}}),
            entry(p, 154, {{"rows", 3}, {"cols", 3}, {"keys", 2}, {"locks", 1}, {"shapes", 2}}),
        };
    if (pack.id == "schedule")
        return {
            entry(p, 161, {{"parts", 1}, {"colors", 1}}),
            entry(p, 162, {{"parts", 1}, {"colors", 1}}),
            entry(p, 163, {{"parts", 1}, {"colors", 2}}),
        };
    if (pack.id == "tpp")
        return {
            entry(p, 171, {{"markets", 1}, {"goods", 1}, {"levels", 2}}),
            entry(p, 172, {{"markets", 1}, {"goods", 2}, {"levels", 3}}),
            entry(p, 173, {{"markets", 2}, {"goods", 2}, {"levels", 3}}),
        };
    return {};
}

} // namespace sketchplan::domains
