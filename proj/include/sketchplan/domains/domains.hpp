#ifndef SKETCHPLAN_DOMAINS_DOMAINS_H
#define SKETCHPLAN_DOMAINS_DOMAINS_H

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sketchplan::domains {

struct ParamSpec {
    std::string name;
    int min_value = 0;
    int max_value = 0;
    int default_value = 0;
    std::string doc;
};

struct GenParams {
    std::map<std::string, int> values;
    std::uint64_t seed = 0;

    int at(const std::string &name) const { return values.at(name); }
};

/*
  One benchmark domain: static PDDL domain file, sketch file, parameter
  schema, and a deterministic instance generator. File paths resolve against
  the directory named by the SKETCHPLAN_DOMAINS env var when set, else the
  build-time domains directory.
*/
struct DomainPack {
    std::string id;
    int width_claim = 0;   // matches the sketch file's width directive
    std::vector<ParamSpec> params;
    std::string (*generate)(const GenParams &) = nullptr;

    std::string domain_file() const;
    std::string sketch_file() const;
    std::string schema_file() const;
    const ParamSpec *find_param(const std::string &name) const;
};

const std::vector<DomainPack> &packs();
const DomainPack *find_pack(const std::string &id);

/* Defaults for every knob plus the given seed. */
GenParams default_params(const DomainPack &pack, std::uint64_t seed);

/* Throws util::ParseError on unknown names or out-of-bounds values. */
void validate_params(const DomainPack &pack, const GenParams &params);

std::string generate(const DomainPack &pack, const GenParams &params);

/*
  Fixed instance lists backing the benchmark harness and the regression
  suite: benchmark_suite gives >= 10 desk-scale instances per domain,
  micro_suite gives exhaustively enumerable ones for the empirical checks.
*/
std::vector<GenParams> benchmark_suite(const DomainPack &pack);
std::vector<GenParams> micro_suite(const DomainPack &pack);

/* Per-domain generators (deterministic in params.seed). */
std::string generate_floortile(const GenParams &params);
std::string generate_tpp(const GenParams &params);
std::string generate_barman(const GenParams &params);
std::string generate_grid(const GenParams &params);
std::string generate_childsnack(const GenParams &params);
std::string generate_driverlog(const GenParams &params);
std::string generate_schedule(const GenParams &params);

} // namespace sketchplan::domains

#endif
