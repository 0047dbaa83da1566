#ifndef SKETCHPLAN_CLI_CLI_H
#define SKETCHPLAN_CLI_CLI_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sketchplan::cli {

/* Exit codes; every verb's outcome maps onto exactly one of these. */
constexpr int kExitSolved = 0;     // solved / valid / check passed
constexpr int kExitUnsolved = 1;   // exhausted, deadend, invalid plan, failed check
constexpr int kExitUsage = 2;      // bad flags or unparsable inputs
constexpr int kExitBudget = 3;     // node budget exceeded

struct RunConfig {
    std::string algorithm = "siwr";        // bfs | iw | siw | siwr
    int max_width = 2;                     // <= search::kMaxWidthCap
    std::optional<std::int64_t> budget;    // unset: SKETCHPLAN_BUDGET env, else default
    std::string sketch_path;               // required for siwr
    bool strict = false;                   // refuse sketches that may not terminate
    std::string out_path;                  // plan file; stdout when empty
    std::string stats_path;                // CSV; a .jsonl stream goes alongside
};

/* One run's statistics line, serialized to CSV and JSON. */
struct StatsRecord {
    std::string domain;
    std::string instance;
    std::string algorithm;
    bool solved = false;
    std::string status;                    // solved/exhausted/budget-exceeded/deadend/...
    int plan_length = 0;
    double wall_seconds = 0.0;
    std::int64_t expanded = 0;
    std::int64_t generated = 0;
    std::vector<int> episode_widths;
    std::vector<std::string> rule_ids;     // terminating rule per episode
    std::optional<double> average_width;   // present iff solved via siw/siwr
    std::optional<int> maximum_width;
};

std::string stats_csv_header();
std::string stats_csv_row(const StatsRecord &record);
std::string stats_json_record(const StatsRecord &record);

/* --budget beats the SKETCHPLAN_BUDGET env var beats the built-in default. */
std::int64_t resolve_budget(const std::optional<std::int64_t> &flag);

int cmd_plan(const RunConfig &config, const std::string &domain_path,
             const std::string &problem_path);

int cmd_validate(const std::string &domain_path, const std::string &problem_path,
                 const std::string &plan_path);

/*
  Runs every (instance, algorithm) pair of the JSON manifest, or the built-in
  benchmark suite with siw and siwr when manifest_path is empty. Writes the
  stats CSV/JSONL, prints an aligned per-domain summary, and, when out_dir is
  nonempty, one problem file and one plan file per solved run. Solved plans
  are replayed in-process; a replay failure makes the exit status 1.
*/
int cmd_bench(const std::string &manifest_path, const std::string &stats_path,
              const std::string &out_dir, int jobs,
              const std::optional<std::int64_t> &budget, int max_width);

/*
  Termination and goal-separation report for a sketch over a domain's
  micro-instances; histogram additionally runs siwr on them and bins the
  effective episode widths.
*/
int cmd_check(const std::string &domain_id, const std::string &sketch_path,
              bool strict, bool histogram, int max_width);

int cmd_gen(const std::string &domain_id,
            const std::vector<std::string> &param_args, std::uint64_t seed,
            const std::string &out_path);

int list_domains();

/* Parses argv and dispatches to one verb; the entry point used by main. */
int run_cli(int argc, char **argv);

} // namespace sketchplan::cli

#endif
