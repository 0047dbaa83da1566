#include "sketchplan/cli/cli.hpp"

#include "sketchplan/domains/domains.hpp"
#include "sketchplan/pddl/parser.hpp"
#include "sketchplan/search/search.hpp"
#include "sketchplan/sketch/checks.hpp"
#include "sketchplan/sketch/semantics.hpp"
#include "sketchplan/util/error.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <thread>
#include <utility>

using namespace std;
namespace fs = std::filesystem;

namespace sketchplan::cli {

namespace {

string fmt_double(double value, int precision) {
    ostringstream out;
    out << fixed << setprecision(precision) << value;
    return out.str();
}

template <typename T>
string join(const vector<T> &items, const char *sep) {
    ostringstream out;
    for (size_t i = 0; i < items.size(); ++i) {
        if (i > 0)
            out << sep;
        out << items[i];
    }
    return out.str();
}

pddl::GroundTask load_task(const string &domain_path, const string &problem_path) {
    pddl::DomainDef domain = pddl::parse_domain(pddl::read_file(domain_path));
    pddl::ProblemDef problem =
        pddl::parse_problem(pddl::read_file(problem_path), domain);
    return pddl::ground(domain, problem);
}

string render_plan(const pddl::GroundTask &task, const vector<int> &plan) {
    ostringstream out;
    for (int action : plan)
        out << task.action_name(action) << "\n";
    return out.str();
}

void write_text_file(const string &path, const string &text) {
    ofstream out(path);
    if (!out)
        throw util::ResourceError("cannot open " + path + " for writing");
    out << text;
    if (!out)
        throw util::ResourceError("write to " + path + " failed");
}

/*
  Plan files list one action per line, "(name arg ...)"; `;` starts a comment.
  Lines are lowercased and whitespace-normalized before lookup.
*/
vector<string> parse_plan_lines(const string &text) {
    vector<string> steps;
    istringstream in(text);
    string line;
    while (getline(in, line)) {
        if (size_t semi = line.find(';'); semi != string::npos)
            line.erase(semi);
        string step;
        for (char c : line) {
            if (isspace(static_cast<unsigned char>(c))) {
                if (!step.empty() && step.back() != ' ' && step.back() != '(')
                    step += ' ';
            } else {
                step += static_cast<char>(tolower(static_cast<unsigned char>(c)));
            }
        }
        while (!step.empty() && step.back() == ' ')
            step.pop_back();
        if (!step.empty())
            steps.push_back(move(step));
    }
    return steps;
}

struct RunOutcome {
    search::SearchResult result;
    search::SubproblemTrace trace;
    bool has_trace = false;        // siw and siwr runs carry episode records
    string status_label;           // status_name(), or "deadend"/"boundary-repeat"
    string failure;                // diagnostic for the two siwr failure modes
};

RunOutcome execute(const pddl::GroundTask &task, const string &algorithm,
                   int max_width, int64_t budget, const string &sketch_path) {
    RunOutcome out;
    auto top_goal = [&task](const pddl::State &s) { return task.is_goal(s); };
    if (algorithm == "bfs") {
        out.result = search::bfs_optimal(task, task.s0, top_goal, budget);
    } else if (algorithm == "iw") {
        out.result = search::iw(task, task.s0, top_goal, max_width, budget);
    } else if (algorithm == "siw") {
        tie(out.result, out.trace) = search::siw(task, max_width, budget);
        out.has_trace = true;
    } else if (algorithm == "siwr") {
        dl::Pool pool;
        sketch::Sketch sk = sketch::parse_sketch_file(sketch_path, pool);
        sketch::SketchRunner runner(sk, pool, task);
        out.has_trace = true;
        try {
            tie(out.result, out.trace) = search::siwr(task, runner, max_width, budget);
        } catch (const search::SketchDeadend &e) {
            out.result.status = search::Status::Exhausted;
            out.status_label = "deadend";
            out.failure = e.what();
            return out;
        } catch (const search::BoundaryRepeat &e) {
            out.result.status = search::Status::Exhausted;
            out.status_label = "boundary-repeat";
            out.failure = e.what();
            return out;
        }
    } else {
        throw util::ParseError("unknown algorithm '" + algorithm + "'");
    }
    out.status_label = search::status_name(out.result.status);
    return out;
}

StatsRecord make_record(const string &domain, const string &instance,
                        const string &algorithm, const RunOutcome &outcome,
                        double wall_seconds) {
    StatsRecord rec;
    rec.domain = domain;
    rec.instance = instance;
    rec.algorithm = algorithm;
    rec.solved = outcome.result.solved();
    rec.status = outcome.status_label;
    rec.plan_length = outcome.result.plan_length();
    rec.wall_seconds = wall_seconds;
    rec.expanded = outcome.result.expanded;
    rec.generated = outcome.result.generated;
    if (outcome.has_trace) {
        for (const search::EpisodeRecord &e : outcome.trace.episodes) {
            rec.episode_widths.push_back(e.width);
            rec.rule_ids.push_back(e.rule_id);
        }
        if (rec.solved) {
            if (!outcome.trace.episodes.empty()) {
                auto [aw, mw] = search::effective_width_stats(outcome.trace);
                rec.average_width = aw;
                rec.maximum_width = mw;
            } else {
                rec.average_width = 0.0;
                rec.maximum_width = 0;
            }
        }
    } else if (rec.solved && outcome.result.effective_width) {
        rec.episode_widths.push_back(*outcome.result.effective_width);
    }
    return rec;
}

int exit_code_for(const search::SearchResult &result) {
    switch (result.status) {
    case search::Status::Solved: return kExitSolved;
    case search::Status::Exhausted: return kExitUnsolved;
    case search::Status::BudgetExceeded: return kExitBudget;
    }
    return kExitUnsolved;
}

void write_stats_files(const string &stats_path, const vector<StatsRecord> &records) {
    ostringstream csv;
    csv << stats_csv_header() << "\n";
    for (const StatsRecord &rec : records)
        csv << stats_csv_row(rec) << "\n";
    write_text_file(stats_path, csv.str());

    fs::path jsonl = fs::path(stats_path);
    jsonl.replace_extension(".jsonl");
    ostringstream stream;
    for (const StatsRecord &rec : records)
        stream << stats_json_record(rec) << "\n";
    write_text_file(jsonl.string(), stream.str());
}

void print_run_summary(ostream &out, const StatsRecord &rec) {
    out << "status: " << rec.status << "\n"
        << "plan length: " << rec.plan_length << "\n"
        << "expanded: " << rec.expanded << ", generated: " << rec.generated
        << ", wall: " << fmt_double(rec.wall_seconds, 3) << "s\n";
    if (!rec.episode_widths.empty()) {
        out << "episode widths: [" << join(rec.episode_widths, " ") << "]";
        if (rec.average_width)
            out << ", AW " << fmt_double(*rec.average_width, 2) << ", MW "
                << *rec.maximum_width;
        out << "\n";
    }
    if (!rec.rule_ids.empty())
        out << "episode rules: [" << join(rec.rule_ids, " ") << "]\n";
}

} // namespace

string stats_csv_header() {
    return "domain,instance,algorithm,solved,status,plan_length,wall_seconds,"
           "expanded,generated,episode_widths,average_width,maximum_width,rule_ids";
}

string stats_csv_row(const StatsRecord &rec) {
    ostringstream out;
    out << rec.domain << ',' << rec.instance << ',' << rec.algorithm << ','
        << (rec.solved ? "true" : "false") << ',' << rec.status << ','
        << rec.plan_length << ',' << fmt_double(rec.wall_seconds, 4) << ','
        << rec.expanded << ',' << rec.generated << ','
        << join(rec.episode_widths, ";") << ',';
    if (rec.average_width)
        out << fmt_double(*rec.average_width, 3);
    out << ',';
    if (rec.maximum_width)
        out << *rec.maximum_width;
    out << ',' << join(rec.rule_ids, ";");
    return out.str();
}

string stats_json_record(const StatsRecord &rec) {
    nlohmann::json j;
    j["domain"] = rec.domain;
    j["instance"] = rec.instance;
    j["algorithm"] = rec.algorithm;
    j["solved"] = rec.solved;
    j["status"] = rec.status;
    j["plan_length"] = rec.plan_length;
    j["wall_seconds"] = rec.wall_seconds;
    j["expanded"] = rec.expanded;
    j["generated"] = rec.generated;
    j["episode_widths"] = rec.episode_widths;
    j["rule_ids"] = rec.rule_ids;
    if (rec.average_width)
        j["average_width"] = *rec.average_width;
    else
        j["average_width"] = nullptr;
    if (rec.maximum_width)
        j["maximum_width"] = *rec.maximum_width;
    else
        j["maximum_width"] = nullptr;
    return j.dump();
}

int64_t resolve_budget(const optional<int64_t> &flag) {
    if (flag) {
        if (*flag <= 0)
            throw util::ParseError("--budget must be positive");
        return *flag;
    }
    if (const char *env = getenv("SKETCHPLAN_BUDGET"); env && *env) {
        char *end = nullptr;
        long long value = strtoll(env, &end, 10);
        if (!end || *end != '\0' || value <= 0)
            throw util::ParseError("SKETCHPLAN_BUDGET must be a positive integer, got '" +
                                   string(env) + "'");
        return value;
    }
    return search::kDefaultBudget;
}

int cmd_plan(const RunConfig &config, const string &domain_path,
             const string &problem_path) {
    try {
        int64_t budget = resolve_budget(config.budget);
        pddl::GroundTask task = load_task(domain_path, problem_path);

        if (config.algorithm == "siwr") {
            if (config.sketch_path.empty())
                throw util::ParseError("--sketch is required for siwr");
            dl::Pool pool;
            sketch::Sketch sk = sketch::parse_sketch_file(config.sketch_path, pool);
            sketch::TerminationReport term = sketch::check_termination(sk);
            if (!term.terminating()) {
                if (config.strict) {
                    cerr << "sketchplan: sketch termination unknown; "
                         << "refusing to plan under --strict\n";
                    return kExitUnsolved;
                }
                cerr << "sketchplan: warning: sketch termination unknown\n";
            }
        }

        auto start = chrono::steady_clock::now();
        RunOutcome outcome = execute(task, config.algorithm, config.max_width,
                                     budget, config.sketch_path);
        double seconds = chrono::duration<double>(
                             chrono::steady_clock::now() - start).count();

        if (!outcome.failure.empty())
            cerr << "sketchplan: " << outcome.failure << "\n";

        StatsRecord rec = make_record(task.domain.name, task.problem.name,
                                      config.algorithm, outcome, seconds);
        print_run_summary(cerr, rec);

        if (outcome.result.solved()) {
            string plan_text = render_plan(task, outcome.result.plan);
            if (config.out_path.empty())
                cout << plan_text;
            else
                write_text_file(config.out_path, plan_text);
        }
        if (!config.stats_path.empty())
            write_stats_files(config.stats_path, {rec});

        return exit_code_for(outcome.result);
    } catch (const util::ParseError &e) {
        cerr << "sketchplan: " << e.what() << "\n";
        return kExitUsage;
    } catch (const util::TypeError &e) {
        cerr << "sketchplan: " << e.what() << "\n";
        return kExitUsage;
    } catch (const util::ResourceError &e) {
        cerr << "sketchplan: " << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_validate(const string &domain_path, const string &problem_path,
                 const string &plan_path) {
    try {
        pddl::GroundTask task = load_task(domain_path, problem_path);
        vector<string> steps = parse_plan_lines(pddl::read_file(plan_path));

        map<string, int> by_name;
        for (size_t i = 0; i < task.actions.size(); ++i)
            by_name[task.action_name(static_cast<int>(i))] = static_cast<int>(i);

        pddl::State s = task.s0;
        for (size_t i = 0; i < steps.size(); ++i) {
            auto it = by_name.find(steps[i]);
            if (it == by_name.end()) {
                cerr << "invalid at step " << i << ": unknown action " << steps[i]
                     << "\n";
                return kExitUnsolved;
            }
            const pddl::GroundAction &a = task.actions[it->second];
            if (!task.is_applicable(a, s)) {
                cerr << "invalid at step " << i << ": inapplicable action "
                     << steps[i] << "\n";
                return kExitUnsolved;
            }
            s = task.apply(a, s);
        }
        if (!task.is_goal(s)) {
            cerr << "invalid: final state does not satisfy the goal\n";
            return kExitUnsolved;
        }
        cout << "valid plan: " << steps.size() << " steps\n";
        return kExitSolved;
    } catch (const util::ParseError &e) {
        cerr << "sketchplan: " << e.what() << "\n";
        return kExitUsage;
    } catch (const util::TypeError &e) {
        cerr << "sketchplan: " << e.what() << "\n";
        return kExitUsage;
    } catch (const util::ResourceError &e) {
        cerr << "sketchplan: " << e.what() << "\n";
        return kExitUsage;
    }
}

namespace {

struct BenchInstance {
    string domain_id;
    string instance_name;
    string sketch_path;
    string problem_text;
    shared_ptr<pddl::GroundTask> task;
};

struct BenchRun {
    size_t instance = 0;   // index into the instance list
    string algorithm;
};

/* Manifest: JSON array (or {"runs": [...]}) of
   {"domain": id, "seed": n, "params": {name: value}, "algorithms": [...]}. */
vector<pair<const domains::DomainPack *, pair<domains::GenParams, vector<string>>>>
read_manifest(const string &path) {
    vector<pair<const domains::DomainPack *, pair<domains::GenParams, vector<string>>>>
        entries;
    ifstream in(path);
    if (!in)
        throw util::ParseError("cannot open manifest " + path);
    nlohmann::json doc = nlohmann::json::parse(in);
    const nlohmann::json &list = doc.is_array() ? doc : doc.at("runs");
    for (const nlohmann::json &entry : list) {
        string id = entry.at("domain").get<string>();
        const domains::DomainPack *pack = domains::find_pack(id);
        if (!pack)
            throw util::ParseError("manifest names unknown domain '" + id + "'");
        domains::GenParams params =
            domains::default_params(*pack, entry.value("seed", uint64_t{1}));
        if (entry.contains("params"))
            for (const auto &[name, value] : entry.at("params").items())
                params.values[name] = value.get<int>();
        domains::validate_params(*pack, params);
        vector<string> algorithms =
            entry.value("algorithms", vector<string>{"siw", "siwr"});
        for (const string &a : algorithms)
            if (a != "bfs" && a != "iw" && a != "siw" && a != "siwr")
                throw util::ParseError("manifest names unknown algorithm '" + a + "'");
        entries.push_back({pack, {move(params), move(algorithms)}});
    }
    return entries;
}

struct DomainSummary {
    int total = 0;
    int solved = 0;
    double max_seconds = 0.0;
    vector<int> episode_widths;   // pooled over solved runs
};

} // namespace

int cmd_bench(const string &manifest_path, const string &stats_path,
              const string &out_dir, int jobs,
              const optional<int64_t> &budget, int max_width) {
    try {
        int64_t node_budget = resolve_budget(budget);

        vector<pair<const domains::DomainPack *,
                    pair<domains::GenParams, vector<string>>>> entries;
        if (manifest_path.empty()) {
            for (const domains::DomainPack &pack : domains::packs())
                for (const domains::GenParams &params : domains::benchmark_suite(pack))
                    entries.push_back({&pack, {params, {"siw", "siwr"}}});
        } else {
            entries = read_manifest(manifest_path);
        }

        if (!out_dir.empty())
            fs::create_directories(out_dir);

        /* Generate and ground every instance up front; the workers only search. */
        vector<BenchInstance> instances;
        vector<BenchRun> runs;
        for (const auto &[pack, rest] : entries) {
            const auto &[params, algorithms] = rest;
            BenchInstance inst;
            inst.domain_id = pack->id;
            inst.sketch_path = pack->sketch_file();
            inst.problem_text = domains::generate(*pack, params);
            pddl::DomainDef domain =
                pddl::parse_domain(pddl::read_file(pack->domain_file()));
            pddl::ProblemDef problem =
                pddl::parse_problem(inst.problem_text, domain);
            inst.instance_name = problem.name;
            inst.task = make_shared<pddl::GroundTask>(pddl::ground(domain, problem));
            if (!out_dir.empty())
                write_text_file((fs::path(out_dir) /
                                 (inst.instance_name + ".pddl")).string(),
                                inst.problem_text);
            instances.push_back(move(inst));
            for (const string &algorithm : algorithms)
                runs.push_back({instances.size() - 1, algorithm});
        }

        vector<StatsRecord> records(runs.size());
        vector<string> notes(runs.size());
        atomic<size_t> cursor{0};
        atomic<bool> any_invalid{false};

        auto worker = [&]() {
            for (;;) {
                size_t i = cursor.fetch_add(1);
                if (i >= runs.size())
                    return;
                const BenchInstance &inst = instances[runs[i].instance];
                const string &algorithm = runs[i].algorithm;
                try {
                    auto start = chrono::steady_clock::now();
                    RunOutcome outcome = execute(*inst.task, algorithm, max_width,
                                                 node_budget, inst.sketch_path);
                    double seconds = chrono::duration<double>(
                                         chrono::steady_clock::now() - start).count();
                    records[i] = make_record(inst.domain_id, inst.instance_name,
                                             algorithm, outcome, seconds);
                    if (!outcome.failure.empty())
                        notes[i] = outcome.failure;
                    if (outcome.result.solved()) {
                        try {
                            pddl::State end = search::replay_plan(
                                *inst.task, inst.task->s0, outcome.result.plan);
                            if (!inst.task->is_goal(end))
                                throw runtime_error("plan ends in a non-goal state");
                        } catch (const exception &e) {
                            records[i].status = "invalid-plan";
                            notes[i] = e.what();
                            any_invalid = true;
                        }
                        if (!out_dir.empty())
                            write_text_file(
                                (fs::path(out_dir) /
                                 (inst.instance_name + "." + algorithm + ".plan"))
                                    .string(),
                                render_plan(*inst.task, outcome.result.plan));
                    }
                } catch (const exception &e) {
                    records[i].domain = inst.domain_id;
                    records[i].instance = inst.instance_name;
                    records[i].algorithm = algorithm;
                    records[i].status = "error";
                    notes[i] = e.what();
                }
            }
        };

        vector<thread> pool;
        for (int t = 0; t < max(1, jobs); ++t)
            pool.emplace_back(worker);
        for (thread &t : pool)
            t.join();

        for (size_t i = 0; i < runs.size(); ++i)
            if (!notes[i].empty())
                cerr << records[i].instance << " [" << records[i].algorithm
                     << "]: " << notes[i] << "\n";

        write_stats_files(stats_path, records);

        /* Aligned per-domain summary in (domain, algorithm) first-seen order. */
        vector<pair<string, string>> order;
        map<pair<string, string>, DomainSummary> summaries;
        for (const StatsRecord &rec : records) {
            pair<string, string> key{rec.domain, rec.algorithm};
            if (!summaries.count(key))
                order.push_back(key);
            DomainSummary &sum = summaries[key];
            ++sum.total;
            if (rec.solved && rec.status != "invalid-plan") {
                ++sum.solved;
                sum.episode_widths.insert(sum.episode_widths.end(),
                                          rec.episode_widths.begin(),
                                          rec.episode_widths.end());
            }
            sum.max_seconds = max(sum.max_seconds, rec.wall_seconds);
        }

        cout << left << setw(12) << "domain" << setw(7) << "alg" << setw(8) << "S"
             << setw(9) << "maxT" << setw(7) << "AW" << setw(5) << "MW" << "\n";
        for (const auto &key : order) {
            const DomainSummary &sum = summaries[key];
            string s = to_string(sum.solved) + "/" + to_string(sum.total);
            string aw = "-";
            string mw = "-";
            if (!sum.episode_widths.empty()) {
                double total = 0;
                int widest = 0;
                for (int w : sum.episode_widths) {
                    total += w;
                    widest = max(widest, w);
                }
                aw = fmt_double(total / static_cast<double>(sum.episode_widths.size()), 2);
                mw = to_string(widest);
            }
            cout << left << setw(12) << key.first << setw(7) << key.second
                 << setw(8) << s << setw(9) << fmt_double(sum.max_seconds, 2)
                 << setw(7) << aw << setw(5) << mw << "\n";
        }

        if (any_invalid) {
            cerr << "sketchplan: at least one emitted plan failed validation\n";
            return kExitUnsolved;
        }
        return kExitSolved;
    } catch (const nlohmann::json::exception &e) {
        cerr << "sketchplan: manifest: " << e.what() << "\n";
        return kExitUsage;
    } catch (const util::ParseError &e) {
        cerr << "sketchplan: " << e.what() << "\n";
        return kExitUsage;
    } catch (const util::TypeError &e) {
        cerr << "sketchplan: " << e.what() << "\n";
        return kExitUsage;
    } catch (const util::ResourceError &e) {
        cerr << "sketchplan: " << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_check(const string &domain_id, const string &sketch_path, bool strict,
              bool histogram, int max_width) {
    try {
        const domains::DomainPack *pack = domains::find_pack(domain_id);
        if (!pack)
            throw util::ParseError("unknown domain '" + domain_id + "'");
        string path = sketch_path.empty() ? pack->sketch_file() : sketch_path;

        dl::Pool pool;
        sketch::Sketch sk = sketch::parse_sketch_file(path, pool);
        cout << "sketch: " << path << " (" << sk.features.size() << " features, "
             << sk.rules.size() << " rules)\n";

        sketch::TerminationReport term = sketch::check_termination(sk);
        cout << "termination: "
             << (term.terminating() ? "terminating" : "unknown") << "\n";
        for (const sketch::TerminationStep &step : term.steps) {
            cout << "  eliminate " << step.rule_id << " (case " << step.case_tag;
            if (!step.marked.empty())
                cout << ", marks " << join(step.marked, ", ");
            cout << ")\n";
        }
        if (!term.stuck_rules.empty())
            cout << "  stuck rules: " << join(term.stuck_rules, ", ") << "\n";

        pddl::DomainDef domain =
            pddl::parse_domain(pddl::read_file(pack->domain_file()));
        vector<pddl::GroundTask> tasks;
        for (const domains::GenParams &params : domains::micro_suite(*pack)) {
            pddl::ProblemDef problem =
                pddl::parse_problem(domains::generate(*pack, params), domain);
            tasks.push_back(pddl::ground(domain, problem));
        }
        vector<const pddl::GroundTask *> task_ptrs;
        for (const pddl::GroundTask &t : tasks)
            task_ptrs.push_back(&t);

        sketch::GoalSeparationReport sep =
            sketch::check_goal_separation(sk, pool, task_ptrs);
        if (sep.separated) {
            cout << "goal separation: separated (" << sep.states_examined
                 << " states across " << tasks.size() << " tasks)\n"
                 << "goal valuations: " << sep.goal_valuations_to_string() << "\n";
        } else {
            cout << "goal separation: FAILED\n"
                 << "witness (non-goal state matching a goal valuation): "
                 << sep.witness << "\n";
        }

        if (histogram) {
            map<int, int> bins;
            int episodes = 0;
            int unsolved = 0;
            for (const pddl::GroundTask &t : tasks) {
                sketch::SketchRunner runner(sk, pool, t);
                try {
                    auto [result, trace] =
                        search::siwr(t, runner, max_width, search::kDefaultBudget);
                    if (!result.solved()) {
                        ++unsolved;
                        continue;
                    }
                    for (const search::EpisodeRecord &e : trace.episodes) {
                        ++bins[e.width];
                        ++episodes;
                    }
                } catch (const exception &) {
                    ++unsolved;
                }
            }
            cout << "episode width histogram (" << tasks.size()
                 << " micro instances, " << episodes << " episodes):\n";
            for (const auto &[width, count] : bins)
                cout << "  width " << width << ": " << count << "\n";
            if (!bins.empty())
                cout << "  max episode width: " << bins.rbegin()->first << "\n";
            if (unsolved > 0)
                cout << "  unsolved micro instances: " << unsolved << "\n";
        }

        if (!sep.separated)
            return kExitUnsolved;
        if (!term.terminating() && strict)
            return kExitUnsolved;
        return kExitSolved;
    } catch (const util::ParseError &e) {
        cerr << "sketchplan: " << e.what() << "\n";
        return kExitUsage;
    } catch (const util::TypeError &e) {
        cerr << "sketchplan: " << e.what() << "\n";
        return kExitUsage;
    } catch (const util::ResourceError &e) {
        cerr << "sketchplan: " << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_gen(const string &domain_id, const vector<string> &param_args,
            uint64_t seed, const string &out_path) {
    try {
        const domains::DomainPack *pack = domains::find_pack(domain_id);
        if (!pack)
            throw util::ParseError("unknown domain '" + domain_id + "'");

        domains::GenParams params = domains::default_params(*pack, seed);
        for (const string &arg : param_args) {
            size_t eq = arg.find('=');
            if (eq == string::npos)
                throw util::ParseError("--param expects name=value, got '" + arg + "'");
            string name = arg.substr(0, eq);
            try {
                params.values[name] = stoi(arg.substr(eq + 1));
            } catch (const exception &) {
                throw util::ParseError("parameter value in '" + arg +
                                       "' is not an integer");
            }
        }

        string text = domains::generate(*pack, params);
        if (out_path.empty()) {
            cout << text;
        } else {
            write_text_file(out_path, text);
            cerr << "wrote " << out_path << "\n";
        }
        return kExitSolved;
    } catch (const util::ParseError &e) {
        cerr << "sketchplan: " << e.what() << "\n";
        return kExitUsage;
    } catch (const util::ResourceError &e) {
        cerr << "sketchplan: " << e.what() << "\n";
        return kExitUsage;
    }
}

int list_domains() {
    for (const domains::DomainPack &pack : domains::packs()) {
        cout << pack.id << " (width claim " << pack.width_claim << ")\n";
        for (const domains::ParamSpec &spec : pack.params)
            cout << "  " << left << setw(18) << spec.name << "[" << spec.min_value
                 << ", " << spec.max_value << "] default " << spec.default_value
                 << "  " << spec.doc << "\n";
    }
    return kExitSolved;
}

int run_cli(int argc, char **argv) {
    CLI::App app{"Width-based planner with policy sketches"};
    app.require_subcommand(1);

    RunConfig config;
    string domain_path, problem_path, plan_path;
    string manifest_path, out_dir, domain_id;
    string bench_stats = "bench_stats.csv";
    vector<string> param_args;
    uint64_t seed = 1;
    int jobs = 1;
    bool histogram = false;
    bool list = false;

    CLI::App *plan = app.add_subcommand("plan", "Solve a problem instance");
    plan->add_option("domain", domain_path, "Domain PDDL file")->required();
    plan->add_option("problem", problem_path, "Problem PDDL file")->required();
    plan->add_option("--algorithm", config.algorithm, "Search algorithm")
        ->check(CLI::IsMember({"bfs", "iw", "siw", "siwr"}))
        ->capture_default_str();
    plan->add_option("--max-width", config.max_width, "Novelty width bound")
        ->check(CLI::Range(0, 3))
        ->capture_default_str();
    plan->add_option("--budget", config.budget, "Generated-node budget per IW call");
    plan->add_option("--sketch", config.sketch_path, "Sketch file (required for siwr)");
    plan->add_flag("--strict", config.strict,
                   "Refuse sketches whose termination is not certified");
    plan->add_option("--out", config.out_path, "Plan output file (default stdout)");
    plan->add_option("--stats", config.stats_path, "Stats CSV path (JSONL alongside)");

    CLI::App *validate = app.add_subcommand("validate", "Replay a plan file");
    validate->add_option("domain", domain_path, "Domain PDDL file")->required();
    validate->add_option("problem", problem_path, "Problem PDDL file")->required();
    validate->add_option("plan", plan_path, "Plan file")->required();

    optional<int64_t> bench_budget;
    int bench_width = 2;
    CLI::App *bench = app.add_subcommand("bench", "Run the benchmark harness");
    bench->add_option("manifest", manifest_path,
                      "JSON manifest (built-in suite when omitted)");
    bench->add_option("--stats", bench_stats, "Stats CSV path")
        ->capture_default_str();
    bench->add_option("--out", out_dir, "Directory for problem and plan files");
    bench->add_option("--jobs", jobs, "Concurrent runs")
        ->check(CLI::Range(1, 64))
        ->capture_default_str();
    bench->add_option("--budget", bench_budget, "Generated-node budget per IW call");
    bench->add_option("--max-width", bench_width, "Novelty width bound")
        ->check(CLI::Range(0, 3))
        ->capture_default_str();

    string check_sketch;
    bool check_strict = false;
    int check_width = 2;
    CLI::App *check = app.add_subcommand("check", "Check sketch well-formedness");
    check->add_option("domain", domain_id, "Domain pack id")->required();
    check->add_option("--sketch", check_sketch,
                      "Sketch file (default: the domain's shipped sketch)");
    check->add_flag("--strict", check_strict,
                    "Fail when termination cannot be certified");
    check->add_flag("--histogram", histogram,
                    "Episode width histogram over the micro instances");
    check->add_option("--max-width", check_width, "Histogram width bound")
        ->check(CLI::Range(0, 3))
        ->capture_default_str();

    CLI::App *gen = app.add_subcommand("gen", "Generate a problem instance");
    gen->add_option("domain", domain_id, "Domain pack id");
    gen->add_option("--param", param_args, "Override one knob as name=value");
    gen->add_option("--seed", seed, "Generator seed")->capture_default_str();
    gen->add_option("--out", config.out_path, "Output file (default stdout)");
    gen->add_flag("--list", list, "List domain packs and their knobs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitSolved : kExitUsage;
    }

    if (plan->parsed()) {
        if (config.algorithm == "siwr" && config.sketch_path.empty()) {
            cerr << "sketchplan: --sketch is required for --algorithm siwr\n";
            return kExitUsage;
        }
        return cmd_plan(config, domain_path, problem_path);
    }
    if (validate->parsed())
        return cmd_validate(domain_path, problem_path, plan_path);
    if (bench->parsed())
        return cmd_bench(manifest_path, bench_stats, out_dir, jobs, bench_budget,
                         bench_width);
    if (check->parsed())
        return cmd_check(domain_id, check_sketch, check_strict, histogram,
                         check_width);
    if (gen->parsed()) {
        if (list)
            return list_domains();
        if (domain_id.empty()) {
            cerr << "sketchplan: gen requires a domain id (or --list)\n";
            return kExitUsage;
        }
        return cmd_gen(domain_id, param_args, seed, config.out_path);
    }
    return kExitUsage;
}

} // namespace sketchplan::cli
