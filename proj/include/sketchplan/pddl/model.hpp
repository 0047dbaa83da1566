#ifndef SKETCHPLAN_PDDL_MODEL_H
#define SKETCHPLAN_PDDL_MODEL_H

#include <string>
#include <vector>

namespace sketchplan::pddl {

/*
  First-order model for the supported PDDL subset:
  :strips :typing :negative-preconditions :equality.
  All names are lowercased by the parser.
*/

struct TypeTable {
    std::vector<std::string> names;   // names[0] == "object"
    std::vector<int> parent;          // parent[0] == -1

    int find(const std::string &name) const;
    /* True iff t == ancestor or ancestor lies on t's parent chain. */
    bool is_subtype(int t, int ancestor) const;
};

struct Predicate {
    std::string name;
    std::vector<int> param_types;

    int arity() const { return static_cast<int>(param_types.size()); }
};

/* Literal in a schema body; arguments index the schema's parameter list. */
struct SchemaLiteral {
    int predicate = -1;
    bool negated = false;
    std::vector<int> args;
};

/* Equality constraint (= ?x ?y) or its negation between two parameters. */
struct EqualityConstraint {
    int left = -1;
    int right = -1;
    bool negated = false;
};

struct ActionSchema {
    std::string name;
    std::vector<std::string> param_names;
    std::vector<int> param_types;
    std::vector<SchemaLiteral> preconditions;
    std::vector<SchemaLiteral> effects;
    std::vector<EqualityConstraint> equalities;
};

struct DomainDef {
    std::string name;
    TypeTable types;
    std::vector<Predicate> predicates;
    std::vector<ActionSchema> schemas;

    int find_predicate(const std::string &name) const;
};

/* Ground literal over object indices of a ProblemDef. */
struct GroundLiteral {
    int predicate = -1;
    bool negated = false;
    std::vector<int> args;

    auto operator<=>(const GroundLiteral &) const = default;
};

struct ProblemDef {
    std::string name;
    std::string domain_name;
    std::vector<std::string> object_names;
    std::vector<int> object_types;
    std::vector<GroundLiteral> init;   // positives only (closed world)
    std::vector<GroundLiteral> goal;   // may contain negated literals

    int find_object(const std::string &name) const;
};

} // namespace sketchplan::pddl

#endif
