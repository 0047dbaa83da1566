#ifndef SKETCHPLAN_PDDL_PARSER_H
#define SKETCHPLAN_PDDL_PARSER_H

#include "sketchplan/pddl/model.hpp"

#include <string>

namespace sketchplan::pddl {

/*
  PDDL front-end for the :strips :typing :negative-preconditions :equality
  subset. Input is lowercased; `;` starts a line comment. Unsupported
  requirements are rejected with an error naming the requirement.
*/
DomainDef parse_domain(const std::string &text);

ProblemDef parse_problem(const std::string &text, const DomainDef &domain);

std::string read_file(const std::string &path);

} // namespace sketchplan::pddl

#endif
