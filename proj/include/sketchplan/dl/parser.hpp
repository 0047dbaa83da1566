#ifndef SKETCHPLAN_DL_PARSER_H
#define SKETCHPLAN_DL_PARSER_H

#include "sketchplan/dl/expr.hpp"

#include <string>

namespace sketchplan::dl {

/*
  Textual expression grammar, one constructor per call:

    primitive(at, 0)            concept: objects at index 0 of true at-atoms
    primitive(at, 0, 1)         role: index pairs (0, 1) of true at-atoms
    top  bot
    union(x, y)  intersection(x, y)  not(x)  diff(x, y)
    some(r, c)  all(r, c)  nominal(obj)  equal(r, s)  subset(r, s)
    extract(r, 0|1)  goal(x)
    compose(r, s)  inverse(r)  tclosure(r)  rtclosure(r)
    restrict(r, c)  identity(c)

  Feature constructors: empty(x), nonempty(x), count(x),
  concept_dist(c, r, d), role_dist(r, s, t), sum_role_dist(r, s, t),
  goal_count(). The line argument seeds error positions when the text is
  embedded in a larger file.
*/
int parse_expression(const std::string &text, Pool &pool, int line = 1);
FeatureExpr parse_feature(const std::string &text, Pool &pool, int line = 1);

} // namespace sketchplan::dl

#endif
