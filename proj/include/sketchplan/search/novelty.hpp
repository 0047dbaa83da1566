#ifndef SKETCHPLAN_SEARCH_NOVELTY_H
#define SKETCHPLAN_SEARCH_NOVELTY_H

#include "sketchplan/pddl/task.hpp"
#include "sketchplan/util/bits.hpp"

#include <cstdint>
#include <unordered_set>

namespace sketchplan::search {

/*
  Seen-tuple registry for one IW(k) run, 1 <= k <= 3. Size-1 and size-2
  tuples live in bitmaps (size 2 triangular); size-3 tuples in a hash set of
  packed index triples. Tables are never shared between IW runs.
*/
class NoveltyTable {
public:
    NoveltyTable(int k, int num_atoms);

    int arity() const { return k_; }

    /*
      Records every tuple of sizes 1..k of s and returns the smallest size
      that contained a previously unseen tuple, or k+1 if all tuples were
      seen (the recording is then vacuous).
    */
    int check_and_record(const pddl::State &s);

    /*
      Same contract, but only inspects tuples containing at least one atom of
      s \ parent. Valid when parent's tuples are already recorded: every other
      tuple of s is a tuple of parent. Used on successors of retained states.
    */
    int check_and_record_delta(const pddl::State &s, const pddl::State &parent);

private:
    bool probe_pair(int a, int b);      // returns true if newly recorded
    bool probe_triple(int a, int b, int c);

    int k_;
    int n_;
    util::Bitset seen1_;
    bool pairs_in_bitmap_ = false;
    util::Bitset seen2_;
    std::unordered_set<uint64_t> seen2_hash_;
    std::unordered_set<uint64_t> seen3_;
};

} // namespace sketchplan::search

#endif
