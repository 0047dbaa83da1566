#include "sketchplan/search/novelty.hpp"

#include <cassert>

using namespace std;

namespace sketchplan::search {

namespace {

/* Pairs are bitmap-indexed only while the triangle fits comfortably in memory. */
constexpr int kPairBitmapMaxAtoms = 40000;

uint64_t pack_triple(int a, int b, int c) {
    return (static_cast<uint64_t>(a) << 42) | (static_cast<uint64_t>(b) << 21) |
           static_cast<uint64_t>(c);
}

} // namespace

NoveltyTable::NoveltyTable(int k, int num_atoms) : k_(k), n_(num_atoms) {
    assert(k >= 1 && k <= 3);
    seen1_.resize(n_);
    if (k_ >= 2) {
        pairs_in_bitmap_ = n_ <= kPairBitmapMaxAtoms;
        if (pairs_in_bitmap_)
            seen2_.resize(static_cast<size_t>(n_) * (n_ - 1) / 2);
    }
}

bool NoveltyTable::probe_pair(int a, int b) {
    // a < b
    if (pairs_in_bitmap_) {
        size_t index = static_cast<size_t>(a) * (2 * n_ - a - 1) / 2 + (b - a - 1);
        if (seen2_.test(index))
            return false;
        seen2_.set(index);
        return true;
    }
    return seen2_hash_.insert((static_cast<uint64_t>(a) << 32) | b).second;
}

bool NoveltyTable::probe_triple(int a, int b, int c) {
    // a < b < c
    return seen3_.insert(pack_triple(a, b, c)).second;
}

int NoveltyTable::check_and_record(const pddl::State &s) {
    vector<int> atoms = util::bit_indices(s.atoms);
    int best = k_ + 1;
    for (int a : atoms)
        if (!seen1_.test(a)) {
            seen1_.set(a);
            best = min(best, 1);
        }
    if (k_ >= 2)
        for (size_t i = 0; i < atoms.size(); ++i)
            for (size_t j = i + 1; j < atoms.size(); ++j)
                if (probe_pair(atoms[i], atoms[j]))
                    best = min(best, 2);
    if (k_ >= 3)
        for (size_t i = 0; i < atoms.size(); ++i)
            for (size_t j = i + 1; j < atoms.size(); ++j)
                for (size_t l = j + 1; l < atoms.size(); ++l)
                    if (probe_triple(atoms[i], atoms[j], atoms[l]))
                        best = min(best, 3);
    return best;
}

int NoveltyTable::check_and_record_delta(const pddl::State &s,
                                         const pddl::State &parent) {
    thread_local vector<int> fresh;
    fresh.clear();
    {
        util::Bitset delta = s.atoms - parent.atoms;
        for (auto i = delta.find_first(); i != util::Bitset::npos;
             i = delta.find_next(i))
            fresh.push_back(static_cast<int>(i));
    }
    if (fresh.empty())
        return k_ + 1;   // every tuple of s is a tuple of parent

    int best = k_ + 1;
    for (int a : fresh)
        if (!seen1_.test(a)) {
            seen1_.set(a);
            best = min(best, 1);
        }
    if (k_ >= 2) {
        vector<int> atoms = util::bit_indices(s.atoms);
        for (int a : fresh)
            for (int b : atoms) {
                if (b == a)
                    continue;
                if (probe_pair(min(a, b), max(a, b)))
                    best = min(best, 2);
            }
        if (k_ >= 3)
            for (int a : fresh)
                for (size_t i = 0; i < atoms.size(); ++i)
                    for (size_t j = i + 1; j < atoms.size(); ++j) {
                        int b = atoms[i], c = atoms[j];
                        if (b == a || c == a)
                            continue;
                        int x = a, y = b, z = c;
                        if (x > y)
                            swap(x, y);
                        if (y > z)
                            swap(y, z);
                        if (x > y)
                            swap(x, y);
                        if (probe_triple(x, y, z))
                            best = min(best, 3);
                    }
    }
    return best;
}

} // namespace sketchplan::search
