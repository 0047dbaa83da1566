#ifndef SKETCHPLAN_UTIL_RNG_H
#define SKETCHPLAN_UTIL_RNG_H

#include <cstdint>
#include <vector>

namespace sketchplan::util {

/*
  splitmix64 generator. Chosen over <random> engines because instance
  generators must emit byte-identical output for a given seed on every
  platform, and the standard distributions are not pinned down that far.
*/
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /* Uniform in [0, n). n must be positive. */
    int below(int n) { return static_cast<int>(next() % static_cast<uint64_t>(n)); }

    /* Uniform in [lo, hi] inclusive. */
    int range(int lo, int hi) { return lo + below(hi - lo + 1); }

    bool chance(int num, int den) { return below(den) < num; }

    template <typename T>
    void shuffle(std::vector<T> &v) {
        for (int i = static_cast<int>(v.size()) - 1; i > 0; --i)
            std::swap(v[i], v[below(i + 1)]);
    }

    template <typename T>
    const T &pick(const std::vector<T> &v) { return v[below(static_cast<int>(v.size()))]; }

private:
    uint64_t state_;
};

} // namespace sketchplan::util

#endif
