#pragma once

#include <cstdint>

#include "pcv/core/scalar.hpp"

namespace pcv {

// Deterministic generator with platform-independent output streams.
// std distributions are implementation-defined, so all draws go through here.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ull) {
    next();
    next();
  }

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double real01() { return double(next() >> 11) * 0x1.0p-53; }
  // uniform in [-1,1]
  double sym() { return 2.0 * real01() - 1.0; }
  // uniform integer in [0, n)
  uint64_t below(uint64_t n) { return next() % n; }
  int range(int lo, int hi) { return lo + int(below(uint64_t(hi - lo + 1))); }

  // small rational with numerator in [-max,max], fixed denominator
  Rat rat(int max_num = 9, int den = 4) {
    return Rat(range(-max_num, max_num), den);
  }
  CRat crat(int max_num = 9, int den = 4) { return CRat(rat(max_num, den), rat(max_num, den)); }
  Cplx cplx() { return Cplx(sym(), sym()); }

  // derived deterministic substream
  Rng fork(uint64_t tag) { return Rng(next() ^ (tag * 0xd1342543de82ef95ull)); }

 private:
  uint64_t state_;
};

}  // namespace pcv
