// Weak pairing of the rescaled transform against the continuum reference along the default ladder.
#include <cstdio>

#include "groupspectra.hpp"

int main() {
  const gs::HeisenbergSweepSpec spec;
  std::printf("%4s %3s %4s %12s %12s %10s\n", "m", "N", "c_m", "discrete", "continuum", "gap");
  for (const auto& r : gs::heisenberg_sweep(spec))
    std::printf("%4lld %3lld %4lld %12.6f %12.6f %10.2e\n", static_cast<long long>(r.m), static_cast<long long>(r.N),
                static_cast<long long>(r.c), r.discrete.real(), r.continuum.real(), r.gap);
}
