// Perturbed sublattice of Z/1024 with bounded noise; reports the sup-norm error against the abelian bound.
#include <iostream>

#include "groupspectra.hpp"

int main() {
  const gs::Group T = gs::Group::torus(1, 1, 1024);
  auto D = std::make_shared<const gs::DualSpace>(gs::DualSpace::enumerate(T));
  std::vector<gs::Element> box;
  for (gs::i64 t = -2; t <= 2; ++t) box.push_back(gs::Element{{gs::mod(t, 1024)}});
  gs::ExperimentSpec spec{gs::Subgroup::torus_sublattice(T, {4}), gs::NoiseLaw::uniform_on_set(T, box), 200, 2024, 0.9, 4, 0.1,
                          gs::BoundKind::abelian, {}};
  const gs::Summary s = gs::monte_carlo(spec, D, 2);
  std::cout << "C = " << s.C << "  rhs = " << s.bound.rhs << "  floor = " << s.bound.prob_floor << "\n"
            << "max sup-norm error " << s.linf_max << ", exceedances " << s.exceed_count << " / " << s.trials << "\n";
}
