// Fourier transform of the integer-point subgroup of HeisenbergMN(2, 2).
#include <iostream>

#include "groupspectra.hpp"

int main() {
  const gs::Group G = gs::Group::heisenberg(2, 2);
  auto D = std::make_shared<const gs::DualSpace>(gs::DualSpace::enumerate(G));
  const gs::Subgroup H = gs::Subgroup::heisenberg_integer_points(G);
  const gs::SpectralField F = gs::dft(gs::GroupFunction::indicator(H), D);
  std::cout << G.name() << ": " << D->size() << " irreps, sum d^2 = " << D->sum_squared_dims() << "\n";
  for (size_t p = 0; p < D->size(); ++p) {
    const double v = F[p].norm();
    if (v > 1e-12) std::cout << "  " << (*D)[p].label().to_string() << "  dim " << D->dim(p) << "  ||F|| = " << v << "\n";
  }
  std::cout << "closed form agrees to " << gs::max_abs_diff(F, gs::subgroup_spectrum_closed_form(H, D)) << "\n";
}
