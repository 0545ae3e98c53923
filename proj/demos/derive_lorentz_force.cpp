// Derives the deformed Lorentz force for the symmetric gauge plus a uniform
// electric field and prints the grouped result next to the published
// coefficients.

#include <iostream>

#include "ncdirac/heisenberg.hpp"

using namespace ncdirac;

int main() {
  NCParameters nc;  // Theta = eta = 0.01 by default, kept symbolic throughout
  ConventionConfig conv = ConventionConfig::defaults();
  FieldSpec field = FieldSpec::symmetric_gauge_uniform_e();
  AlgebraContext ctx = AlgebraContext::commutative(field);

  HamiltonianBundle bundle = deformed_hamiltonian(field, nc, conv);
  std::cout << "deformed Hamiltonian:\n  " << render(bundle.h_nc) << "\n\n";

  RateResult rate = kinetic_momentum_rate(bundle, field, ctx);
  for (int j = 1; j <= 3; ++j) {
    std::cout << "dD" << j << "/dt = " << render(rate.total(j)) << "\n";
    for (const auto& [g, e] : rate.comp[j - 1].groups)
      if (!e.is_zero()) std::cout << "    " << term_group_name(g) << ": " << render(e) << "\n";
  }

  DiscrepancyReport disc =
      paper_form_comparison(rate, published_momentum_rate_template(ctx));
  std::cout << "\n" << disc.to_text();

  RateResult limit = commutative_limit(rate);
  std::cout << "\ncommutative limit:\n";
  for (int j = 1; j <= 3; ++j)
    std::cout << "  dD" << j << "/dt -> " << render(limit.total(j)) << "\n";
  return 0;
}
