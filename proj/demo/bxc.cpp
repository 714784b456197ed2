// Walks through example_BxC: abelian, no Maltsev polynomial, yet a spread of
// U = B x {0} and W = {0} x C through g.

#include <chrono>
#include <iostream>

#include "ualg/catalog.hpp"
#include "ualg/commutator.hpp"
#include "ualg/structure.hpp"
#include "ualg/subuniverse.hpp"

using namespace ualg;

int main() {
  auto alg    = catalog::example_BxC();
  auto budget = ClosureBudget::with_seconds(120);

  std::cout << "A = " << alg.name() << ", " << alg.size() << " elements\n";
  std::cout << "abelian: " << (is_abelian(alg) ? "yes" : "no") << "\n";

  auto m = has_maltsev_polynomial(alg, budget);
  std::cout << "Maltsev polynomial: " << to_string(m.verdict) << " (" << m.closure_size
            << " polynomials on the cross domain)\n";

  // (v,0) = 4*1 + 0, (0,v) = 1 with v = (0,1).
  auto s = generate_subuniverse(alg, {4, 0, 1});
  std::cout << "Sg{(v,0),(0,0),(0,v)} has " << s.size() << " elements\n";

  std::vector<std::vector<Elem>> family{{0, 4, 8, 12}, {0, 1, 2, 3}};
  auto                           sp = spread_check(alg, family, budget);
  std::cout << "spread of {U, W}: " << to_string(sp.verdict);
  if (sp.witness) {
    std::cout << ", A = " << sp.witness->expression(alg);
  }
  std::cout << "\n";

  for (auto const* name : {"example_B", "example_C"}) {
    auto f = catalog::builtin(name);
    auto t = has_maltsev_term(f, budget);
    std::cout << name << " Maltsev term: "
              << (t.operation ? t.operation->witness.to_string(&f) : to_string(t.verdict)) << "\n";
  }
}
