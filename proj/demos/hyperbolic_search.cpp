// Cross-entropy search for the lower of two wells on the disc. The search law starts broad
// (alpha = 2) and sharpens geometrically, so it settles into one well rather than their midpoint.

#include <cmath>
#include <iostream>

#include "confnat/confnat.hpp"

int main() {
  using namespace confnat;
  const disc_point deep(0.6, 0.3), shallow(-0.5, -0.4);
  const auto objective = [&](const disc_point& z) {
    const double d1 = hyp_distance(z, deep), d2 = hyp_distance(z, shallow);
    return std::min(d1 * d1, 0.2 + d2 * d2);
  };

  cem_config cfg;
  cfg.population = 300;
  cfg.iterations = 50;
  rng_stream rng(7);
  const cem_result result = cem_optimize(objective, cfg, rng);

  for (const auto& row : result.trace) {
    if (row.iteration % 10 == 0) {
      std::cout << "iter " << row.iteration << "  a = (" << row.a.re() << ", " << row.a.im()
                << ")  alpha = " << row.alpha << "  best = " << row.best_value << '\n';
    }
  }
  std::cout << "best point (" << result.best_point.re() << ", " << result.best_point.im()
            << "), distance to deep well " << hyp_distance(result.best_point, deep) << '\n';
}
