// Prints 100 draws from F(alpha, a) for alpha in {2, 10} and a in {0, 1/2} as one CSV table,
// ready for an external scatter plot.

#include <cstdio>

#include "confnat/confnat.hpp"

int main() {
  std::printf("alpha,a_re,index,re,im\n");
  for (double alpha : {2.0, 10.0}) {
    for (double a_re : {0.0, 0.5}) {
      const confnat::conf_natural law(alpha, confnat::disc_point(a_re, 0.0));
      confnat::rng_stream rng(2021);
      const auto points = law.sample(rng, 100);
      for (std::size_t i = 0; i < points.size(); ++i) {
        std::printf("%g,%g,%zu,%.17g,%.17g\n", alpha, a_re, i, points[i].re(), points[i].im());
      }
    }
  }
}
