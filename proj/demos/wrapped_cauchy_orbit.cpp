// The wrapped Cauchy family is the orbit of the uniform law under disc automorphisms: pushing
// wC(a) by g gives wC(g(a)). Compares circular means of pushed samples and fresh samples.

#include <complex>
#include <iostream>

#include "confnat/confnat.hpp"

int main() {
  using namespace confnat;
  const wrapped_cauchy law(disc_point(0.4, 0.2));
  const moebius_transform g(disc_point(-0.3, 0.5), 1.0);
  const wrapped_cauchy image = law.pushforward(g);

  rng_stream a(1), b(2);
  complex pushed = 0.0, fresh = 0.0;
  constexpr int n = 200000;
  for (int i = 0; i < n; ++i) {
    pushed += g(law.sample(a)).unit();
    fresh += image.sample(b).unit();
  }
  std::cout << "g(a)              = " << image.a().value() << '\n'
            << "mean of g(samples) = " << pushed / double(n) << '\n'
            << "mean of fresh      = " << fresh / double(n) << '\n';
}
