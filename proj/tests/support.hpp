#pragma once

#include <random>
#include <vector>

#include "misere/monoid.hpp"

namespace misere::testing {

// Cyclic monoid <x | x^(index+period) = x^index>, elements x^0..x^(index+period-1).
struct Cyclic {
  unsigned index;
  unsigned period;
  unsigned size() const { return index + period; }
  unsigned reduce(unsigned e) const { return e < index ? e : index + (e - index) % period; }
};

// Direct product of cyclic monoids; element i is the mixed-radix digit vector.
struct CyclicProduct {
  std::vector<Cyclic> factors;

  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& f : factors) n *= f.size();
    return n;
  }
  std::vector<unsigned> digits(std::size_t x) const {
    std::vector<unsigned> d;
    for (const auto& f : factors) {
      d.push_back(unsigned(x % f.size()));
      x /= f.size();
    }
    return d;
  }
  std::size_t encode(const std::vector<unsigned>& d) const {
    std::size_t x = 0;
    for (std::size_t i = factors.size(); i-- > 0;) x = x * factors[i].size() + d[i];
    return x;
  }
  std::vector<Element> table() const {
    const std::size_t n = size();
    std::vector<Element> t(n * n);
    for (std::size_t x = 0; x < n; ++x) {
      auto dx = digits(x);
      for (std::size_t y = 0; y < n; ++y) {
        auto dy = digits(y);
        std::vector<unsigned> d(factors.size());
        for (std::size_t i = 0; i < factors.size(); ++i) d[i] = factors[i].reduce(dx[i] + dy[i]);
        t[x * n + y] = Element(encode(d));
      }
    }
    return t;
  }
};

inline CyclicProduct random_cyclic_product(std::mt19937& rng, std::size_t max_size) {
  for (;;) {
    CyclicProduct c;
    std::size_t parts = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    for (std::size_t i = 0; i < parts; ++i) {
      unsigned index = std::uniform_int_distribution<unsigned>(0, 3)(rng);
      unsigned period = std::uniform_int_distribution<unsigned>(1, 4)(rng);
      c.factors.push_back({index, period});
    }
    if (c.size() <= max_size) return c;
  }
}

// A coarser cyclic product with a surjective homomorphism from `c`: each
// factor (i, p) maps to (i', p') with i' <= i and p' | p.
inline CyclicProduct random_image(std::mt19937& rng, const CyclicProduct& c) {
  CyclicProduct out;
  for (const auto& f : c.factors) {
    unsigned index = std::uniform_int_distribution<unsigned>(0, f.index)(rng);
    std::vector<unsigned> divisors;
    for (unsigned d = 1; d <= f.period; ++d) {
      if (f.period % d == 0) divisors.push_back(d);
    }
    unsigned period = divisors[std::uniform_int_distribution<std::size_t>(0, divisors.size() - 1)(rng)];
    out.factors.push_back({index, period});
  }
  return out;
}

inline std::size_t project(const CyclicProduct& from, const CyclicProduct& to, std::size_t x) {
  auto d = from.digits(x);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = to.factors[i].reduce(d[i]);
  return to.encode(d);
}

}  // namespace misere::testing
