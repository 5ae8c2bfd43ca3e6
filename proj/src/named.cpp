#include <algorithm>
#include <stdexcept>

#include "misere/error.hpp"
#include "misere/monoid.hpp"

namespace misere {

namespace {

// An element a^e * x where x is either 1, t (rank 0, 1), or a kernel
// element b^v (rank 2) with v = 0 standing for z.
struct Form {
  unsigned e = 0;
  unsigned rank = 0;
  unsigned v = 0;
};

BipartiteMonoid from_forms(const std::vector<Form>& forms, std::vector<std::string> labels,
                           Form (*mul)(const Form&, const Form&)) {
  const std::size_t n = forms.size();
  auto index_of = [&](const Form& f) {
    for (std::size_t i = 0; i < n; ++i) {
      if (forms[i].e == f.e && forms[i].rank == f.rank && forms[i].v == f.v) return Element(i);
    }
    throw std::logic_error("normal form not enumerated");
  };
  std::vector<Element> table(n * n);
  std::vector<Element> p;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = index_of(mul(forms[i], forms[j]));
    // P = {a, z}
    const Form& f = forms[i];
    if ((f.e == 1 && f.rank == 0) || (f.e == 0 && f.rank == 2 && f.v == 0)) p.push_back(Element(i));
  }
  return BipartiteMonoid(n, std::move(table), 0, std::move(p), std::move(labels));
}

Form mul_tn(const Form& x, const Form& y) {
  Form r;
  r.e = x.e ^ y.e;
  r.rank = std::max(x.rank, y.rank);
  r.v = r.rank == 2 ? (x.v ^ y.v) : 0;
  return r;
}

Form mul_r8(const Form& x, const Form& y) {
  Form r;
  r.e = x.e ^ y.e;
  if (x.rank == 1 && y.rank == 1) {
    r.rank = 2;  // t^2 = z
    r.v = 0;
  } else {
    r.rank = std::max(x.rank, y.rank);
    r.v = r.rank == 2 ? (x.v ^ y.v) : 0;
  }
  return r;
}

std::string with_a(unsigned e, std::string rest) { return (e ? "a" : "") + (rest.empty() && !e ? "1" : rest); }

}  // namespace

BipartiteMonoid make_tn(unsigned n, unsigned max_n) {
  if (n > max_n) throw InvalidArgument("T_n requested beyond size limit n <= " + std::to_string(max_n));
  if (n == 0) return BipartiteMonoid(1, {0}, 0, {}, {"1"});
  if (n == 1) return BipartiteMonoid(2, {0, 1, 1, 0}, 0, {1}, {"1", "a"});

  std::vector<Form> forms{{0, 0, 0}, {1, 0, 0}};
  std::vector<std::string> labels{"1", "a"};
  const unsigned kernel_bits = n - 1;
  for (unsigned v = 1; v < (1u << kernel_bits); ++v) {
    std::string word;
    for (unsigned i = 0; i < kernel_bits; ++i) {
      if (v & (1u << i)) word += char('b' + i);
    }
    for (unsigned e = 0; e < 2; ++e) {
      forms.push_back({e, 2, v});
      labels.push_back(with_a(e, word));
    }
  }
  forms.push_back({0, 2, 0});
  labels.push_back("b2");
  forms.push_back({1, 2, 0});
  labels.push_back("ab2");
  return from_forms(forms, std::move(labels), mul_tn);
}

BipartiteMonoid make_r8() {
  std::vector<Form> forms{{0, 0, 0}, {1, 0, 0}, {0, 2, 1}, {1, 2, 1},
                          {0, 2, 0}, {1, 2, 0}, {0, 1, 0}, {1, 1, 0}};
  std::vector<std::string> labels{"1", "a", "b", "ab", "b2", "ab2", "t", "at"};
  return from_forms(forms, std::move(labels), mul_r8);
}

std::optional<unsigned> classify_tame(const BipartiteMonoid& m) {
  constexpr unsigned kMaxN = 8;
  std::optional<unsigned> n;
  if (m.size() == 1) n = 0;
  if (m.size() == 2) n = 1;
  for (unsigned k = 2; k <= kMaxN; ++k) {
    if (m.size() == (std::size_t{1} << k) + 2) n = k;
  }
  if (!n) return std::nullopt;
  if (iso(m, make_tn(*n, kMaxN))) return n;
  return std::nullopt;
}

}  // namespace misere
