#include <algorithm>
#include <map>

#include "misere/monoid.hpp"

namespace misere {

namespace {

Element idempotent_power(const BipartiteMonoid& m, Element y) {
  Element cur = y;
  for (std::size_t r = 1; r <= m.size() + 1; ++r) {
    if (m.mul(cur, cur) == cur) return cur;
    cur = m.mul(cur, y);
  }
  return cur;  // unreachable for a finite monoid
}

// Elementary divisors of a finite abelian group given by element orders
// of x^j computed in `power`.
std::vector<unsigned> elementary_divisors(const std::vector<Element>& group, Element identity,
                                          const BipartiteMonoid& m) {
  const std::size_t order = group.size();
  std::vector<unsigned> primes;
  std::size_t rest = order;
  for (unsigned p = 2; p * p <= rest; ++p) {
    if (rest % p == 0) {
      primes.push_back(p);
      while (rest % p == 0) rest /= p;
    }
  }
  if (rest > 1) primes.push_back(unsigned(rest));

  std::vector<unsigned> out;
  for (unsigned p : primes) {
    // s[j] = log_p #{x : x^(p^j) = 1}
    std::vector<unsigned> s{0};
    unsigned pj = 1;
    for (unsigned j = 1;; ++j) {
      pj *= p;
      std::size_t count = 0;
      for (Element x : group) {
        if (m.power(x, pj) == identity) ++count;
      }
      unsigned e = 0;
      while (count > 1) {
        count /= p;
        ++e;
      }
      s.push_back(e);
      if (s[j] == s[j - 1]) break;
    }
    s.push_back(s.back());
    unsigned q = 1;
    for (std::size_t j = 1; j + 1 < s.size(); ++j) {
      q *= p;
      unsigned at_least_j = s[j] - s[j - 1];
      unsigned at_least_next = s[j + 1] - s[j];
      for (unsigned c = 0; c < at_least_j - at_least_next; ++c) out.push_back(q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

StructureReport structure_report(const BipartiteMonoid& m) {
  const std::size_t n = m.size();
  StructureReport r;

  for (Element x = 0; x < n; ++x) {
    if (m.mul(x, x) == x) r.idempotents.push_back(x);
  }
  r.z = m.identity();
  for (Element e : r.idempotents) r.z = m.mul(r.z, e);

  // Mutually divisible iff equal principal ideals.
  std::map<std::vector<char>, std::vector<Element>> by_ideal;
  std::vector<std::vector<char>> ideal(n, std::vector<char>(n, 0));
  for (Element x = 0; x < n; ++x) {
    for (Element w = 0; w < n; ++w) ideal[x][m.mul(x, w)] = 1;
    by_ideal[ideal[x]].push_back(x);
  }
  for (auto& [key, cls] : by_ideal) r.md_classes.push_back(cls);
  std::sort(r.md_classes.begin(), r.md_classes.end());
  for (const auto& cls : r.md_classes) {
    if (std::find(cls.begin(), cls.end(), r.z) != cls.end()) r.kernel = cls;
  }

  const std::size_t k = r.kernel.size();
  std::vector<int> kpos(n, -1);
  for (std::size_t i = 0; i < k; ++i) kpos[r.kernel[i]] = int(i);
  r.kernel_table.resize(k * k);
  bool closed = true;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      Element prod = m.mul(r.kernel[i], r.kernel[j]);
      if (kpos[prod] < 0) {
        closed = false;
        r.kernel_table[i * k + j] = 0;
      } else {
        r.kernel_table[i * k + j] = Element(kpos[prod]);
      }
    }
  }
  bool identity_ok = true;
  bool inverses_ok = true;
  for (Element x : r.kernel) {
    if (m.mul(r.z, x) != x) identity_ok = false;
    bool has_inverse = false;
    for (Element y : r.kernel) has_inverse |= m.mul(x, y) == r.z;
    inverses_ok &= has_inverse;
  }
  r.kernel_is_group = closed && identity_ok && inverses_ok;

  bool hom = true;
  std::vector<char> image(n, 0);
  for (Element x = 0; x < n; ++x) {
    Element zx = m.mul(r.z, x);
    if (kpos[zx] < 0) hom = false;
    image[zx] = 1;
    for (Element y = 0; y < n; ++y) {
      if (m.mul(r.z, m.mul(x, y)) != m.mul(zx, m.mul(r.z, y))) hom = false;
    }
  }
  for (Element x : r.kernel) hom &= image[x] != 0;
  r.zx_is_homomorphism_onto_kernel = hom;

  if (r.kernel_is_group) r.kernel_type = elementary_divisors(r.kernel, r.z, m);

  for (Element y = 0; y < n; ++y) r.archimedean_components[idempotent_power(m, y)].push_back(y);

  const std::size_t ni = r.idempotents.size();
  std::vector<int> ipos(n, -1);
  for (std::size_t i = 0; i < ni; ++i) ipos[r.idempotents[i]] = int(i);
  r.leq.assign(ni, std::vector<char>(ni, 0));
  r.meet.assign(ni, std::vector<std::size_t>(ni, 0));
  r.join.assign(ni, std::vector<std::size_t>(ni, 0));
  for (std::size_t i = 0; i < ni; ++i) {
    for (std::size_t j = 0; j < ni; ++j) {
      Element x = r.idempotents[i];
      Element y = r.idempotents[j];
      r.leq[i][j] = m.mul(x, y) == x;
      r.meet[i][j] = std::size_t(ipos[m.mul(x, y)]);
      Element upper = m.identity();
      for (Element w : r.idempotents) {
        if (m.mul(x, w) == x && m.mul(y, w) == y) upper = m.mul(upper, w);
      }
      r.join[i][j] = std::size_t(ipos[upper]);
    }
  }

  std::size_t kp = 0;
  bool z_in_p = m.in_p(r.z);
  for (Element x : r.kernel) kp += m.in_p(x) ? 1 : 0;
  r.is_regular = kp == 1;
  r.is_normal = kp == 1 && z_in_p;

  for (const auto& cls : r.md_classes) {
    bool has_idempotent = std::any_of(cls.begin(), cls.end(), [&](Element x) { return m.mul(x, x) == x; });
    if (!has_idempotent) continue;
    ++r.maximal_subgroups;
    if (std::any_of(cls.begin(), cls.end(), [&](Element x) { return m.in_p(x); })) ++r.maximal_subgroups_meeting_p;
  }
  return r;
}

}  // namespace misere
