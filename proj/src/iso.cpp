#include <algorithm>
#include <tuple>

#include "misere/error.hpp"
#include "misere/monoid.hpp"

namespace misere {

namespace {

using Invariant = std::tuple<bool, bool, unsigned, unsigned, std::size_t>;

std::vector<Invariant> invariants(const BipartiteMonoid& m) {
  std::vector<Invariant> out(m.size());
  for (Element x = 0; x < m.size(); ++x) {
    auto [index, period] = m.index_period(x);
    std::vector<char> ideal(m.size(), 0);
    for (Element w = 0; w < m.size(); ++w) ideal[m.mul(x, w)] = 1;
    std::size_t ideal_size = std::size_t(std::count(ideal.begin(), ideal.end(), 1));
    out[x] = {m.in_p(x), m.mul(x, x) == x, index, period, ideal_size};
  }
  return out;
}

class IsoSearch {
 public:
  IsoSearch(const BipartiteMonoid& a, const BipartiteMonoid& b)
      : a_(a), b_(b), inv_a_(invariants(a)), inv_b_(invariants(b)) {
    // Greedy generating set of a, least ungenerated element first.
    std::vector<char> mask = generated(a_, gens_);
    for (Element x = 0; x < a_.size(); ++x) {
      if (mask[x]) continue;
      gens_.push_back(x);
      mask = generated(a_, gens_);
    }
  }

  bool plausible() const {
    auto sa = inv_a_;
    auto sb = inv_b_;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    return sa == sb;
  }

  std::optional<std::vector<Element>> run() {
    std::vector<Element> f(a_.size(), kUnset);
    f[a_.identity()] = b_.identity();
    std::vector<char> used(b_.size(), 0);
    used[b_.identity()] = 1;
    if (search(0, f, used)) return f;
    return std::nullopt;
  }

 private:
  static constexpr Element kUnset = ~Element{0};

  // Close the image of the submonoid generated by gens_[0..=depth] under f.
  bool extend(std::size_t depth, std::vector<Element>& f, std::vector<char>& used) const {
    std::vector<Element> queue;
    for (Element x = 0; x < a_.size(); ++x) {
      if (f[x] != kUnset) queue.push_back(x);
    }
    for (std::size_t i = 0; i < queue.size(); ++i) {
      Element x = queue[i];
      for (std::size_t gi = 0; gi <= depth; ++gi) {
        Element g = gens_[gi];
        Element y = a_.mul(x, g);
        Element fy = b_.mul(f[x], f[g]);
        if (f[y] == kUnset) {
          if (used[fy] || inv_a_[y] != inv_b_[fy]) return false;
          f[y] = fy;
          used[fy] = 1;
          queue.push_back(y);
        } else if (f[y] != fy) {
          return false;
        }
      }
    }
    return true;
  }

  bool search(std::size_t depth, std::vector<Element>& f, std::vector<char>& used) {
    if (depth == gens_.size()) return true;
    Element g = gens_[depth];
    if (f[g] != kUnset) {
      auto f2 = f;
      auto used2 = used;
      if (extend(depth, f2, used2) && search(depth + 1, f2, used2)) {
        f = std::move(f2);
        return true;
      }
      return false;
    }
    for (Element c = 0; c < b_.size(); ++c) {
      if (used[c] || inv_a_[g] != inv_b_[c]) continue;
      auto f2 = f;
      auto used2 = used;
      f2[g] = c;
      used2[c] = 1;
      if (extend(depth, f2, used2) && search(depth + 1, f2, used2)) {
        f = std::move(f2);
        return true;
      }
    }
    return false;
  }

  const BipartiteMonoid& a_;
  const BipartiteMonoid& b_;
  std::vector<Invariant> inv_a_;
  std::vector<Invariant> inv_b_;
  std::vector<Element> gens_;
};

}  // namespace

std::optional<std::vector<Element>> iso(const BipartiteMonoid& a, const BipartiteMonoid& b,
                                        std::size_t max_size) {
  if (a.size() > max_size || b.size() > max_size) {
    throw InvalidArgument("isomorphism search limited to " + std::to_string(max_size) + " elements");
  }
  if (a.size() != b.size() || a.p_elements().size() != b.p_elements().size()) return std::nullopt;
  IsoSearch s(a, b);
  if (!s.plausible()) return std::nullopt;
  return s.run();
}

}  // namespace misere
