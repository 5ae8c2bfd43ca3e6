#include <algorithm>
#include <cstdint>
#include <cstring>
#include <map>
#include <set>
#include <unordered_map>

#include "misere/error.hpp"
#include "misere/quotient.hpp"

namespace misere {

namespace {

using Bits = std::vector<std::uint64_t>;

bool test_bit(const Bits& b, std::size_t i) { return (b[i >> 6] >> (i & 63)) & 1u; }
void set_bit(Bits& b, std::size_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }

void check_candidate(const ClosedContext& ctx, const BipartiteMonoid& m, const std::vector<Element>& phi) {
  if (phi.size() != ctx.size()) throw InvalidArgument("phi must give a value for every context element");
  for (Element x : phi) {
    if (x >= m.size()) throw InvalidArgument("phi value out of range");
  }
  if (!is_reduced(m)) throw InvalidArgument("candidate monoid is not reduced");
}

// Phi''g for every element, as sorted distinct values.
std::vector<std::vector<Element>> option_values(const ClosedContext& ctx, const BipartiteMonoid& m,
                                                const std::vector<Element>& phi) {
  std::vector<std::vector<Element>> out(ctx.size());
  for (std::size_t e = 0; e < ctx.size(); ++e) {
    for (const auto& option : ctx.element(e).options) {
      Element v = m.identity();
      for (std::size_t part : option) v = m.mul(v, phi[part]);
      out[e].push_back(v);
    }
    std::sort(out[e].begin(), out[e].end());
    out[e].erase(std::unique(out[e].begin(), out[e].end()), out[e].end());
  }
  return out;
}

// Common preliminaries; returns a failure or nullopt.
std::optional<VerifyResult> basic_checks(const ClosedContext& ctx, const BipartiteMonoid& m,
                                         const std::vector<Element>& phi) {
  std::vector<Element> images;
  for (std::size_t e = 0; e < ctx.size(); ++e) {
    if (ctx.is_zero(e)) {
      if (phi[e] != m.identity()) {
        Position w(ctx.size(), 0);
        w[e] = 1;
        return VerifyResult{false, "the game 0 does not map to the identity", w};
      }
    } else {
      images.push_back(phi[e]);
    }
  }
  auto mask = generated(m, images);
  if (std::find(mask.begin(), mask.end(), 0) != mask.end()) {
    return VerifyResult{false, "phi is not surjective", std::nullopt};
  }
  return std::nullopt;
}

}  // namespace

Element phi_of(const BipartiteMonoid& m, const std::vector<Element>& phi, const Position& pos) {
  if (pos.size() > phi.size()) throw InvalidArgument("position longer than phi");
  Element v = m.identity();
  for (std::size_t e = 0; e < pos.size(); ++e) {
    if (pos[e]) v = m.mul(v, m.power(phi[e], pos[e]));
  }
  return v;
}

Outcome position_outcome_via_quotient(const QuotientResult& result, const Position& pos) {
  if (result.status != QuotientStatus::verified || !result.monoid) {
    throw InvalidArgument("quotient is undetermined");
  }
  return result.monoid->in_p(phi_of(*result.monoid, result.phi, pos)) ? Outcome::P : Outcome::N;
}

// Positions are grouped into types of interchangeable elements (same phi
// value and same option values). For each type only the exponents
// 0..index+period of its phi value matter, since the condition depends on
// phi(g)^x and phi(g)^(x-1) alone. The search runs over types with state
// (phi so far, nonzero, F) where F(r) records whether some option of the
// partial sum lands in P after multiplying by r.
VerifyResult verify_quotient(const ClosedContext& ctx, const BipartiteMonoid& m,
                             const std::vector<Element>& phi) {
  check_candidate(ctx, m, phi);
  if (auto failure = basic_checks(ctx, m, phi)) return *failure;

  const std::size_t n = m.size();
  const std::size_t words = (n + 63) / 64;
  auto opts = option_values(ctx, m, phi);

  struct Type {
    std::size_t element;
    Element value;
    unsigned limit;
    Bits win;  // win[w]: some option value o has w*o in P
  };
  std::vector<Type> types;
  std::map<std::pair<Element, std::vector<Element>>, std::size_t> seen;
  for (std::size_t e = 0; e < ctx.size(); ++e) {
    if (ctx.is_zero(e)) continue;
    auto key = std::make_pair(phi[e], opts[e]);
    if (seen.count(key)) continue;
    seen.emplace(key, types.size());
    auto [index, period] = m.index_period(phi[e]);
    Type t{e, phi[e], index + period, Bits(words, 0)};
    for (Element w = 0; w < n; ++w) {
      for (Element o : opts[e]) {
        if (m.in_p(m.mul(w, o))) {
          set_bit(t.win, w);
          break;
        }
      }
    }
    types.push_back(std::move(t));
  }

  struct State {
    Element q;
    bool nonzero;
    Bits f;
    std::uint32_t parent;
    unsigned exponent;
  };
  std::vector<std::vector<State>> layers(1);
  layers[0].push_back({m.identity(), false, Bits(words, 0), 0, 0});

  auto key_of = [&](const State& s) {
    std::string k(sizeof(Element) + 1 + words * 8, '\0');
    std::memcpy(k.data(), &s.q, sizeof(Element));
    k[sizeof(Element)] = s.nonzero ? 1 : 0;
    std::memcpy(k.data() + sizeof(Element) + 1, s.f.data(), words * 8);
    return k;
  };

  for (const Type& t : types) {
    std::vector<State> next;
    std::unordered_map<std::string, std::uint32_t> index;
    const auto& layer = layers.back();
    for (std::uint32_t si = 0; si < layer.size(); ++si) {
      const State& s = layer[si];
      Element pow_prev = m.identity();  // value^(x-1)
      Element pow = m.identity();       // value^x
      for (unsigned x = 0; x <= t.limit; ++x) {
        State ns{m.mul(s.q, pow), s.nonzero || x > 0, Bits(words, 0), si, x};
        Element base = m.mul(s.q, pow_prev);
        for (Element r = 0; r < n; ++r) {
          bool v = test_bit(s.f, m.mul(r, pow));
          if (!v && x > 0) v = test_bit(t.win, m.mul(r, base));
          if (v) set_bit(ns.f, r);
        }
        auto k = key_of(ns);
        if (!index.count(k)) {
          index.emplace(std::move(k), std::uint32_t(next.size()));
          next.push_back(std::move(ns));
        }
        if (x > 0) pow_prev = m.mul(pow_prev, t.value);
        pow = m.mul(pow, t.value);
      }
    }
    layers.push_back(std::move(next));
  }

  const auto& last = layers.back();
  for (std::uint32_t si = 0; si < last.size(); ++si) {
    const State& s = last[si];
    bool expect_p = s.nonzero && !test_bit(s.f, m.identity());
    if (m.in_p(s.q) == expect_p) continue;
    Position w(ctx.size(), 0);
    std::uint32_t cur = si;
    for (std::size_t li = layers.size() - 1; li > 0; --li) {
      const State& st = layers[li][cur];
      w[types[li - 1].element] = st.exponent;
      cur = st.parent;
    }
    std::string why = m.in_p(s.q) ? "position maps into P but is 0 or has an option in P"
                                   : "position maps outside P but every option is outside P";
    return VerifyResult{false, why, w};
  }
  return VerifyResult{true, "", std::nullopt};
}

VerifyResult verify_quotient_exhaustive(const ClosedContext& ctx, const BipartiteMonoid& m,
                                        const std::vector<Element>& phi, std::optional<unsigned> bound) {
  check_candidate(ctx, m, phi);
  if (auto failure = basic_checks(ctx, m, phi)) return *failure;
  const unsigned b = bound.value_or(unsigned(2 * m.size() + 1));
  std::vector<std::size_t> comps;
  for (std::size_t e = 0; e < ctx.size(); ++e) {
    if (!ctx.is_zero(e)) comps.push_back(e);
  }
  double count = 1;
  for (std::size_t i = 0; i < comps.size(); ++i) count *= double(b) + 1;
  if (count > 5e7) throw ResourceError("exhaustive verification region too large");

  std::vector<std::vector<Element>> option_phi(ctx.size());
  for (std::size_t e : comps) {
    for (const auto& option : ctx.element(e).options) {
      Element v = m.identity();
      for (std::size_t part : option) v = m.mul(v, phi[part]);
      option_phi[e].push_back(v);
    }
  }
  Position x(ctx.size(), 0);
  for (;;) {
    Element q = phi_of(m, phi, x);
    bool nonzero = false;
    bool option_in_p = false;
    for (std::size_t e : comps) {
      if (x[e] == 0) continue;
      nonzero = true;
      --x[e];
      Element rest = phi_of(m, phi, x);
      ++x[e];
      for (Element o : option_phi[e]) option_in_p |= m.in_p(m.mul(rest, o));
    }
    if (m.in_p(q) != (nonzero && !option_in_p)) {
      return VerifyResult{false, "outcome recursion fails", x};
    }
    std::size_t i = 0;
    while (i < comps.size() && x[comps[i]] == b) x[comps[i++]] = 0;
    if (i == comps.size()) break;
    ++x[comps[i]];
  }
  return VerifyResult{true, "", std::nullopt};
}

CanonicalForm canonicalize(const BipartiteMonoid& m, const std::vector<Element>& phi) {
  const std::size_t n = m.size();
  std::vector<Element> letters;
  std::vector<std::size_t> generator_elements;
  for (std::size_t e = 0; e < phi.size(); ++e) {
    auto mask = generated(m, letters);
    if (mask[phi[e]]) continue;
    letters.push_back(phi[e]);
    generator_elements.push_back(e);
  }
  auto letter_name = [](std::size_t i) {
    return i < 26 ? std::string(1, char('a' + i)) : "x" + std::to_string(i) + "_";
  };

  // Level t holds, for every element that is a product of exactly t
  // letters, its least exponent vector compared from the last letter down
  // (so b2 precedes c2 and b2c precedes acf). The order is translation
  // invariant, so level t follows from level t-1. Elements are named by
  // their vector on the first level they appear on.
  auto less = [](const std::vector<unsigned>& x, const std::vector<unsigned>& y) {
    return std::lexicographical_compare(x.rbegin(), x.rend(), y.rbegin(), y.rend());
  };
  std::vector<Element> order;
  std::vector<std::string> labels;
  std::vector<char> placed(n, 0);
  auto name_of = [&](const std::vector<unsigned>& v) {
    std::string label;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0) continue;
      label += letter_name(i);
      if (v[i] > 1) label += std::to_string(v[i]);
    }
    return label.empty() ? std::string("1") : label;
  };
  std::map<Element, std::vector<unsigned>> level{{m.identity(), std::vector<unsigned>(letters.size(), 0)}};
  std::set<std::vector<Element>> seen_levels;
  for (;;) {
    std::vector<std::pair<std::vector<unsigned>, Element>> fresh;
    std::vector<Element> members;
    for (const auto& [value, vec] : level) {
      members.push_back(value);
      if (!placed[value]) fresh.emplace_back(vec, value);
    }
    std::sort(fresh.begin(), fresh.end(), [&](const auto& x, const auto& y) { return less(x.first, y.first); });
    for (const auto& [vec, value] : fresh) {
      placed[value] = 1;
      order.push_back(value);
      labels.push_back(name_of(vec));
    }
    if (order.size() == n || !seen_levels.insert(members).second) break;
    std::map<Element, std::vector<unsigned>> next;
    for (const auto& [value, vec] : level) {
      for (std::size_t l = 0; l < letters.size(); ++l) {
        auto child = vec;
        ++child[l];
        Element v = m.mul(value, letters[l]);
        auto it = next.find(v);
        if (it == next.end()) {
          next.emplace(v, std::move(child));
        } else if (less(child, it->second)) {
          it->second = std::move(child);
        }
      }
    }
    if (next.empty()) break;
    level = std::move(next);
  }
  for (Element x = 0; x < n; ++x) {
    if (!placed[x]) {
      order.push_back(x);
      labels.push_back("#" + std::to_string(x));
    }
  }
  std::vector<Element> inverse(n);
  for (std::size_t i = 0; i < n; ++i) inverse[order[i]] = Element(i);
  CanonicalForm out{m.permuted(order, labels), {}, generator_elements};
  for (Element v : phi) out.phi.push_back(inverse[v]);
  return out;
}

}  // namespace misere
