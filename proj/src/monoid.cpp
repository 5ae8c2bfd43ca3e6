#include "misere/monoid.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "misere/error.hpp"

namespace misere {

BipartiteMonoid::BipartiteMonoid(std::size_t size, std::vector<Element> table, Element identity,
                                 std::vector<Element> p, std::vector<std::string> labels)
    : n_(size), table_(std::move(table)), identity_(identity), p_mask_(size, 0), labels_(std::move(labels)) {
  if (n_ == 0) throw InvalidArgument("monoid must have at least one element");
  if (table_.size() != n_ * n_) throw InvalidArgument("table must have size*size entries");
  if (identity_ >= n_) throw InvalidArgument("identity out of range");
  if (!labels_.empty() && labels_.size() != n_) throw InvalidArgument("labels must name every element");
  for (Element x : table_) {
    if (x >= n_) throw InvalidArgument("table entry out of range");
  }
  for (Element x : p) {
    if (x >= n_) throw InvalidArgument("P element out of range");
    p_mask_[x] = 1;
  }
  for (Element x = 0; x < n_; ++x) {
    if (mul(identity_, x) != x) throw InvalidArgument("identity law fails");
    for (Element y = x + 1; y < n_; ++y) {
      if (mul(x, y) != mul(y, x)) throw InvalidArgument("table is not commutative");
    }
  }
  if (n_ <= kExhaustiveCheckLimit) {
    for (Element x = 0; x < n_; ++x) {
      for (Element y = 0; y < n_; ++y) {
        Element xy = mul(x, y);
        for (Element w = 0; w < n_; ++w) {
          if (mul(xy, w) != mul(x, mul(y, w))) throw InvalidArgument("table is not associative");
        }
      }
    }
  }
}

std::vector<Element> BipartiteMonoid::p_elements() const {
  std::vector<Element> out;
  for (Element x = 0; x < n_; ++x) {
    if (p_mask_[x]) out.push_back(x);
  }
  return out;
}

std::string BipartiteMonoid::label(Element x) const {
  if (x < labels_.size()) return labels_[x];
  return std::to_string(x);
}

Element BipartiteMonoid::power(Element x, unsigned e) const {
  Element r = identity_;
  Element b = x;
  while (e) {
    if (e & 1u) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

std::pair<unsigned, unsigned> BipartiteMonoid::index_period(Element x) const {
  std::vector<int> seen(n_, -1);
  Element cur = identity_;
  for (unsigned e = 0;; ++e) {
    if (seen[cur] >= 0) return {unsigned(seen[cur]), e - unsigned(seen[cur])};
    seen[cur] = int(e);
    cur = mul(cur, x);
  }
}

BipartiteMonoid BipartiteMonoid::permuted(std::span<const Element> order,
                                          std::vector<std::string> labels) const {
  if (order.size() != n_) throw InvalidArgument("permutation has wrong length");
  std::vector<Element> inverse(n_, Element(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    if (order[i] >= n_ || inverse[order[i]] != n_) throw InvalidArgument("not a permutation");
    inverse[order[i]] = Element(i);
  }
  std::vector<Element> table(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      table[i * n_ + j] = inverse[mul(order[i], order[j])];
    }
  }
  std::vector<Element> p;
  for (Element x = 0; x < n_; ++x) {
    if (in_p(order[x])) p.push_back(x);
  }
  if (labels.empty() && !labels_.empty()) {
    for (Element x : order) labels.push_back(labels_[x]);
  }
  return BipartiteMonoid(n_, std::move(table), inverse[identity_], std::move(p), std::move(labels));
}

bool indistinguishable(const BipartiteMonoid& m, Element x, Element y) {
  for (Element z = 0; z < m.size(); ++z) {
    if (m.in_p(m.mul(x, z)) != m.in_p(m.mul(y, z))) return false;
  }
  return true;
}

Reduction reduce(const BipartiteMonoid& m) {
  const std::size_t n = m.size();
  // x and y are indistinguishable iff their rows of P-membership agree.
  std::unordered_map<std::string, Element> by_row;
  std::vector<Element> projection(n);
  std::vector<Element> representative;
  for (Element x = 0; x < n; ++x) {
    std::string row(n, '0');
    for (Element z = 0; z < n; ++z) row[z] = m.in_p(m.mul(x, z)) ? '1' : '0';
    auto [it, inserted] = by_row.emplace(std::move(row), Element(representative.size()));
    if (inserted) representative.push_back(x);
    projection[x] = it->second;
  }
  const std::size_t k = representative.size();
  std::vector<Element> table(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      table[i * k + j] = projection[m.mul(representative[i], representative[j])];
    }
  }
  std::vector<Element> p;
  std::vector<std::string> labels;
  for (Element c = 0; c < k; ++c) {
    if (m.in_p(representative[c])) p.push_back(c);
    if (!m.labels().empty()) labels.push_back(m.labels()[representative[c]]);
  }
  return Reduction{BipartiteMonoid(k, std::move(table), projection[m.identity()], std::move(p), std::move(labels)),
                   std::move(projection)};
}

bool is_reduced(const BipartiteMonoid& m) { return reduce(m).monoid.size() == m.size(); }

std::vector<char> generated(const BipartiteMonoid& m, std::span<const Element> gens) {
  std::vector<char> mask(m.size(), 0);
  std::vector<Element> queue{m.identity()};
  mask[m.identity()] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (Element g : gens) {
      Element y = m.mul(queue[i], g);
      if (!mask[y]) {
        mask[y] = 1;
        queue.push_back(y);
      }
    }
  }
  return mask;
}

// --- presentations ---------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

}  // namespace

Word parse_word(std::string_view text, const std::vector<std::string>& generators) {
  text = trim(text);
  Word w(generators.size(), 0);
  if (text == "1") return w;
  if (text.empty()) throw ParseError("empty word", 0);
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    auto it = std::find(generators.begin(), generators.end(), std::string(1, c));
    if (it == generators.end()) throw ParseError(std::string("unknown generator '") + c + "'", i);
    ++i;
    unsigned e = 0;
    bool has_digits = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      e = e * 10 + unsigned(text[i] - '0');
      has_digits = true;
      ++i;
    }
    w[std::size_t(it - generators.begin())] += has_digits ? e : 1;
  }
  return w;
}

std::string format_word(const Word& w, const std::vector<std::string>& generators) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0) continue;
    s += generators[i];
    if (w[i] > 1) s += std::to_string(w[i]);
  }
  return s.empty() ? "1" : s;
}

Presentation parse_presentation(std::string_view text) {
  auto bar = text.find('|');
  if (bar == std::string_view::npos) throw ParseError("presentation needs '|'", text.size());
  Presentation pres;
  for (auto g : split(text.substr(0, bar), ',')) {
    g = trim(g);
    if (g.size() != 1 || !std::isalpha(static_cast<unsigned char>(g[0]))) {
      throw ParseError("generators must be single letters", 0);
    }
    if (std::find(pres.generators.begin(), pres.generators.end(), std::string(g)) != pres.generators.end()) {
      throw ParseError("duplicate generator", 0);
    }
    pres.generators.emplace_back(g);
  }
  auto body = trim(text.substr(bar + 1));
  if (body.empty()) return pres;
  for (auto rel : split(body, ',')) {
    auto sides = split(rel, '=');
    if (sides.size() != 2) throw ParseError("relation must have exactly one '='", bar + 1);
    pres.relations.push_back({parse_word(sides[0], pres.generators), parse_word(sides[1], pres.generators)});
  }
  return pres;
}

Element evaluate(const BipartiteMonoid& m, std::span<const Element> images, const Word& w) {
  if (w.size() != images.size()) throw InvalidArgument("word length does not match generator count");
  Element r = m.identity();
  for (std::size_t i = 0; i < w.size(); ++i) r = m.mul(r, m.power(images[i], w[i]));
  return r;
}

bool check_presentation(const BipartiteMonoid& m, std::span<const Element> images, const Presentation& pres) {
  if (images.size() != pres.generators.size()) throw InvalidArgument("one image per generator required");
  for (Element x : images) {
    if (x >= m.size()) throw InvalidArgument("generator image out of range");
  }
  for (const auto& r : pres.relations) {
    if (evaluate(m, images, r.lhs) != evaluate(m, images, r.rhs)) return false;
  }
  auto mask = generated(m, images);
  return std::all_of(mask.begin(), mask.end(), [](char c) { return c != 0; });
}

}  // namespace misere
