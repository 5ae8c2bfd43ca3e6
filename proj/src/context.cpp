#include <algorithm>
#include <unordered_map>

#include "misere/error.hpp"
#include "misere/quotient.hpp"

namespace misere {

ClosedContext ClosedContext::from_games(const Arena& arena, const std::vector<GameId>& generators,
                                        std::size_t max_elements) {
  std::vector<GameId> seen{arena.zero()};
  std::vector<char> mark(arena.size(), 0);
  mark[arena.zero()] = 1;
  std::vector<GameId> stack(generators.begin(), generators.end());
  while (!stack.empty()) {
    GameId g = stack.back();
    stack.pop_back();
    if (g >= mark.size()) throw InvalidArgument("game not in arena");
    if (mark[g]) continue;
    mark[g] = 1;
    seen.push_back(g);
    if (seen.size() > max_elements) {
      throw ResourceError("hereditary closure exceeds " + std::to_string(max_elements) + " games");
    }
    for (GameId o : arena.options(g)) {
      if (!mark[o]) stack.push_back(o);
    }
  }
  // Arena ids are topological: options are interned first.
  std::sort(seen.begin(), seen.end());
  std::unordered_map<GameId, std::size_t> index;
  for (std::size_t i = 0; i < seen.size(); ++i) index.emplace(seen[i], i);

  ClosedContext ctx;
  ctx.games_ = seen;
  for (GameId g : seen) {
    Member m;
    m.name = arena.render(g);
    m.weight = arena.birthday(g);
    for (GameId o : arena.options(g)) {
      if (o == arena.zero()) {
        m.options.push_back({});
      } else {
        m.options.push_back({index.at(o)});
      }
    }
    ctx.elements_.push_back(std::move(m));
  }
  return ctx;
}

ClosedContext ClosedContext::from_octal(const OctalCode& code, unsigned N) {
  ClosedContext ctx;
  ctx.octal_ = code;
  for (unsigned n = 0; n <= N; ++n) {
    Member m;
    m.name = "H" + std::to_string(n);
    m.weight = n;
    for (const auto& pos : heap_moves(code, n)) {
      std::vector<std::size_t> opt;
      for (unsigned h : pos) {
        // Heaps without moves are the game 0 and vanish from sums.
        if (!ctx.elements_[h].options.empty()) opt.push_back(h);
      }
      m.options.push_back(std::move(opt));
    }
    std::sort(m.options.begin(), m.options.end());
    m.options.erase(std::unique(m.options.begin(), m.options.end()), m.options.end());
    ctx.elements_.push_back(std::move(m));
  }
  return ctx;
}

std::optional<std::size_t> ClosedContext::index_of(GameId g) const {
  auto it = std::lower_bound(games_.begin(), games_.end(), g);
  if (it == games_.end() || *it != g) return std::nullopt;
  return std::size_t(it - games_.begin());
}

ClosedContext ClosedContext::prefix(std::size_t n) const {
  if (n == 0 || n > elements_.size()) throw InvalidArgument("prefix length out of range");
  ClosedContext ctx;
  ctx.elements_.assign(elements_.begin(), elements_.begin() + std::ptrdiff_t(n));
  if (!games_.empty()) ctx.games_.assign(games_.begin(), games_.begin() + std::ptrdiff_t(n));
  ctx.octal_ = octal_;
  return ctx;
}

std::string ClosedContext::describe() const {
  std::string s;
  if (octal_) s = octal_->text() + ":";
  for (const auto& m : elements_) {
    s += m.name;
    s += '[';
    for (const auto& o : m.options) {
      for (auto i : o) s += std::to_string(i) + "+";
      s += ';';
    }
    s += ']';
  }
  return s;
}

}  // namespace misere
