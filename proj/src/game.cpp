#include "misere/game.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "misere/error.hpp"

namespace misere {

std::size_t Arena::OptionsHash::operator()(const std::vector<GameId>& v) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ v.size();
  for (GameId x : v) {
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

Arena::Arena(ArenaLimits limits) : limits_(limits) {
  nodes_.reserve(64);
  intern({});
}

const Arena::Node& Arena::node(GameId g) const {
  if (g >= nodes_.size()) throw InvalidArgument("game id " + std::to_string(g) + " not in arena");
  return nodes_[g];
}

GameId Arena::intern(std::vector<GameId> options) {
  std::sort(options.begin(), options.end());
  options.erase(std::unique(options.begin(), options.end()), options.end());
  if (auto it = index_.find(options); it != index_.end()) return it->second;

  if (nodes_.size() >= limits_.max_nodes) {
    throw ResourceError("arena capacity of " + std::to_string(limits_.max_nodes) + " games exhausted");
  }
  Node n;
  std::vector<unsigned> values;
  values.reserve(options.size());
  bool all_nim = true;
  unsigned max_nim = 0;
  n.normal = Outcome::P;
  n.misere = options.empty() ? Outcome::N : Outcome::P;
  for (GameId o : options) {
    const Node& child = node(o);
    n.birthday = std::max(n.birthday, child.birthday + 1);
    values.push_back(child.grundy);
    if (child.normal == Outcome::P) n.normal = Outcome::N;
    if (child.misere == Outcome::P) n.misere = Outcome::N;
    if (child.nim < 0) {
      all_nim = false;
    } else {
      max_nim = std::max(max_nim, unsigned(child.nim));
    }
  }
  if (n.birthday > limits_.max_birthday) {
    throw ResourceError("birthday " + std::to_string(n.birthday) + " exceeds limit " +
                        std::to_string(limits_.max_birthday));
  }
  n.grundy = mex(values);
  // Distinct ids imply distinct nim values, so {*0..*(k-1)} is recognised by
  // count and maximum alone.
  if (options.empty()) {
    n.nim = 0;
  } else if (all_nim && max_nim + 1 == options.size()) {
    n.nim = int(options.size());
  } else {
    n.nim = -1;
  }
  n.options = options;
  GameId id = GameId(nodes_.size());
  nodes_.push_back(std::move(n));
  index_.emplace(std::move(options), id);
  return id;
}

GameId Arena::nim_heap(unsigned n) {
  while (heaps_.size() <= n) {
    heaps_.push_back(intern(heaps_));
  }
  return heaps_[n];
}

GameId Arena::sum(GameId g, GameId h) {
  node(g);
  node(h);
  if (g > h) std::swap(g, h);
  if (g == zero()) return h;
  std::uint64_t key = (std::uint64_t(g) << 32) | h;
  if (auto it = sums_.find(key); it != sums_.end()) return it->second;

  std::vector<GameId> opts;
  // Copy option lists: recursive interning may reallocate nodes_.
  std::vector<GameId> g_opts = nodes_[g].options;
  std::vector<GameId> h_opts = nodes_[h].options;
  opts.reserve(g_opts.size() + h_opts.size());
  for (GameId go : g_opts) opts.push_back(sum(go, h));
  for (GameId ho : h_opts) opts.push_back(sum(g, ho));
  GameId id = intern(std::move(opts));
  sums_.emplace(key, id);
  return id;
}

void Arena::render_into(GameId g, std::string& out) const {
  const Node& n = node(g);
  if (n.nim == 0) {
    out += '0';
  } else if (n.nim == 1) {
    out += '*';
  } else if (n.nim > 1) {
    out += '*';
    out += std::to_string(n.nim);
  } else {
    out += '{';
    for (std::size_t i = 0; i < n.options.size(); ++i) {
      if (i) out += ',';
      render_into(n.options[i], out);
    }
    out += '}';
  }
}

std::string Arena::render(GameId g) const {
  std::string out;
  render_into(g, out);
  return out;
}

namespace {

class GameParser {
 public:
  GameParser(std::string_view text, Arena& arena) : text_(text), arena_(arena) {}

  GameId parse() {
    GameId g = game(0);
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  GameId game(unsigned depth) {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected a game");
    char c = text_[pos_];
    if (c == '0') {
      ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        fail("numbers other than 0 need a '*' prefix");
      }
      return arena_.zero();
    }
    if (c == '*') {
      ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        return arena_.nim_heap(natural());
      }
      return arena_.nim_heap(1);
    }
    if (c == '{') {
      if (depth + 1 > arena_.limits().max_nesting) fail("nesting depth exceeds limit");
      ++pos_;
      std::vector<GameId> opts;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '}') {
        ++pos_;
        return arena_.zero();
      }
      for (;;) {
        opts.push_back(game(depth + 1));
        skip_ws();
        if (pos_ >= text_.size()) fail("unterminated '{'");
        if (text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (text_[pos_] == '}') {
          ++pos_;
          break;
        }
        fail("expected ',' or '}'");
      }
      return arena_.intern(std::move(opts));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      auto name = text_.substr(start, pos_ - start);
      if (auto g = builtin_game(name, arena_)) return *g;
      pos_ = start;
      fail("unknown game name '" + std::string(name) + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  unsigned natural() {
    std::size_t start = pos_;
    unsigned long long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + unsigned(text_[pos_] - '0');
      if (v > arena_.limits().max_birthday) {
        pos_ = start;
        fail("nim-heap size exceeds birthday limit");
      }
      ++pos_;
    }
    return unsigned(v);
  }

  std::string_view text_;
  Arena& arena_;
  std::size_t pos_ = 0;
};

}  // namespace

GameId parse_game(std::string_view text, Arena& arena) { return GameParser(text, arena).parse(); }

std::vector<std::string> builtin_names() {
  return {"A", "B", "C", "D", "E", "star2sharp", "star2sharp320"};
}

std::optional<GameId> builtin_game(std::string_view name, Arena& arena) {
  GameId zero = arena.zero();
  GameId a = arena.nim_heap(1);
  GameId b = arena.nim_heap(2);
  if (name == "A") return a;
  if (name == "B") return b;
  GameId c = arena.intern({b});
  if (name == "C" || name == "star2sharp") return c;
  GameId d = arena.intern({c, zero});
  if (name == "D") return d;
  if (name == "E") return arena.intern({d, zero});
  if (name == "star2sharp320") return arena.intern({zero, b, arena.nim_heap(3), c});
  return std::nullopt;
}

unsigned mex(std::span<const unsigned> values) {
  std::vector<bool> seen(values.size() + 1, false);
  for (unsigned v : values) {
    if (v < seen.size()) seen[v] = true;
  }
  unsigned m = 0;
  while (seen[m]) ++m;
  return m;
}

std::optional<unsigned> misere_mex(std::span<const unsigned> option_heaps) {
  bool small = std::any_of(option_heaps.begin(), option_heaps.end(), [](unsigned a) { return a <= 1; });
  if (!small) return std::nullopt;
  return mex(option_heaps);
}

}  // namespace misere
