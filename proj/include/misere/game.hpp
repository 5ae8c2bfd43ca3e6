#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace misere {

enum class Outcome : std::uint8_t { P, N };
enum class Play : std::uint8_t { normal, misere };

inline char to_char(Outcome o) { return o == Outcome::P ? 'P' : 'N'; }

using GameId = std::uint32_t;

struct ArenaLimits {
  std::size_t max_nodes = std::size_t{1} << 22;
  unsigned max_birthday = 64;
  unsigned max_nesting = 64;  // parser brace depth
};

// Hash-consed store of impartial game positions. Every game is identified with
// its set of options; two games with the same option set share one id, so
// structural identity is id equality. Options always have smaller ids than the
// games that reference them, which lets all per-node quantities be computed
// once at interning time. After construction every query is const.
class Arena {
 public:
  explicit Arena(ArenaLimits limits = {});

  GameId zero() const { return 0; }

  // Sorts and deduplicates `options`; returns the existing id when present.
  GameId intern(std::vector<GameId> options);

  GameId nim_heap(unsigned n);
  GameId sum(GameId g, GameId h);

  std::span<const GameId> options(GameId g) const { return node(g).options; }
  unsigned birthday(GameId g) const { return node(g).birthday; }
  unsigned grundy(GameId g) const { return node(g).grundy; }
  Outcome outcome(GameId g, Play play) const {
    return play == Play::normal ? node(g).normal : node(g).misere;
  }
  // n when g is exactly the nim-heap *n.
  std::optional<unsigned> nim_value(GameId g) const {
    int v = node(g).nim;
    return v < 0 ? std::nullopt : std::optional<unsigned>(unsigned(v));
  }

  std::size_t size() const { return nodes_.size(); }
  const ArenaLimits& limits() const { return limits_; }

  // Brace/star notation; options in id order. parse_game(render(g)) == g.
  std::string render(GameId g) const;

 private:
  struct Node {
    std::vector<GameId> options;
    unsigned birthday = 0;
    unsigned grundy = 0;
    Outcome normal = Outcome::P;
    Outcome misere = Outcome::N;
    int nim = 0;
  };

  struct OptionsHash {
    std::size_t operator()(const std::vector<GameId>& v) const noexcept;
  };

  const Node& node(GameId g) const;
  void render_into(GameId g, std::string& out) const;

  ArenaLimits limits_;
  std::vector<Node> nodes_;
  std::unordered_map<std::vector<GameId>, GameId, OptionsHash> index_;
  std::unordered_map<std::uint64_t, GameId> sums_;
  std::vector<GameId> heaps_;
};

// game := "0" | "*" | "*" nat | "{" [game ("," game)*] "}" | name
// Whitespace is ignored. `name` resolves through builtin_game.
GameId parse_game(std::string_view text, Arena& arena);

// Named games that the brace grammar cannot spell compactly:
//   A = *, B = *2, C = {B}, D = {C,0}, E = {D,0},
//   star2sharp = C, star2sharp320 = {0,*2,*3,C}.
std::optional<GameId> builtin_game(std::string_view name, Arena& arena);
std::vector<std::string> builtin_names();

unsigned mex(std::span<const unsigned> values);
inline unsigned nim_add(unsigned a, unsigned b) { return a ^ b; }

// Value of {*a1,...,*ak} in misere play when the rule applies (some ai is 0
// or 1); empty when it does not, including the empty option list.
std::optional<unsigned> misere_mex(std::span<const unsigned> option_heaps);

}  // namespace misere
