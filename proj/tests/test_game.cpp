#include <functional>
#include <map>
#include <random>

#include "doctest.h"
#include "misere/error.hpp"
#include "misere/game.hpp"

using namespace misere;

namespace {

// Reference recursions computed from the option lists alone.
struct Reference {
  const Arena& arena;
  std::map<GameId, bool> normal_p, misere_p;
  std::map<GameId, unsigned> height;

  bool normal(GameId g) {
    if (auto it = normal_p.find(g); it != normal_p.end()) return it->second;
    bool p = true;
    for (GameId o : arena.options(g)) p = p && !normal(o);
    return normal_p[g] = p;
  }
  bool misere(GameId g) {
    if (auto it = misere_p.find(g); it != misere_p.end()) return it->second;
    bool p = !arena.options(g).empty();
    for (GameId o : arena.options(g)) p = p && !misere(o);
    return misere_p[g] = p;
  }
  unsigned birthday(GameId g) {
    if (auto it = height.find(g); it != height.end()) return it->second;
    unsigned h = 0;
    for (GameId o : arena.options(g)) h = std::max(h, birthday(o) + 1);
    return height[g] = h;
  }
};

std::vector<GameId> random_corpus(Arena& arena, std::mt19937& rng, std::size_t count) {
  std::vector<GameId> games{arena.zero()};
  while (games.size() < count) {
    std::vector<GameId> opts;
    std::uniform_int_distribution<std::size_t> pick(0, games.size() - 1);
    std::size_t k = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
    for (std::size_t i = 0; i < k; ++i) opts.push_back(games[pick(rng)]);
    GameId g = arena.intern(opts);
    if (arena.birthday(g) <= 8) games.push_back(g);
  }
  return games;
}

GameId sum_of(Arena& arena, const std::vector<unsigned>& heaps) {
  GameId g = arena.zero();
  for (unsigned h : heaps) g = arena.sum(g, arena.nim_heap(h));
  return g;
}

// All multisets over {1..max_heap} with at most max_parts parts.
void multisets(unsigned max_heap, unsigned max_parts, std::vector<unsigned>& cur,
               const std::function<void(const std::vector<unsigned>&)>& visit) {
  visit(cur);
  if (cur.size() == max_parts) return;
  unsigned lo = cur.empty() ? 1 : cur.back();
  for (unsigned h = lo; h <= max_heap; ++h) {
    cur.push_back(h);
    multisets(max_heap, max_parts, cur, visit);
    cur.pop_back();
  }
}

}  // namespace

TEST_CASE("parse_game basics") {
  Arena a;
  CHECK(parse_game("{}", a) == a.zero());
  CHECK(parse_game("0", a) == a.zero());
  CHECK(parse_game("*0", a) == a.zero());
  CHECK(parse_game("{0}", a) == parse_game("*", a));
  CHECK(parse_game("*1", a) == parse_game("*", a));
  CHECK(parse_game(" { 0 , * } ", a) == a.nim_heap(2));
  CHECK(parse_game("{0,0,*}", a) == a.nim_heap(2));

  GameId g = parse_game("{0,*2,*3,{*2}}", a);
  CHECK(a.options(g).size() == 4);
  CHECK(g == *builtin_game("star2sharp320", a));
  CHECK(parse_game("star2sharp320", a) == g);
}

TEST_CASE("parse_game errors carry positions") {
  Arena a;
  CHECK_THROWS_AS(parse_game("{0,", a), ParseError);
  CHECK_THROWS_AS(parse_game("{0}}", a), ParseError);
  CHECK_THROWS_AS(parse_game("00", a), ParseError);
  CHECK_THROWS_AS(parse_game("Q", a), ParseError);
  try {
    parse_game("{0,x}", a);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 3);
  }
  ArenaLimits limits;
  limits.max_nesting = 3;
  Arena small(limits);
  CHECK_NOTHROW(parse_game("{{{0}}}", small));
  CHECK_THROWS_AS(parse_game("{{{{0}}}}", small), ParseError);
}

TEST_CASE("render round-trips") {
  Arena a;
  std::mt19937 rng(7);
  for (GameId g : random_corpus(a, rng, 300)) {
    CHECK(parse_game(a.render(g), a) == g);
  }
  CHECK(a.render(a.zero()) == "0");
  CHECK(a.render(a.nim_heap(1)) == "*");
  CHECK(a.render(a.nim_heap(4)) == "*4");
}

TEST_CASE("nim heaps and options") {
  Arena a;
  CHECK(a.options(a.nim_heap(0)).empty());
  REQUIRE(a.options(a.nim_heap(1)).size() == 1);
  CHECK(a.options(a.nim_heap(1))[0] == a.zero());
  auto o3 = a.options(a.nim_heap(3));
  CHECK(std::vector<GameId>(o3.begin(), o3.end()) ==
        std::vector<GameId>{a.zero(), a.nim_heap(1), a.nim_heap(2)});
  GameId c = *builtin_game("C", a);
  REQUIRE(a.options(c).size() == 1);
  CHECK(a.options(c)[0] == a.nim_heap(2));
  for (unsigned n = 0; n <= 10; ++n) {
    CHECK(a.birthday(a.nim_heap(n)) == n);
    CHECK(a.nim_value(a.nim_heap(n)) == n);
  }
  // E -> D -> C -> *2 -> * -> 0
  CHECK(a.birthday(*builtin_game("E", a)) == 5);
  CHECK_FALSE(a.nim_value(c).has_value());
}

TEST_CASE("sums") {
  Arena a;
  GameId s = a.nim_heap(1);
  GameId ss = a.sum(s, s);
  REQUIRE(a.options(ss).size() == 1);
  CHECK(a.options(ss)[0] == s);
  CHECK(a.grundy(a.sum(a.nim_heap(5), a.nim_heap(3))) == 6);

  std::mt19937 rng(11);
  auto games = random_corpus(a, rng, 40);
  for (GameId g : games) {
    CHECK(a.sum(g, a.zero()) == g);
    for (GameId h : games) {
      GameId gh = a.sum(g, h);
      CHECK(gh == a.sum(h, g));
      CHECK(a.grundy(gh) == nim_add(a.grundy(g), a.grundy(h)));
    }
  }
  for (std::size_t i = 0; i + 2 < 30; ++i) {
    GameId g = games[i], h = games[i + 1], k = games[i + 2];
    CHECK(a.sum(a.sum(g, h), k) == a.sum(g, a.sum(h, k)));
  }
}

TEST_CASE("outcomes agree with the reference recursions on random DAGs") {
  Arena a;
  std::mt19937 rng(3);
  auto games = random_corpus(a, rng, 2000);
  Reference ref{a, {}, {}, {}};
  for (GameId g : games) {
    CHECK((a.outcome(g, Play::normal) == Outcome::P) == ref.normal(g));
    CHECK((a.outcome(g, Play::misere) == Outcome::P) == ref.misere(g));
    CHECK(a.birthday(g) == ref.birthday(g));
    CHECK((a.outcome(g, Play::normal) == Outcome::P) == (a.grundy(g) == 0));
  }
}

TEST_CASE("named outcomes") {
  Arena a;
  GameId s = a.nim_heap(1), s2 = a.nim_heap(2);
  CHECK(a.outcome(a.zero(), Play::normal) == Outcome::P);
  CHECK(a.outcome(a.zero(), Play::misere) == Outcome::N);
  CHECK(a.outcome(s, Play::misere) == Outcome::P);
  GameId two = a.sum(s2, s2);
  CHECK(a.outcome(two, Play::misere) == Outcome::P);
  CHECK(a.outcome(a.sum(two, two), Play::misere) == Outcome::P);
  CHECK(a.outcome(a.sum(two, s), Play::misere) == Outcome::N);
  CHECK(a.grundy(*builtin_game("C", a)) == 0);
}

TEST_CASE("misere identities over cl(*, *2, *3)") {
  Arena a;
  std::vector<unsigned> cur;
  GameId star = a.nim_heap(1);
  multisets(3, 6, cur, [&](const std::vector<unsigned>& heaps) {
    GameId x = sum_of(a, heaps);
    CHECK(a.outcome(a.sum(a.sum(star, star), x), Play::misere) == a.outcome(x, Play::misere));
    for (unsigned m = 0; m <= 7; ++m) {
      GameId lhs = a.sum(a.sum(a.nim_heap(m), star), x);
      GameId rhs = a.sum(a.nim_heap(m ^ 1u), x);
      CHECK(a.outcome(lhs, Play::misere) == a.outcome(rhs, Play::misere));
    }
  });
}

TEST_CASE("mex and the misere mex rule") {
  CHECK(mex(std::vector<unsigned>{}) == 0);
  CHECK(mex(std::vector<unsigned>{0, 1, 2}) == 3);
  CHECK(mex(std::vector<unsigned>{1, 2}) == 0);
  CHECK(misere_mex(std::vector<unsigned>{0, 1, 2}) == 3u);
  CHECK_FALSE(misere_mex(std::vector<unsigned>{2}).has_value());
  CHECK_FALSE(misere_mex(std::vector<unsigned>{}).has_value());
  CHECK(misere_mex(std::vector<unsigned>{1, 3}) == 0u);

  // {*, *3} and 0 are indistinguishable against sums of *, *2, *3.
  Arena a;
  GameId g = a.intern({a.nim_heap(1), a.nim_heap(3)});
  std::vector<unsigned> cur;
  multisets(3, 6, cur, [&](const std::vector<unsigned>& heaps) {
    GameId x = sum_of(a, heaps);
    CHECK(a.outcome(a.sum(g, x), Play::misere) == a.outcome(x, Play::misere));
  });
  CHECK(nim_add(0b11101001u, 0b01101111u) == 0b10000110u);
  CHECK(nim_add(nim_add(0b11101001u, 0b01101111u), 0b00000111u) == 0b10000001u);
}

TEST_CASE("arena limits") {
  ArenaLimits limits;
  limits.max_birthday = 5;
  Arena a(limits);
  CHECK_NOTHROW(a.nim_heap(5));
  CHECK_THROWS_AS(a.nim_heap(6), ResourceError);
  ArenaLimits tiny;
  tiny.max_nodes = 4;
  Arena b(tiny);
  CHECK_THROWS_AS(b.nim_heap(8), ResourceError);
}
