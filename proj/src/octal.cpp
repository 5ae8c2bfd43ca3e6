#include "misere/octal.hpp"

#include <algorithm>
#include <map>

#include "misere/error.hpp"

namespace misere {

OctalCode::OctalCode(std::vector<std::uint8_t> digits) : digits_(std::move(digits)) {
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (digits_[i] > 7) throw InvalidArgument("octal digit out of range");
    if (digits_[i] != 0) k_ = unsigned(i + 1);
  }
  if (k_ == 0) throw InvalidArgument("octal code needs a nonzero digit");
  digits_.resize(k_);
}

std::string OctalCode::text() const {
  std::string s = "0.";
  for (auto d : digits_) s += char('0' + d);
  return s;
}

OctalCode parse_octal(std::string_view text) {
  if (text.size() < 2 || text[0] != '0' || text[1] != '.') {
    throw ParseError("octal code must start with \"0.\"", 0);
  }
  if (text.size() == 2) throw ParseError("octal code has no digits", 2);
  std::vector<std::uint8_t> digits;
  bool nonzero = false;
  for (std::size_t i = 2; i < text.size(); ++i) {
    char c = text[i];
    if (c < '0' || c > '9') throw ParseError("unexpected character in octal code", i);
    if (c > '7') throw ParseError("octal digit must be 0-7", i);
    digits.push_back(std::uint8_t(c - '0'));
    nonzero |= c != '0';
  }
  if (!nonzero) throw ParseError("octal code needs a nonzero digit", text.size());
  return OctalCode(std::move(digits));
}

std::vector<HeapPosition> heap_moves(const OctalCode& code, unsigned n) {
  std::vector<HeapPosition> out;
  for (unsigned r = 1; r <= std::min(n, code.k()); ++r) {
    if (code.digit(r) == 0) continue;
    unsigned rest = n - r;
    if (code.whole(r) && rest == 0) out.push_back({});
    if (code.end(r) && rest >= 1) out.push_back({rest});
    if (code.middle(r)) {
      for (unsigned a = 1; 2 * a <= rest; ++a) {
        out.push_back({a, rest - a});
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<unsigned> grundy_sequence(const OctalCode& code, unsigned N) {
  std::vector<unsigned> g(N + 1, 0);
  std::vector<char> seen;
  for (unsigned n = 0; n <= N; ++n) {
    seen.assign(2 * n + 4, 0);
    auto mark = [&](unsigned v) {
      if (v >= seen.size()) seen.resize(v + 1, 0);
      seen[v] = 1;
    };
    for (unsigned r = 1; r <= std::min(n, code.k()); ++r) {
      unsigned rest = n - r;
      if (code.whole(r) && rest == 0) mark(0);
      if (code.end(r) && rest >= 1) mark(g[rest]);
      if (code.middle(r)) {
        for (unsigned a = 1; 2 * a <= rest; ++a) mark(g[a] ^ g[rest - a]);
      }
    }
    unsigned m = 0;
    while (m < seen.size() && seen[m]) ++m;
    g[n] = m;
  }
  return g;
}

std::optional<NormalPeriodCertificate> detect_normal_period(const OctalCode& code,
                                                            std::span<const unsigned> values) {
  if (values.empty()) return std::nullopt;
  const unsigned N = unsigned(values.size() - 1);
  const unsigned k = code.k();
  // Window [n0, 2n0+p+k) compares up to index 2n0+2p+k-1, which must be <= N.
  std::vector<unsigned> bad_prefix(values.size() + 1);
  for (unsigned p = 1; 2 + 2 * p + k - 1 <= N; ++p) {
    bad_prefix[0] = 0;
    for (unsigned n = 0; n + p <= N; ++n) {
      bad_prefix[n + 1] = bad_prefix[n] + (values[n + p] != values[n] ? 1u : 0u);
    }
    for (unsigned n0 = 1; 2 * n0 + 2 * p + k - 1 <= N; ++n0) {
      unsigned end = 2 * n0 + p + k;
      if (bad_prefix[end] - bad_prefix[n0] == 0) {
        NormalPeriodCertificate c;
        c.code = code.text();
        c.n0 = n0;
        c.p = p;
        c.k = k;
        c.N = N;
        c.window_begin = n0;
        c.window_end = end;
        return c;
      }
    }
  }
  return std::nullopt;
}

std::optional<NormalPeriodCertificate> detect_normal_period(const OctalCode& code, unsigned N) {
  auto seq = grundy_sequence(code, N);
  return detect_normal_period(code, seq);
}

Outcome misere_nim_outcome(std::span<const unsigned> heaps) {
  unsigned x = 0;
  bool all_small = true;
  for (unsigned h : heaps) {
    x ^= h;
    all_small &= h <= 1;
  }
  if (all_small) return x == 1 ? Outcome::P : Outcome::N;
  return x == 0 ? Outcome::P : Outcome::N;
}

Outcome normal_nim_outcome(std::span<const unsigned> heaps) {
  unsigned x = 0;
  for (unsigned h : heaps) x ^= h;
  return x == 0 ? Outcome::P : Outcome::N;
}

GameId octal_heap_game(const OctalCode& code, unsigned n, Arena& arena) {
  std::vector<GameId> heaps;
  heaps.reserve(n + 1);
  for (unsigned m = 0; m <= n; ++m) {
    std::vector<GameId> opts;
    for (const auto& pos : heap_moves(code, m)) {
      GameId g = arena.zero();
      for (unsigned h : pos) g = arena.sum(g, heaps[h]);
      opts.push_back(g);
    }
    heaps.push_back(arena.intern(std::move(opts)));
  }
  return heaps[n];
}

}  // namespace misere
