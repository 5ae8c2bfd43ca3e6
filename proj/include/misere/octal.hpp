#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "misere/game.hpp"

namespace misere {

// A finite octal code 0.d1d2...dk. digit(r) governs removal of r boxes:
// bit 0 whole strip, bit 1 from an end, bit 2 from the middle.
class OctalCode {
 public:
  explicit OctalCode(std::vector<std::uint8_t> digits);

  std::span<const std::uint8_t> digits() const { return digits_; }
  unsigned digit(unsigned r) const { return r >= 1 && r <= digits_.size() ? digits_[r - 1] : 0; }
  // Largest removal size with a nonzero digit.
  unsigned k() const { return k_; }
  bool whole(unsigned r) const { return digit(r) & 1u; }
  bool end(unsigned r) const { return digit(r) & 2u; }
  bool middle(unsigned r) const { return digit(r) & 4u; }

  std::string text() const;

 private:
  std::vector<std::uint8_t> digits_;
  unsigned k_ = 0;
};

OctalCode parse_octal(std::string_view text);

// Multiset of strip lengths, ascending, every entry >= 1. Empty = terminal.
using HeapPosition = std::vector<unsigned>;

// Distinct positions reachable in one move from a single strip of length n.
std::vector<HeapPosition> heap_moves(const OctalCode& code, unsigned n);

// Grundy values of H_0..H_N.
std::vector<unsigned> grundy_sequence(const OctalCode& code, unsigned N);

struct NormalPeriodCertificate {
  std::string code;
  unsigned n0 = 0;
  unsigned p = 0;
  unsigned k = 0;
  unsigned N = 0;
  // Half-open range of n with G(H_{n+p}) = G(H_n) checked: [n0, 2n0+p+k).
  unsigned window_begin = 0;
  unsigned window_end = 0;
};

// Least period p, then least preperiod n0 >= 1, whose periodicity-theorem
// window fits inside `values` (values[n] = G(H_n)) and matches.
std::optional<NormalPeriodCertificate> detect_normal_period(const OctalCode& code,
                                                            std::span<const unsigned> values);
std::optional<NormalPeriodCertificate> detect_normal_period(const OctalCode& code, unsigned N);

// Closed-form misere Nim rule.
Outcome misere_nim_outcome(std::span<const unsigned> heaps);
Outcome normal_nim_outcome(std::span<const unsigned> heaps);

// H_n as an explicit game tree in `arena` (sums of strips become game sums).
GameId octal_heap_game(const OctalCode& code, unsigned n, Arena& arena);

}  // namespace misere
