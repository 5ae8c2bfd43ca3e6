#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "misere/game.hpp"
#include "misere/monoid.hpp"
#include "misere/octal.hpp"

namespace misere {

// Exponent vector over the elements of a ClosedContext.
using Position = std::vector<unsigned>;

// A hereditarily closed set of games, listed so that every option of an
// element is a sum of earlier elements. Element 0 is the game 0.
//
// Game contexts come from explicit game trees (each option is a single
// element). Octal contexts list the heaps H_0..H_N, whose options are sums
// of smaller heaps.
class ClosedContext {
 public:
  struct Member {
    std::string name;
    // Each option is a multiset of element indices, ascending, without 0.
    std::vector<std::vector<std::size_t>> options;
    // Strictly decreases along moves: birthday for games, strip length for heaps.
    unsigned weight = 0;
  };

  static ClosedContext from_games(const Arena& arena, const std::vector<GameId>& generators,
                                  std::size_t max_elements = 4096);
  static ClosedContext from_octal(const OctalCode& code, unsigned N);

  std::size_t size() const { return elements_.size(); }
  const Member& element(std::size_t i) const { return elements_.at(i); }
  bool is_zero(std::size_t i) const { return elements_.at(i).options.empty(); }
  const std::string& name(std::size_t i) const { return elements_.at(i).name; }
  // Arena ids for game contexts, empty for octal contexts.
  const std::vector<GameId>& games() const { return games_; }
  std::optional<std::size_t> index_of(GameId g) const;
  // Octal contexts: the code; heap n is element n.
  const std::optional<OctalCode>& octal() const { return octal_; }

  // The first n elements (hereditarily closed by construction order).
  ClosedContext prefix(std::size_t n) const;

  std::string describe() const;

 private:
  std::vector<Member> elements_;
  std::vector<GameId> games_;
  std::optional<OctalCode> octal_;
};

// Memoized misere outcome of sums over a context. Positions are exponent
// vectors; the zero position is N. Evaluation is iterative, so deep
// positions do not exhaust the call stack.
class SumOracle {
 public:
  static constexpr std::size_t kDefaultMemoLimit = 10'000'000;

  explicit SumOracle(const ClosedContext& ctx, std::size_t memo_limit = kDefaultMemoLimit);
  ~SumOracle();
  SumOracle(SumOracle&&) noexcept;
  SumOracle& operator=(SumOracle&&) noexcept;

  Outcome outcome(const Position& pos);
  const ClosedContext& context() const { return *ctx_; }
  std::size_t memo_size() const;
  std::size_t memo_limit() const { return memo_limit_; }

  // Component index (nonzero element) of each element, or -1.
  const std::vector<int>& component_of() const { return component_of_; }
  std::size_t components() const { return components_.size(); }
  std::size_t component_element(std::size_t c) const { return components_[c]; }

  // Raw interface used by the quotient learner: exponents per component.
  bool is_p_components(std::vector<std::uint8_t>& exps);

  // Outcomes of positions supported on the first `components` components
  // are read off a verified quotient of that prefix instead of searched.
  void set_known_prefix(std::size_t components, BipartiteMonoid m, std::vector<Element> values);
  void clear_known_prefix() { known_.reset(); }

  // Persistent snapshot of the memo. The fingerprint ties a file to a context.
  void save(const std::string& path) const;
  // Returns false when the file is missing or belongs to another context.
  bool load(const std::string& path);
  const std::string& fingerprint() const { return fingerprint_; }

 private:
  class Memo;
  const ClosedContext* ctx_;
  std::size_t memo_limit_;
  std::vector<int> component_of_;
  std::vector<std::size_t> components_;
  // Per component, per option: (component, count) deltas.
  std::vector<std::vector<std::vector<std::pair<std::uint32_t, std::uint8_t>>>> moves_;
  std::unique_ptr<Memo> memo_;
  std::string fingerprint_;
  struct Known {
    std::size_t components;
    BipartiteMonoid monoid;
    std::vector<Element> values;
  };
  std::optional<Known> known_;
};

Outcome sum_outcome(const ClosedContext& ctx, const Position& pos);

struct QuotientCaps {
  unsigned initial_region = 4;  // starting exponent bound R
  unsigned max_region = 32;     // R doubles up to this bound
  std::size_t max_elements = 256;
  std::size_t memo_limit = SumOracle::kDefaultMemoLimit;
  bool probe_divergence = true;
};

enum class QuotientStatus { verified, undetermined };

// Multiples n*g of one element with pairwise distinct outcome behaviour.
struct DistinguishingFamily {
  std::size_t element = 0;
  std::vector<unsigned> multiples;
  struct Witness {
    unsigned first = 0;
    unsigned second = 0;
    Position test;  // outcome of first*g + test differs from second*g + test
  };
  std::vector<Witness> witnesses;
};

struct QuotientEvidence {
  std::string reason;
  unsigned region_bound = 0;
  std::size_t classes = 0;
  std::size_t tests = 0;
  std::size_t counterexamples = 0;
  std::size_t outcome_evaluations = 0;  // memo entries
  std::vector<DistinguishingFamily> families;
};

struct QuotientResult {
  QuotientStatus status = QuotientStatus::undetermined;
  std::optional<BipartiteMonoid> monoid;
  std::vector<Element> phi;  // per context element
  // Elements whose images were named a, b, c, ... in the labels.
  std::vector<std::size_t> generator_elements;
  QuotientEvidence evidence;
};

QuotientResult compute_quotient(const ClosedContext& ctx, const QuotientCaps& caps = {});
QuotientResult compute_quotient(SumOracle& oracle, const QuotientCaps& caps = {});

struct VerifyResult {
  bool ok = false;
  std::string reason;
  std::optional<Position> witness;  // violates the outcome recursion
};

// Certifies (m, phi) as the misere quotient of ctx: m reduced, phi
// surjective onto m, phi(0) = 1, and for every position X
//   phi(X) in P  <=>  X != 0 and phi(X') not in P for every option X'.
// Throws InvalidArgument when m is not reduced or phi is malformed.
VerifyResult verify_quotient(const ClosedContext& ctx, const BipartiteMonoid& m,
                             const std::vector<Element>& phi);

// Same condition checked by enumerating every position with all exponents
// <= bound (default 2|Q|+1). Exponential; meant as a reference check.
VerifyResult verify_quotient_exhaustive(const ClosedContext& ctx, const BipartiteMonoid& m,
                                        const std::vector<Element>& phi,
                                        std::optional<unsigned> bound = std::nullopt);

Element phi_of(const BipartiteMonoid& m, const std::vector<Element>& phi, const Position& pos);
Outcome position_outcome_via_quotient(const QuotientResult& result, const Position& pos);

// Each element is named by its least exponent vector over the generator
// images, by total degree and then by exponents read from the last letter
// down ("b2" before "c2", "b2c" before "acf").
// Labels read "1", "a", "ab2c", ...
struct CanonicalForm {
  BipartiteMonoid monoid;
  std::vector<Element> phi;
  std::vector<std::size_t> generator_elements;
};
CanonicalForm canonicalize(const BipartiteMonoid& m, const std::vector<Element>& phi);

// --- octal games --------------------------------------------------------

struct PretendingEntry {
  enum class Source { zero, reused, extended, grew };
  unsigned heap = 0;
  std::size_t quotient = 0;  // snapshot index in effect when the heap was added
  Element value = 0;         // in the final partial quotient
  std::string label;
  Source source = Source::zero;
};

// Partial quotient Q_n with its map on heaps 0..last_heap.
struct PartialQuotient {
  unsigned first_heap = 0;
  unsigned last_heap = 0;
  BipartiteMonoid monoid;
  std::vector<Element> phi;  // indexed by heap
  std::vector<std::size_t> generator_heaps;
};

// Two positions over heaps 1..identified_through that one partial quotient
// identifies and the next one (after adding heap separated_at) separates.
// Exponent vectors are indexed by heap.
struct PartialSplit {
  Position first;
  Position second;
  unsigned identified_through = 0;  // last heap of the earlier quotient
  unsigned separated_at = 0;
};

struct PretendingData {
  std::string code;
  unsigned k = 0;
  unsigned requested = 0;
  bool truncated = false;
  std::string note;
  std::vector<PretendingEntry> entries;  // heaps 0..reached
  std::vector<PartialQuotient> quotients;
  std::vector<PartialSplit> splits;  // at most one witness per recomputation

  unsigned reached() const { return entries.empty() ? 0 : entries.back().heap; }
  // Snapshot that was current after heap n was added.
  const PartialQuotient& quotient_at(unsigned n) const;
};

PretendingData pretending_function(const OctalCode& code, unsigned N, const QuotientCaps& caps = {});

struct MisereCertificate {
  std::string code;
  unsigned n0 = 0;
  unsigned p = 0;
  unsigned k = 0;
  unsigned M = 0;
  unsigned window_begin = 0;  // [n0, 2n0+p+k)
  unsigned window_end = 0;
  std::size_t quotient_order = 0;
};

// Least p, then least n0 >= 1, with M = 2n0+2p+k within the data and
// Phi_M(H_{n+p}) = Phi_M(H_n) on the window.
std::optional<MisereCertificate> detect_misere_period(const PretendingData& data);

}  // namespace misere
