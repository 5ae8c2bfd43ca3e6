#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace misere {

using Element = std::uint32_t;

// Finite commutative monoid given by its Cayley table, together with a
// distinguished subset P. Construction validates the monoid axioms
// (associativity exhaustively up to kExhaustiveCheckLimit elements).
class BipartiteMonoid {
 public:
  static constexpr std::size_t kExhaustiveCheckLimit = 256;

  BipartiteMonoid(std::size_t size, std::vector<Element> table, Element identity,
                  std::vector<Element> p, std::vector<std::string> labels = {});

  std::size_t size() const { return n_; }
  Element mul(Element x, Element y) const { return table_[std::size_t(x) * n_ + y]; }
  Element identity() const { return identity_; }
  bool in_p(Element x) const { return p_mask_[x] != 0; }
  std::vector<Element> p_elements() const;
  std::span<const Element> table() const { return table_; }
  const std::vector<std::string>& labels() const { return labels_; }
  // Provided label, or the decimal index.
  std::string label(Element x) const;

  Element power(Element x, unsigned e) const;
  // Smallest (index, period) with x^(index+period) = x^index.
  std::pair<unsigned, unsigned> index_period(Element x) const;

  // Same structure with elements renumbered: element x becomes order[x]'s
  // position, i.e. new element i is old element order[i].
  BipartiteMonoid permuted(std::span<const Element> order, std::vector<std::string> labels = {}) const;

  bool operator==(const BipartiteMonoid& o) const {
    return n_ == o.n_ && table_ == o.table_ && identity_ == o.identity_ && p_mask_ == o.p_mask_;
  }

 private:
  std::size_t n_;
  std::vector<Element> table_;
  Element identity_;
  std::vector<char> p_mask_;
  std::vector<std::string> labels_;
};

bool indistinguishable(const BipartiteMonoid& m, Element x, Element y);

struct Reduction {
  BipartiteMonoid monoid;
  std::vector<Element> projection;  // old element -> class
};

// Quotient by indistinguishability. Classes are numbered by least member.
Reduction reduce(const BipartiteMonoid& m);
bool is_reduced(const BipartiteMonoid& m);

struct StructureReport {
  std::vector<Element> idempotents;
  Element z = 0;  // product of all idempotents
  std::vector<Element> kernel;
  std::vector<Element> kernel_table;         // |K|x|K| over positions in `kernel`
  std::vector<unsigned> kernel_type;         // elementary divisors, ascending
  std::vector<std::vector<Element>> md_classes;
  // Keyed by idempotent: {y : y^n = e for some n > 0}.
  std::map<Element, std::vector<Element>> archimedean_components;
  // Indexed by position in `idempotents`.
  std::vector<std::vector<char>> leq;
  std::vector<std::vector<std::size_t>> meet;
  std::vector<std::vector<std::size_t>> join;
  bool is_normal = false;
  bool is_regular = false;
  bool kernel_is_group = false;
  bool zx_is_homomorphism_onto_kernel = false;
  // Statistic only: how many maximal subgroups meet P.
  std::size_t maximal_subgroups = 0;
  std::size_t maximal_subgroups_meeting_p = 0;
};

StructureReport structure_report(const BipartiteMonoid& m);

// Bijection f (as a vector indexed by elements of a) with f(xy) = f(x)f(y),
// f(1) = 1 and x in P iff f(x) in P.
std::optional<std::vector<Element>> iso(const BipartiteMonoid& a, const BipartiteMonoid& b,
                                        std::size_t max_size = 512);

// Misere quotient of Nim heaps *0..*2^(n-1): |T_0|=1, |T_1|=2, |T_n|=2^n+2.
BipartiteMonoid make_tn(unsigned n, unsigned max_n = 8);
BipartiteMonoid make_r8();

// n with m isomorphic to T_n; empty when m is wild.
std::optional<unsigned> classify_tame(const BipartiteMonoid& m);

// --- presentations ---------------------------------------------------------

// Exponent vector over the generators of a presentation.
using Word = std::vector<unsigned>;

struct Relation {
  Word lhs;
  Word rhs;
};

struct Presentation {
  std::vector<std::string> generators;  // single letters
  std::vector<Relation> relations;
};

// "a,b | a2=1, b3=b". Words are letters with optional decimal exponents;
// "1" is the empty word.
Presentation parse_presentation(std::string_view text);
Word parse_word(std::string_view text, const std::vector<std::string>& generators);
std::string format_word(const Word& w, const std::vector<std::string>& generators);

Element evaluate(const BipartiteMonoid& m, std::span<const Element> images, const Word& w);

// Every relation holds under `images` and the images generate m.
bool check_presentation(const BipartiteMonoid& m, std::span<const Element> images,
                        const Presentation& pres);

// Submonoid generated by `gens` as a membership mask.
std::vector<char> generated(const BipartiteMonoid& m, std::span<const Element> gens);

}  // namespace misere
