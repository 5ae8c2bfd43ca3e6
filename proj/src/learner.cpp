#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "misere/error.hpp"
#include "misere/quotient.hpp"

namespace misere {

namespace {

using Vec = std::vector<std::uint8_t>;

struct CapHit {
  std::string reason;
};

// Counterexample-guided construction of the quotient. Classes are
// represented by positions with pairwise different outcome rows against a
// growing list of test positions; the hypothesis monoid acts on classes by
// adding one component at a time. A candidate that fails verification
// yields a position where hypothesis and oracle disagree, and a binary
// search along that position's letters produces a new test that splits a
// class.
class Learner {
 public:
  Learner(SumOracle& oracle, const ClosedContext& ctx, const QuotientCaps& caps)
      : oracle_(oracle), ctx_(ctx), caps_(caps), W_(oracle.components()),
        region_(std::max(1u, caps.initial_region)) {
    C_ = 0;
    while (C_ < W_ && oracle.component_element(C_) < ctx.size()) ++C_;
  }

  QuotientResult run() {
    QuotientResult result;
    try {
      seed();
      for (;;) {
        close();
        if (fix_commutativity()) continue;
        auto hypothesis = build();
        auto check = verify_quotient(ctx_, hypothesis.monoid, hypothesis.phi);
        if (check.ok) {
          post_check(hypothesis);
          auto canon = canonicalize(hypothesis.monoid, hypothesis.phi);
          result.status = QuotientStatus::verified;
          result.monoid = std::move(canon.monoid);
          result.phi = std::move(canon.phi);
          result.generator_elements = std::move(canon.generator_elements);
          fill_evidence(result.evidence, "verified");
          return result;
        }
        refine_from_witness(hypothesis, *check.witness);
      }
    } catch (const CapHit& hit) {
      fill_evidence(result.evidence, hit.reason);
    } catch (const ResourceError& e) {
      fill_evidence(result.evidence, e.what());
    }
    result.status = QuotientStatus::undetermined;
    if (caps_.probe_divergence && C_ <= 8) probe(result.evidence);
    result.evidence.outcome_evaluations = oracle_.memo_size();
    return result;
  }

 private:
  struct Hypothesis {
    BipartiteMonoid monoid;
    std::vector<Element> phi;         // per context element
    std::vector<Element> projection;  // class -> reduced element
  };

  bool O(const Vec& x) {
    Vec tmp = x;
    return oracle_.is_p_components(tmp);
  }

  Vec add(const Vec& a, const Vec& b) const {
    Vec r(W_);
    for (std::size_t i = 0; i < W_; ++i) {
      unsigned v = unsigned(a[i]) + b[i];
      if (v > 255) throw ResourceError("position exponent exceeds 255");
      r[i] = std::uint8_t(v);
    }
    return r;
  }

  Vec unit(std::size_t i) const {
    Vec r(W_, 0);
    r[i] = 1;
    return r;
  }

  void note_exponents(const Vec& x) {
    unsigned top = 0;
    for (auto v : x) top = std::max<unsigned>(top, v);
    while (top > region_) {
      if (region_ >= caps_.max_region) {
        throw CapHit{"exponent bound R=" + std::to_string(caps_.max_region) + " exceeded"};
      }
      region_ = std::min(region_ * 2, caps_.max_region);
    }
  }

  std::string row_of(const Vec& x) {
    std::string row(tests_.size(), '0');
    for (std::size_t t = 0; t < tests_.size(); ++t) row[t] = O(add(x, tests_[t])) ? '1' : '0';
    return row;
  }

  void seed() {
    tests_.push_back(Vec(W_, 0));
    for (std::size_t i = 0; i < C_; ++i) tests_.push_back(unit(i));
    if (C_ <= 8) {
      for (std::size_t i = 0; i < C_; ++i) {
        for (std::size_t j = i; j < C_; ++j) tests_.push_back(add(unit(i), unit(j)));
      }
    }
    for (const auto& t : tests_) note_exponents(t);
    add_class(Vec(W_, 0), {});
  }

  void add_class(Vec rep, std::vector<std::uint32_t> access) {
    if (reps_.size() >= caps_.max_elements) {
      throw CapHit{"element cap of " + std::to_string(caps_.max_elements) + " classes exceeded"};
    }
    note_exponents(rep);
    std::string row = row_of(rep);
    index_.emplace(row, reps_.size());
    rows_.push_back(std::move(row));
    reps_.push_back(std::move(rep));
    access_.push_back(std::move(access));
    ext_rows_.emplace_back();
    trans_.emplace_back(C_, -1);
  }

  // Every one-letter extension of every class matches some class row.
  void close() {
    for (std::size_t c = 0; c < reps_.size(); ++c) {
      if (ext_rows_[c].empty()) {
        for (std::size_t i = 0; i < C_; ++i) ext_rows_[c].push_back(row_of(add(reps_[c], unit(i))));
      }
      for (std::size_t i = 0; i < C_; ++i) {
        auto it = index_.find(ext_rows_[c][i]);
        if (it != index_.end()) {
          trans_[c][i] = int(it->second);
          continue;
        }
        auto access = access_[c];
        access.push_back(std::uint32_t(i));
        add_class(add(reps_[c], unit(i)), std::move(access));
        trans_[c][i] = int(reps_.size() - 1);
      }
    }
  }

  void add_test(const Vec& t) {
    if (std::find(tests_.begin(), tests_.end(), t) != tests_.end()) {
      throw std::logic_error("quotient learner produced a duplicate test");
    }
    note_exponents(t);
    tests_.push_back(t);
    index_.clear();
    for (std::size_t c = 0; c < reps_.size(); ++c) {
      rows_[c].push_back(O(add(reps_[c], t)) ? '1' : '0');
      index_.emplace(rows_[c], c);
      for (std::size_t i = 0; i < ext_rows_[c].size(); ++i) {
        ext_rows_[c][i].push_back(O(add(add(reps_[c], unit(i)), t)) ? '1' : '0');
      }
    }
    if (index_.size() != reps_.size()) throw std::logic_error("class rows collided");
    ++counterexamples_;
  }

  std::size_t run_word(std::size_t state, const std::vector<std::uint32_t>& word, std::size_t from,
                       std::size_t to) const {
    for (std::size_t k = from; k < to; ++k) state = std::size_t(trans_[state][word[k]]);
    return state;
  }

  Vec counts(const std::vector<std::uint32_t>& word, std::size_t from) const {
    Vec v(W_, 0);
    for (std::size_t k = from; k < word.size(); ++k) ++v[word[k]];
    return v;
  }

  // alpha(k) = outcome of rep(state after k letters) + remaining letters.
  bool alpha(const std::vector<std::uint32_t>& word, std::size_t k) {
    std::size_t s = run_word(0, word, 0, k);
    return O(add(reps_[s], counts(word, k)));
  }

  void split(const std::vector<std::uint32_t>& word, std::size_t lo, std::size_t hi) {
    bool a_lo = alpha(word, lo);
    if (a_lo == alpha(word, hi)) throw std::logic_error("counterexample does not separate its ends");
    while (hi - lo > 1) {
      std::size_t mid = lo + (hi - lo) / 2;
      if (alpha(word, mid) != a_lo) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    add_test(counts(word, hi));
  }

  static std::vector<std::uint32_t> letters_of(const Vec& x) {
    std::vector<std::uint32_t> w;
    for (std::size_t i = 0; i < x.size(); ++i) w.insert(w.end(), x[i], std::uint32_t(i));
    return w;
  }

  bool fix_commutativity() {
    for (std::size_t c = 0; c < reps_.size(); ++c) {
      for (std::size_t i = 0; i < C_; ++i) {
        for (std::size_t j = i + 1; j < C_; ++j) {
          std::size_t s1 = std::size_t(trans_[std::size_t(trans_[c][i])][j]);
          std::size_t s2 = std::size_t(trans_[std::size_t(trans_[c][j])][i]);
          if (s1 == s2) continue;
          std::size_t t = 0;
          while (rows_[s1][t] == rows_[s2][t]) ++t;
          auto word1 = access_[c];
          word1.push_back(std::uint32_t(i));
          word1.push_back(std::uint32_t(j));
          auto word2 = access_[c];
          word2.push_back(std::uint32_t(j));
          word2.push_back(std::uint32_t(i));
          auto tail = letters_of(tests_[t]);
          std::size_t hi = word1.size();
          word1.insert(word1.end(), tail.begin(), tail.end());
          word2.insert(word2.end(), tail.begin(), tail.end());
          bool truth = alpha(word1, 0);
          split((rows_[s1][t] == '1') != truth ? word1 : word2, 0, hi);
          return true;
        }
      }
    }
    return false;
  }

  Hypothesis build() {
    const std::size_t K = reps_.size();
    std::vector<Element> table(K * K);
    std::vector<Element> p;
    for (std::size_t s = 0; s < K; ++s) {
      for (std::size_t u = 0; u < K; ++u) {
        table[s * K + u] = Element(run_word(s, access_[u], 0, access_[u].size()));
      }
      if (rows_[s][0] == '1') p.push_back(Element(s));
    }
    BipartiteMonoid raw(K, std::move(table), 0, std::move(p));
    auto red = reduce(raw);
    std::vector<Element> phi(ctx_.size(), red.monoid.identity());
    for (std::size_t i = 0; i < C_; ++i) {
      phi[oracle_.component_element(i)] = red.projection[std::size_t(trans_[0][i])];
    }
    return Hypothesis{std::move(red.monoid), std::move(phi), std::move(red.projection)};
  }

  Vec to_components(const Position& pos) const {
    Vec x(W_, 0);
    for (std::size_t e = 0; e < pos.size(); ++e) {
      int c = oracle_.component_of()[e];
      if (c >= 0 && pos[e]) {
        if (pos[e] > 255) throw ResourceError("position exponent exceeds 255");
        x[std::size_t(c)] = std::uint8_t(pos[e]);
      }
    }
    return x;
  }

  bool predicted(const Hypothesis& h, const Vec& x) const {
    Element v = h.monoid.identity();
    for (std::size_t i = 0; i < C_; ++i) {
      if (x[i]) v = h.monoid.mul(v, h.monoid.power(h.phi[oracle_.component_element(i)], x[i]));
    }
    return h.monoid.in_p(v);
  }

  // The witness or one of its options is misclassified by the hypothesis.
  void refine_from_witness(const Hypothesis& h, const Position& witness) {
    Vec x = to_components(witness);
    std::vector<Vec> candidates{x};
    for (std::size_t i = 0; i < C_; ++i) {
      if (x[i] == 0) continue;
      const auto& options = ctx_.element(oracle_.component_element(i)).options;
      for (const auto& option : options) {
        Vec y = x;
        --y[i];
        for (std::size_t part : option) {
          int c = oracle_.component_of()[part];
          if (c < 0) continue;
          if (y[std::size_t(c)] == 255) throw ResourceError("position exponent exceeds 255");
          ++y[std::size_t(c)];
        }
        candidates.push_back(std::move(y));
      }
    }
    for (const auto& y : candidates) {
      if (predicted(h, y) == O(y)) continue;
      auto word = letters_of(y);
      split(word, 0, word.size());
      return;
    }
    throw std::logic_error("verification witness agrees with the oracle everywhere");
  }

  void post_check(const Hypothesis& h) {
    for (std::size_t c = 0; c < reps_.size(); ++c) {
      for (std::size_t t = 0; t < tests_.size(); ++t) {
        if (predicted(h, add(reps_[c], tests_[t])) != (rows_[c][t] == '1')) {
          throw std::logic_error("verified quotient contradicts an observed outcome");
        }
      }
    }
  }

  void fill_evidence(QuotientEvidence& ev, const std::string& reason) const {
    ev.reason = reason;
    ev.region_bound = region_;
    ev.classes = reps_.size();
    ev.tests = tests_.size();
    ev.counterexamples = counterexamples_;
    ev.outcome_evaluations = oracle_.memo_size();
  }

  // Multiples n*g (n <= 16) compared against tests m*h (m <= 32). Each
  // distinct outcome signature contributes one member to the family.
  void probe(QuotientEvidence& ev) {
    constexpr unsigned kMultiples = 16;
    constexpr unsigned kTestScale = 32;
    try {
      for (std::size_t g = 0; g < C_; ++g) {
        std::map<std::string, unsigned> first_with;
        std::vector<std::pair<unsigned, std::string>> members;
        for (unsigned n = 1; n <= kMultiples; ++n) {
          std::string sig;
          for (std::size_t h = 0; h < C_; ++h) {
            for (unsigned m = 0; m <= kTestScale; ++m) {
              Vec x(W_, 0);
              x[g] = std::uint8_t(n);
              x[h] = std::uint8_t(x[h] + m);
              sig.push_back(O(x) ? '1' : '0');
            }
          }
          if (first_with.emplace(sig, n).second) members.emplace_back(n, std::move(sig));
        }
        if (members.size() < 2) continue;
        DistinguishingFamily fam;
        fam.element = oracle_.component_element(g);
        for (const auto& [n, sig] : members) fam.multiples.push_back(n);
        for (std::size_t a = 0; a < members.size(); ++a) {
          for (std::size_t b = a + 1; b < members.size(); ++b) {
            std::size_t k = 0;
            while (members[a].second[k] == members[b].second[k]) ++k;
            Position test(ctx_.size(), 0);
            test[oracle_.component_element(k / (kTestScale + 1))] = unsigned(k % (kTestScale + 1));
            fam.witnesses.push_back({members[a].first, members[b].first, std::move(test)});
          }
        }
        ev.families.push_back(std::move(fam));
      }
    } catch (const ResourceError&) {
      // Keep whatever families were completed.
    }
    std::stable_sort(ev.families.begin(), ev.families.end(),
                     [](const auto& x, const auto& y) { return x.multiples.size() > y.multiples.size(); });
  }

  SumOracle& oracle_;
  const ClosedContext& ctx_;
  QuotientCaps caps_;
  std::size_t W_;  // oracle width
  std::size_t C_ = 0;  // components inside ctx_
  unsigned region_;
  std::size_t counterexamples_ = 0;

  std::vector<Vec> reps_;
  std::vector<std::vector<std::uint32_t>> access_;
  std::vector<std::string> rows_;
  std::vector<std::vector<std::string>> ext_rows_;
  std::vector<std::vector<int>> trans_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Vec> tests_;
};

}  // namespace

QuotientResult compute_quotient(SumOracle& oracle, const QuotientCaps& caps) {
  return Learner(oracle, oracle.context(), caps).run();
}

QuotientResult compute_quotient(const ClosedContext& ctx, const QuotientCaps& caps) {
  SumOracle oracle(ctx, caps.memo_limit);
  return compute_quotient(oracle, caps);
}

}  // namespace misere
