#include <algorithm>

#include "misere/error.hpp"
#include "misere/quotient.hpp"

namespace misere {

namespace {

std::vector<Element> option_values(const ClosedContext& ctx, const BipartiteMonoid& m,
                                   const std::vector<Element>& phi, std::size_t e) {
  std::vector<Element> out;
  for (const auto& option : ctx.element(e).options) {
    Element v = m.identity();
    for (std::size_t part : option) v = m.mul(v, phi[part]);
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Breadth-first over sums of heaps below n, tracking each sum's value in
// both quotients. The old value is a function of the new one; a split is
// an old value reached from two new values.
std::optional<PartialSplit> find_split(const ClosedContext& ctx, const PartialQuotient& before,
                                       const PartialQuotient& after, unsigned n) {
  const auto& mo = before.monoid;
  const auto& mn = after.monoid;
  std::vector<int> old_of(mn.size(), -1);
  std::vector<Position> pos_of(mn.size());
  std::vector<int> new_of_old(mo.size(), -1);
  std::vector<Element> frontier{mn.identity()};
  old_of[mn.identity()] = int(mo.identity());
  new_of_old[mo.identity()] = int(mn.identity());
  pos_of[mn.identity()] = Position(n, 0);
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (Element v : frontier) {
      for (unsigned h = 1; h < n; ++h) {
        if (ctx.is_zero(h)) continue;
        Element nv = mn.mul(v, after.phi[h]);
        Element ov = mo.mul(Element(old_of[v]), before.phi[h]);
        if (old_of[nv] >= 0) continue;
        Position p = pos_of[v];
        ++p[h];
        if (new_of_old[ov] >= 0 && Element(new_of_old[ov]) != nv) {
          return PartialSplit{pos_of[Element(new_of_old[ov])], std::move(p), before.last_heap, n};
        }
        old_of[nv] = int(ov);
        new_of_old[ov] = int(nv);
        pos_of[nv] = std::move(p);
        next.push_back(nv);
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

}  // namespace

const PartialQuotient& PretendingData::quotient_at(unsigned n) const {
  for (const auto& q : quotients) {
    if (q.first_heap <= n && n <= q.last_heap) return q;
  }
  throw InvalidArgument("no partial quotient covers heap " + std::to_string(n));
}

// Heap by heap: a new heap whose option values match an earlier heap's
// takes that heap's value; otherwise each existing element is tried as its
// value; only when both fail is the quotient recomputed.
PretendingData pretending_function(const OctalCode& code, unsigned N, const QuotientCaps& caps) {
  PretendingData data;
  data.code = code.text();
  data.k = code.k();
  data.requested = N;

  const ClosedContext ctx = ClosedContext::from_octal(code, N);

  PartialQuotient current{0, 0, BipartiteMonoid(1, {0}, 0, {}, {"1"}), {0}, {}};
  data.entries.push_back({0, 0, 0, "", PretendingEntry::Source::zero});
  std::vector<std::vector<Element>> seen_options{{}};  // per heap, empty for zero heaps

  for (unsigned n = 1; n <= N; ++n) {
    PretendingEntry entry{n, 0, 0, "", PretendingEntry::Source::zero};
    const auto& m = current.monoid;
    std::vector<Element> opts;
    bool placed = false;
    if (ctx.is_zero(n)) {
      current.phi.push_back(m.identity());
      placed = true;
    } else {
      opts = option_values(ctx, m, current.phi, n);
      for (unsigned h = 1; h < n && !placed; ++h) {
        if (!ctx.is_zero(h) && seen_options[h] == opts) {
          current.phi.push_back(current.phi[h]);
          entry.source = PretendingEntry::Source::reused;
          placed = true;
        }
      }
    }
    if (!placed) {
      ClosedContext prefix = ctx.prefix(n + 1);
      auto phi = current.phi;
      phi.push_back(0);
      for (Element q = 0; q < m.size() && !placed; ++q) {
        phi.back() = q;
        if (verify_quotient(prefix, m, phi).ok) {
          current.phi = phi;
          entry.source = PretendingEntry::Source::extended;
          placed = true;
        }
      }
      if (!placed) {
        // Positions without the new heap are answered by the current
        // quotient, so each recomputation starts with an empty memo.
        QuotientResult r;
        try {
          SumOracle oracle(prefix, caps.memo_limit);
          std::vector<Element> known;
          for (std::size_t c = 0; c < oracle.components() && oracle.component_element(c) < n; ++c) {
            known.push_back(current.phi[oracle.component_element(c)]);
          }
          const std::size_t count = known.size();
          oracle.set_known_prefix(count, current.monoid, std::move(known));
          r = compute_quotient(oracle, caps);
        } catch (const ResourceError& e) {
          r.status = QuotientStatus::undetermined;
          r.evidence.reason = e.what();
        }
        if (r.status != QuotientStatus::verified) {
          data.truncated = true;
          data.note = "stopped at heap " + std::to_string(n) + ": " + r.evidence.reason;
          break;
        }
        PartialQuotient next{n, n, std::move(*r.monoid), std::move(r.phi), {}};
        for (auto e : r.generator_elements) next.generator_heaps.push_back(e);
        if (auto split = find_split(ctx, current, next, n)) data.splits.push_back(std::move(*split));
        data.quotients.push_back(std::move(current));
        current = std::move(next);
        for (unsigned h = 1; h < n; ++h) {
          if (!ctx.is_zero(h)) seen_options[h] = option_values(ctx, current.monoid, current.phi, h);
        }
        if (!ctx.is_zero(n)) opts = option_values(ctx, current.monoid, current.phi, n);
        entry.source = PretendingEntry::Source::grew;
      }
    }
    current.last_heap = n;
    seen_options.push_back(ctx.is_zero(n) ? std::vector<Element>{} : opts);
    entry.quotient = data.quotients.size();
    data.entries.push_back(entry);
  }
  data.quotients.push_back(std::move(current));

  const auto& last = data.quotients.back();
  for (auto& e : data.entries) {
    e.value = last.phi[e.heap];
    e.label = last.monoid.label(e.value);
  }
  return data;
}

std::optional<MisereCertificate> detect_misere_period(const PretendingData& data) {
  const unsigned reached = data.reached();
  const unsigned k = data.k;
  for (unsigned p = 1; 2 + 2 * p + k <= reached; ++p) {
    for (unsigned n0 = 1; 2 * n0 + 2 * p + k <= reached; ++n0) {
      const unsigned M = 2 * n0 + 2 * p + k;
      const auto& q = data.quotient_at(M);
      const unsigned end = 2 * n0 + p + k;
      bool ok = true;
      for (unsigned n = n0; n < end && ok; ++n) ok = q.phi[n + p] == q.phi[n];
      if (ok) return MisereCertificate{data.code, n0, p, k, M, n0, end, q.monoid.size()};
    }
  }
  return std::nullopt;
}

}  // namespace misere
