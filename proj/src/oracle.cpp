#include <cstring>
#include <fstream>

#include "misere/error.hpp"
#include "misere/quotient.hpp"

namespace misere {

namespace {

std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h = 0xcbf29ce484222325ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr char kMagic[4] = {'M', 'S', 'Q', 'M'};
constexpr std::uint32_t kSnapshotVersion = 1;

}  // namespace

// Open-addressing table from fixed-width byte keys to one outcome bit.
// Keys live contiguously so a snapshot is a straight dump.
class SumOracle::Memo {
 public:
  explicit Memo(std::size_t width) : width_(width == 0 ? 1 : width), slots_(1024, 0) {}

  std::size_t size() const { return values_.size(); }
  std::size_t width() const { return width_; }
  const std::vector<std::uint8_t>& keys() const { return keys_; }
  const std::vector<std::uint8_t>& values() const { return values_; }

  int find(const std::uint8_t* key) const {
    std::size_t mask = slots_.size() - 1;
    for (std::size_t i = hash(key) & mask;; i = (i + 1) & mask) {
      std::uint32_t s = slots_[i];
      if (s == 0) return -1;
      if (std::memcmp(&keys_[std::size_t(s - 1) * width_], key, width_) == 0) return values_[s - 1];
    }
  }

  void insert(const std::uint8_t* key, bool value) {
    if (2 * (values_.size() + 1) > slots_.size()) grow();
    keys_.insert(keys_.end(), key, key + width_);
    values_.push_back(value ? 1 : 0);
    place(std::uint32_t(values_.size()));
  }

 private:
  std::size_t hash(const std::uint8_t* key) const {
    std::uint64_t h = fnv1a(key, width_);
    h ^= h >> 29;
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 32;
    return std::size_t(h);
  }

  void place(std::uint32_t s) {
    std::size_t mask = slots_.size() - 1;
    std::size_t i = hash(&keys_[std::size_t(s - 1) * width_]) & mask;
    while (slots_[i] != 0) i = (i + 1) & mask;
    slots_[i] = s;
  }

  void grow() {
    slots_.assign(slots_.size() * 2, 0);
    for (std::uint32_t s = 1; s <= values_.size(); ++s) place(s);
  }

  std::size_t width_;
  std::vector<std::uint8_t> keys_;
  std::vector<std::uint8_t> values_;
  std::vector<std::uint32_t> slots_;
};

SumOracle::SumOracle(const ClosedContext& ctx, std::size_t memo_limit)
    : ctx_(&ctx), memo_limit_(memo_limit), component_of_(ctx.size(), -1) {
  for (std::size_t e = 0; e < ctx.size(); ++e) {
    if (ctx.is_zero(e)) continue;
    component_of_[e] = int(components_.size());
    components_.push_back(e);
  }
  for (std::size_t e : components_) {
    std::vector<std::vector<std::pair<std::uint32_t, std::uint8_t>>> opts;
    for (const auto& option : ctx.element(e).options) {
      std::vector<std::pair<std::uint32_t, std::uint8_t>> delta;
      for (std::size_t part : option) {
        if (part >= e) throw InvalidArgument("context is not listed in construction order");
        int c = component_of_[part];
        if (c < 0) continue;
        if (!delta.empty() && delta.back().first == std::uint32_t(c)) {
          ++delta.back().second;
        } else {
          delta.push_back({std::uint32_t(c), 1});
        }
      }
      opts.push_back(std::move(delta));
    }
    moves_.push_back(std::move(opts));
  }
  memo_ = std::make_unique<Memo>(components_.size());
  std::string desc = ctx.describe();
  fingerprint_ = std::to_string(fnv1a(desc.data(), desc.size())) + "-" + std::to_string(components_.size());
}

SumOracle::~SumOracle() = default;
SumOracle::SumOracle(SumOracle&&) noexcept = default;
SumOracle& SumOracle::operator=(SumOracle&&) noexcept = default;

std::size_t SumOracle::memo_size() const { return memo_->size(); }

void SumOracle::set_known_prefix(std::size_t components, BipartiteMonoid m, std::vector<Element> values) {
  if (components > components_.size() || values.size() != components) {
    throw InvalidArgument("known prefix does not match the oracle");
  }
  known_.emplace(Known{components, std::move(m), std::move(values)});
}

bool SumOracle::is_p_components(std::vector<std::uint8_t>& x) {
  const std::size_t C = components_.size();
  if (x.size() != C) throw InvalidArgument("position has wrong number of components");
  const std::size_t K = known_ ? known_->components : 0;
  std::size_t total = 0;
  std::size_t high = 0;  // exponent mass outside the known prefix
  for (std::size_t c = 0; c < C; ++c) {
    total += x[c];
    if (c >= K) high += x[c];
  }

  // -1 when unknown, else the outcome bit.
  auto lookup = [&]() -> int {
    if (total == 0) return 0;
    if (known_ && high == 0) {
      const auto& m = known_->monoid;
      Element v = m.identity();
      for (std::size_t c = 0; c < K; ++c) {
        if (x[c]) v = m.mul(v, m.power(known_->values[c], x[c]));
      }
      return m.in_p(v) ? 1 : 0;
    }
    return memo_->find(x.data());
  };
  if (int v = lookup(); v >= 0) return v == 1;

  struct Frame {
    std::uint32_t comp = 0;
    std::uint32_t opt = 0;
    std::uint32_t via_comp = 0;
    std::uint32_t via_opt = 0;
    bool has_via = false;
    bool found_p = false;
  };

  auto shift = [&](std::uint32_t c, int delta) {
    x[c] = std::uint8_t(int(x[c]) + delta);
    total = std::size_t(std::ptrdiff_t(total) + delta);
    if (c >= K) high = std::size_t(std::ptrdiff_t(high) + delta);
  };
  auto apply = [&](std::uint32_t c, std::uint32_t o) {
    shift(c, -1);
    for (auto [d, k] : moves_[c][o]) {
      if (unsigned(x[d]) + k > 255) {
        // Undo the partial move before reporting.
        for (auto [d2, k2] : moves_[c][o]) {
          if (d2 == d) break;
          shift(d2, -int(k2));
        }
        shift(c, 1);
        throw ResourceError("position exponent exceeds 255");
      }
      shift(d, k);
    }
  };
  auto undo = [&](std::uint32_t c, std::uint32_t o) {
    for (auto [d, k] : moves_[c][o]) shift(d, -int(k));
    shift(c, 1);
  };

  std::vector<Frame> stack;
  stack.push_back({});
  try {
    while (!stack.empty()) {
      Frame& f = stack.back();
      bool descended = false;
      while (!f.found_p && f.comp < C) {
        if (x[f.comp] == 0 || f.opt >= moves_[f.comp].size()) {
          ++f.comp;
          f.opt = 0;
          continue;
        }
        std::uint32_t c = f.comp;
        std::uint32_t o = f.opt++;
        apply(c, o);
        int v = lookup();
        if (v < 0) {
          Frame child;
          child.via_comp = c;
          child.via_opt = o;
          child.has_via = true;
          stack.push_back(child);
          descended = true;
          break;
        }
        undo(c, o);
        if (v == 1) f.found_p = true;
      }
      if (descended) continue;

      bool result = !f.found_p;
      if (memo_->size() >= memo_limit_) {
        throw ResourceError("outcome memo limit of " + std::to_string(memo_limit_) + " positions reached");
      }
      memo_->insert(x.data(), result);
      Frame done = f;
      stack.pop_back();
      if (done.has_via) {
        undo(done.via_comp, done.via_opt);
        if (result) stack.back().found_p = true;
      }
    }
  } catch (...) {
    // Restore the caller's position before unwinding.
    for (std::size_t i = stack.size(); i-- > 0;) {
      if (stack[i].has_via) undo(stack[i].via_comp, stack[i].via_opt);
    }
    throw;
  }
  return lookup() == 1;
}

Outcome SumOracle::outcome(const Position& pos) {
  if (pos.size() > ctx_->size()) throw InvalidArgument("position longer than context");
  std::vector<std::uint8_t> x(components_.size(), 0);
  for (std::size_t e = 0; e < pos.size(); ++e) {
    if (pos[e] == 0 || component_of_[e] < 0) continue;
    if (pos[e] > 255) throw ResourceError("position exponent exceeds 255");
    x[std::size_t(component_of_[e])] = std::uint8_t(pos[e]);
  }
  return is_p_components(x) ? Outcome::P : Outcome::N;
}

void SumOracle::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write memo snapshot " + path);
  out.write(kMagic, 4);
  std::uint32_t version = kSnapshotVersion;
  out.write(reinterpret_cast<const char*>(&version), sizeof version);
  std::uint32_t flen = std::uint32_t(fingerprint_.size());
  out.write(reinterpret_cast<const char*>(&flen), sizeof flen);
  out.write(fingerprint_.data(), flen);
  std::uint32_t width = std::uint32_t(memo_->width());
  std::uint64_t count = memo_->size();
  out.write(reinterpret_cast<const char*>(&width), sizeof width);
  out.write(reinterpret_cast<const char*>(&count), sizeof count);
  const auto& keys = memo_->keys();
  const auto& values = memo_->values();
  for (std::size_t i = 0; i < count; ++i) {
    out.write(reinterpret_cast<const char*>(&keys[i * width]), width);
    out.put(char(values[i]));
  }
}

bool SumOracle::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  char magic[4];
  std::uint32_t version = 0, flen = 0, width = 0;
  std::uint64_t count = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&version), sizeof version);
  if (!in || std::memcmp(magic, kMagic, 4) != 0 || version != kSnapshotVersion) return false;
  in.read(reinterpret_cast<char*>(&flen), sizeof flen);
  if (!in || flen > 4096) return false;
  std::string fp(flen, '\0');
  in.read(fp.data(), flen);
  in.read(reinterpret_cast<char*>(&width), sizeof width);
  in.read(reinterpret_cast<char*>(&count), sizeof count);
  if (!in || fp != fingerprint_ || width != memo_->width()) return false;
  std::vector<std::uint8_t> key(width);
  for (std::uint64_t i = 0; i < count && memo_->size() < memo_limit_; ++i) {
    in.read(reinterpret_cast<char*>(key.data()), width);
    int value = in.get();
    if (!in || value < 0) return false;
    if (memo_->find(key.data()) < 0) memo_->insert(key.data(), value == 1);
  }
  return true;
}

Outcome sum_outcome(const ClosedContext& ctx, const Position& pos) {
  SumOracle oracle(ctx);
  return oracle.outcome(pos);
}

}  // namespace misere
