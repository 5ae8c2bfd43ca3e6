#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "misere/error.hpp"
#include "misere/json_io.hpp"

using namespace misere;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kUndetermined = 2;

// Optional directory for persistent outcome memos.
constexpr const char* kCacheEnv = "MISERE_CACHE_DIR";

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string join_labels(const BipartiteMonoid& m, const std::vector<Element>& xs) {
  std::string out;
  for (Element x : xs) out += (out.empty() ? "" : ", ") + m.label(x);
  return "{" + out + "}";
}

void print_monoid_text(std::ostream& out, const BipartiteMonoid& m) {
  out << "order " << m.size() << "\n";
  out << "P = " << join_labels(m, m.p_elements()) << "\n";
  std::size_t width = 1;
  for (Element x = 0; x < m.size(); ++x) width = std::max(width, m.label(x).size());
  auto cell = [&](const std::string& s) { out << std::string(width + 1 - s.size(), ' ') << s; };
  cell("");
  out << " |";
  for (Element y = 0; y < m.size(); ++y) cell(m.label(y));
  out << "\n" << std::string((width + 1) * (m.size() + 1) + 2, '-') << "\n";
  for (Element x = 0; x < m.size(); ++x) {
    cell(m.label(x));
    out << " |";
    for (Element y = 0; y < m.size(); ++y) cell(m.label(m.mul(x, y)));
    out << "\n";
  }
}

struct QuotientOptions {
  std::string game;
  unsigned cap_r = QuotientCaps{}.max_region;
  std::size_t cap_q = QuotientCaps{}.max_elements;
  std::size_t memo = QuotientCaps{}.memo_limit;
  std::string out = "text";
};

int run_quotient(const QuotientOptions& o) {
  Arena arena;
  GameId g = parse_game(o.game, arena);
  auto ctx = ClosedContext::from_games(arena, {g});
  QuotientCaps caps;
  caps.max_region = o.cap_r;
  caps.initial_region = std::min(caps.initial_region, o.cap_r);
  caps.max_elements = o.cap_q;
  caps.memo_limit = o.memo;

  SumOracle oracle(ctx, caps.memo_limit);
  std::string cache;
  if (const char* dir = std::getenv(kCacheEnv); dir && *dir) {
    std::filesystem::create_directories(dir);
    cache = (std::filesystem::path(dir) / ("memo-" + oracle.fingerprint() + ".bin")).string();
    oracle.load(cache);
  }
  auto r = compute_quotient(oracle, caps);
  if (!cache.empty()) oracle.save(cache);

  if (o.out == "json") {
    std::cout << to_json(r, ctx).dump(2) << "\n";
  } else {
    std::cout << "status " << (r.status == QuotientStatus::verified ? "verified" : "undetermined") << "\n";
    std::cout << "context " << ctx.size() << " games\n";
    if (r.monoid) {
      print_monoid_text(std::cout, *r.monoid);
      for (std::size_t e = 0; e < ctx.size(); ++e) {
        std::cout << "phi(" << ctx.name(e) << ") = " << r.monoid->label(r.phi[e]) << "\n";
      }
    } else {
      std::cout << "reason " << r.evidence.reason << "\n";
      for (const auto& f : r.evidence.families) {
        std::cout << "distinguishable multiples of " << ctx.name(f.element) << ":";
        for (auto m : f.multiples) std::cout << " " << m;
        std::cout << "\n";
      }
    }
    std::cout << "classes " << r.evidence.classes << ", tests " << r.evidence.tests << ", R "
              << r.evidence.region_bound << ", memo " << r.evidence.outcome_evaluations << "\n";
  }
  return r.status == QuotientStatus::verified ? kOk : kUndetermined;
}

struct OctalOptions {
  std::string code;
  unsigned heaps = 0;
  bool normal = false;
  bool misere = false;
  bool period = false;
  std::string out = "text";
};

int run_octal_normal(const OctalCode& code, const OctalOptions& o) {
  auto values = grundy_sequence(code, o.heaps);
  std::optional<NormalPeriodCertificate> cert;
  if (o.period) cert = detect_normal_period(code, values);
  if (o.out == "json") {
    Json j{{"code", code.text()}, {"play", "normal"}, {"grundy", values}};
    if (o.period) j["certificate"] = cert ? to_json(*cert) : Json(nullptr);
    std::cout << j.dump(2) << "\n";
  } else if (o.out == "tsv") {
    std::cout << "heap\tgrundy\n";
    for (std::size_t n = 0; n < values.size(); ++n) std::cout << n << "\t" << values[n] << "\n";
  } else {
    for (std::size_t n = 0; n < values.size(); ++n) std::cout << (n ? " " : "") << values[n];
    std::cout << "\n";
  }
  if (o.period && o.out != "json") {
    if (cert) {
      std::cout << "period " << cert->p << " from n0 = " << cert->n0 << ", window [" << cert->window_begin << ", "
                << cert->window_end << ")\n";
    } else {
      std::cout << "no period certified\n";
    }
  }
  return o.period && !cert ? kUndetermined : kOk;
}

int run_octal_misere(const OctalCode& code, const OctalOptions& o) {
  auto data = pretending_function(code, o.heaps);
  std::optional<MisereCertificate> cert;
  if (o.period) cert = detect_misere_period(data);
  if (o.out == "json") {
    Json j = to_json(data);
    if (o.period) j["certificate"] = cert ? to_json(*cert) : Json(nullptr);
    std::cout << j.dump(2) << "\n";
  } else if (o.out == "tsv") {
    std::cout << "heap\tvalue\tquotient\torder\n";
    for (const auto& e : data.entries) {
      std::cout << e.heap << "\t" << e.label << "\t" << e.quotient << "\t"
                << data.quotients[e.quotient].monoid.size() << "\n";
    }
  } else {
    for (const auto& e : data.entries) {
      if (e.heap) std::cout << (e.heap > 1 ? " " : "") << e.label;
    }
    std::cout << "\n";
    if (!data.quotients.empty()) print_monoid_text(std::cout, data.quotients.back().monoid);
    if (data.truncated) std::cout << data.note << "\n";
  }
  if (o.period && o.out != "json") {
    if (cert) {
      std::cout << "period " << cert->p << " from n0 = " << cert->n0 << ", M = " << cert->M << "\n";
    } else {
      std::cout << "no period certified\n";
    }
  }
  if (data.truncated && o.out != "json") std::cerr << data.note << "\n";
  return data.truncated || (o.period && !cert) ? kUndetermined : kOk;
}

int run_eval(const std::string& notation, const std::string& play) {
  Arena arena;
  GameId g = parse_game(notation, arena);
  Play p = play == "normal" ? Play::normal : Play::misere;
  std::cout << to_char(arena.outcome(g, p));
  if (p == Play::normal) std::cout << " grundy " << arena.grundy(g);
  std::cout << "\n";
  return kOk;
}

int run_monoid(const std::string& action, const std::string& in, const std::string& other, const std::string& out) {
  auto m = monoid_from_json(parse_json(read_file(in)));
  if (action == "reduce") {
    auto red = reduce(m);
    if (out == "json") {
      std::cout << Json{{"monoid", to_json(red.monoid)}, {"projection", red.projection}}.dump(2) << "\n";
    } else {
      print_monoid_text(std::cout, red.monoid);
    }
    return kOk;
  }
  if (action == "report") {
    auto report = structure_report(m);
    std::cout << to_json(report, m).dump(2) << "\n";
    return kOk;
  }
  if (other.empty()) throw InvalidArgument("iso needs --other");
  auto n = monoid_from_json(parse_json(read_file(other)));
  auto f = iso(m, n);
  if (out == "json") {
    std::cout << Json{{"isomorphic", f.has_value()}, {"map", f ? Json(*f) : Json(nullptr)}}.dump(2) << "\n";
  } else if (f) {
    std::cout << "isomorphic:";
    for (Element x = 0; x < m.size(); ++x) std::cout << " " << m.label(x) << "->" << n.label((*f)[x]);
    std::cout << "\n";
  } else {
    std::cout << "not isomorphic\n";
  }
  return f ? kOk : kUndetermined;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Misere quotients of impartial games"};
  app.set_version_flag("--version", std::string("misere ") + MISERE_VERSION);
  app.require_subcommand(1);

  QuotientOptions qo;
  auto* quotient = app.add_subcommand("quotient", "Misere quotient of the closure of a game");
  quotient->add_option("--game", qo.game, "Game in brace/star notation or a built-in name")->required();
  quotient->add_option("--cap-r", qo.cap_r, "Largest exponent bound R")->check(CLI::PositiveNumber);
  quotient->add_option("--cap-q", qo.cap_q, "Largest number of classes")->check(CLI::PositiveNumber);
  quotient->add_option("--memo", qo.memo, "Largest outcome memo")->check(CLI::PositiveNumber);
  quotient->add_option("--out", qo.out, "Output format")->check(CLI::IsMember({"text", "json"}));

  OctalOptions oo;
  auto* octal = app.add_subcommand("octal", "Grundy values or misere quotient data of an octal game");
  octal->add_option("code", oo.code, "Octal code such as 0.77")->required();
  octal->add_option("--heaps", oo.heaps, "Largest heap")->required();
  auto* normal_flag = octal->add_flag("--normal", oo.normal, "Normal play");
  auto* misere_flag = octal->add_flag("--misere", oo.misere, "Misere play");
  normal_flag->excludes(misere_flag);
  octal->add_flag("--period", oo.period, "Search for a periodicity certificate");
  octal->add_option("--out", oo.out, "Output format")->check(CLI::IsMember({"text", "json", "tsv"}));

  std::string notation, play = "misere";
  auto* eval = app.add_subcommand("eval", "Outcome of a single game");
  eval->add_option("game", notation, "Game in brace/star notation")->required();
  eval->add_option("--play", play, "Play convention")->check(CLI::IsMember({"normal", "misere"}));

  std::string action, in, other, mout = "json";
  auto* monoid = app.add_subcommand("monoid", "Operations on bipartite monoids stored as JSON");
  monoid->add_option("action", action, "reduce, report or iso")
      ->required()
      ->check(CLI::IsMember({"reduce", "report", "iso"}));
  monoid->add_option("--in", in, "Monoid JSON file")->required()->check(CLI::ExistingFile);
  monoid->add_option("--other", other, "Second monoid for iso")->check(CLI::ExistingFile);
  monoid->add_option("--out", mout, "Output format")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*quotient) return run_quotient(qo);
    if (*octal) {
      if (oo.normal == oo.misere) throw InvalidArgument("choose exactly one of --normal and --misere");
      auto code = parse_octal(oo.code);
      return oo.normal ? run_octal_normal(code, oo) : run_octal_misere(code, oo);
    }
    if (*eval) return run_eval(notation, play);
    if (*monoid) return run_monoid(action, in, other, mout);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kUndetermined;
  }
  return kUsage;
}
