#include "doctest.h"
#include "misere/error.hpp"
#include "misere/json_io.hpp"

using namespace misere;

namespace {

QuotientResult quotient_of(const std::string& text, ClosedContext& ctx) {
  Arena arena;
  ctx = ClosedContext::from_games(arena, {parse_game(text, arena)});
  return compute_quotient(ctx);
}

}  // namespace

TEST_CASE("monoids round-trip through JSON") {
  for (const auto& m : {make_tn(0), make_tn(2), make_tn(3), make_r8()}) {
    auto text = to_json(m).dump();
    auto back = monoid_from_json(parse_json(text));
    CHECK(back == m);
    CHECK(back.labels() == m.labels());
    CHECK(to_json(back).dump() == text);
  }
}

TEST_CASE("quotient results round-trip through JSON") {
  ClosedContext ctx;
  auto r = quotient_of("star2sharp320", ctx);
  auto j = to_json(r, ctx);
  CHECK(j["status"] == "verified");
  CHECK(j["elements"].size() == ctx.size());
  auto back = quotient_from_json(parse_json(j.dump()));
  CHECK(back.status == QuotientStatus::verified);
  CHECK(*back.monoid == *r.monoid);
  CHECK(back.phi == r.phi);
  CHECK(back.generator_elements == r.generator_elements);
  CHECK(to_json(back, ctx).dump() == j.dump());

  auto e = quotient_of("E", ctx);
  auto je = to_json(e, ctx);
  CHECK(je["status"] == "undetermined");
  CHECK(je["monoid"].is_null());
  auto eback = quotient_from_json(parse_json(je.dump()));
  CHECK(eback.status == QuotientStatus::undetermined);
  CHECK(eback.evidence.families.size() == e.evidence.families.size());
  CHECK(to_json(eback, ctx).dump() == je.dump());
}

TEST_CASE("certificates round-trip through JSON") {
  auto normal = detect_normal_period(parse_octal("0.77"), 200);
  REQUIRE(normal.has_value());
  auto nback = normal_certificate_from_json(parse_json(to_json(*normal).dump()));
  CHECK(nback.p == 12);
  CHECK(to_json(nback).dump() == to_json(*normal).dump());

  MisereCertificate m{"0.77", 71, 12, 2, 168, 71, 167, 48};
  auto mback = misere_certificate_from_json(parse_json(to_json(m).dump()));
  CHECK(to_json(mback).dump() == to_json(m).dump());
  CHECK(mback.M == 168);
}

TEST_CASE("pretending data serializes") {
  auto d = pretending_function(parse_octal("0.77"), 6);
  auto j = to_json(d);
  CHECK(j["reached"] == 6);
  CHECK(j["entries"].size() == 7);
  CHECK(j["entries"][1]["label"] == "a");
  CHECK(j["entries"][2]["source"] == "grew");
}

TEST_CASE("malformed documents") {
  CHECK_THROWS_AS(parse_json("{\"order\": "), ParseError);
  CHECK_THROWS_AS(monoid_from_json(parse_json("{\"order\": 2}")), ParseError);
  CHECK_THROWS_AS(monoid_from_json(parse_json(R"({"order": 2, "identity": 0, "p": [], "table": [[0, 1]]})")),
                  InvalidArgument);
  // Not associative: x*x = y, y*y = x, x*y = x.
  auto bad = R"({"order": 3, "identity": 0, "p": [], "table": [[0,1,2],[1,2,1],[2,1,1]]})";
  CHECK_THROWS_AS(monoid_from_json(parse_json(bad)), InvalidArgument);
  CHECK_THROWS_AS(quotient_from_json(parse_json(R"({"status": "maybe"})")), InvalidArgument);
}
