#include "misere/json_io.hpp"

#include "misere/error.hpp"

namespace misere {

namespace {

const char* source_name(PretendingEntry::Source s) {
  switch (s) {
    case PretendingEntry::Source::zero:
      return "zero";
    case PretendingEntry::Source::reused:
      return "reused";
    case PretendingEntry::Source::extended:
      return "extended";
    case PretendingEntry::Source::grew:
      return "grew";
  }
  return "";
}

// Runs a reader, reporting missing or mistyped fields as ParseError.
template <class F>
auto reading(const char* what, F f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed ") + what + " document: " + e.what(), 0);
  }
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
}

Json to_json(const BipartiteMonoid& m) {
  Json table = Json::array();
  for (Element x = 0; x < m.size(); ++x) {
    Json row = Json::array();
    for (Element y = 0; y < m.size(); ++y) row.push_back(m.mul(x, y));
    table.push_back(std::move(row));
  }
  Json labels = Json::array();
  for (Element x = 0; x < m.size(); ++x) labels.push_back(m.label(x));
  return Json{{"order", m.size()},
              {"identity", m.identity()},
              {"labels", std::move(labels)},
              {"p", m.p_elements()},
              {"table", std::move(table)}};
}

BipartiteMonoid monoid_from_json(const Json& j) {
  return reading("monoid", [&] {
    const std::size_t n = j.at("order").get<std::size_t>();
    const auto& rows = j.at("table");
    if (rows.size() != n) throw InvalidArgument("table must have one row per element");
    std::vector<Element> table;
    table.reserve(n * n);
    for (const auto& row : rows) {
      if (row.size() != n) throw InvalidArgument("table rows must have one entry per element");
      for (const auto& v : row) table.push_back(v.get<Element>());
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return BipartiteMonoid(n, std::move(table), j.at("identity").get<Element>(),
                           j.at("p").get<std::vector<Element>>(), std::move(labels));
  });
}

Json to_json(const StructureReport& r, const BipartiteMonoid& m) {
  auto names = [&](const std::vector<Element>& xs) {
    Json a = Json::array();
    for (Element x : xs) a.push_back(m.label(x));
    return a;
  };
  Json md = Json::array();
  for (const auto& c : r.md_classes) md.push_back(names(c));
  Json components = Json::object();
  for (const auto& [e, members] : r.archimedean_components) components[m.label(e)] = names(members);
  Json order = Json::array();
  for (std::size_t i = 0; i < r.idempotents.size(); ++i) {
    for (std::size_t k = 0; k < r.idempotents.size(); ++k) {
      if (i != k && r.leq[i][k]) order.push_back({m.label(r.idempotents[i]), m.label(r.idempotents[k])});
    }
  }
  return Json{{"order", m.size()},
              {"idempotents", names(r.idempotents)},
              {"z", m.label(r.z)},
              {"kernel", names(r.kernel)},
              {"kernel_type", r.kernel_type},
              {"kernel_is_group", r.kernel_is_group},
              {"zx_is_homomorphism_onto_kernel", r.zx_is_homomorphism_onto_kernel},
              {"md_classes", std::move(md)},
              {"archimedean_components", std::move(components)},
              {"idempotent_order", std::move(order)},
              {"normal", r.is_normal},
              {"regular", r.is_regular},
              {"maximal_subgroups", r.maximal_subgroups},
              {"maximal_subgroups_meeting_p", r.maximal_subgroups_meeting_p}};
}

Json to_json(const QuotientResult& r, const ClosedContext& ctx) {
  const bool verified = r.status == QuotientStatus::verified;
  Json elements = Json::array();
  for (std::size_t e = 0; e < ctx.size(); ++e) elements.push_back(ctx.name(e));
  Json phi_labels = Json::array();
  if (r.monoid) {
    for (Element v : r.phi) phi_labels.push_back(r.monoid->label(v));
  }
  Json families = Json::array();
  for (const auto& f : r.evidence.families) {
    Json witnesses = Json::array();
    for (const auto& w : f.witnesses) {
      witnesses.push_back(Json{{"first", w.first}, {"second", w.second}, {"test", w.test}});
    }
    families.push_back(Json{{"element", f.element},
                            {"element_name", ctx.name(f.element)},
                            {"multiples", f.multiples},
                            {"witnesses", std::move(witnesses)}});
  }
  Json evidence{{"reason", r.evidence.reason},
                {"region_bound", r.evidence.region_bound},
                {"classes", r.evidence.classes},
                {"tests", r.evidence.tests},
                {"counterexamples", r.evidence.counterexamples},
                {"outcome_evaluations", r.evidence.outcome_evaluations},
                {"families", std::move(families)}};
  return Json{{"status", verified ? "verified" : "undetermined"},
              {"monoid", r.monoid ? to_json(*r.monoid) : Json(nullptr)},
              {"elements", std::move(elements)},
              {"phi", r.phi},
              {"phi_labels", std::move(phi_labels)},
              {"generators", r.generator_elements},
              {"evidence", std::move(evidence)}};
}

QuotientResult quotient_from_json(const Json& j) {
  return reading("quotient", [&] {
    QuotientResult r;
    const auto status = j.at("status").get<std::string>();
    if (status == "verified") {
      r.status = QuotientStatus::verified;
    } else if (status == "undetermined") {
      r.status = QuotientStatus::undetermined;
    } else {
      throw InvalidArgument("unknown quotient status '" + status + "'");
    }
    if (!j.at("monoid").is_null()) r.monoid = monoid_from_json(j.at("monoid"));
    if (r.status == QuotientStatus::verified && !r.monoid) throw InvalidArgument("verified quotient without monoid");
    r.phi = j.at("phi").get<std::vector<Element>>();
    if (r.monoid) {
      for (Element v : r.phi) {
        if (v >= r.monoid->size()) throw InvalidArgument("phi value out of range");
      }
    }
    r.generator_elements = j.at("generators").get<std::vector<std::size_t>>();
    const auto& ev = j.at("evidence");
    r.evidence.reason = ev.at("reason").get<std::string>();
    r.evidence.region_bound = ev.at("region_bound").get<unsigned>();
    r.evidence.classes = ev.at("classes").get<std::size_t>();
    r.evidence.tests = ev.at("tests").get<std::size_t>();
    r.evidence.counterexamples = ev.at("counterexamples").get<std::size_t>();
    r.evidence.outcome_evaluations = ev.at("outcome_evaluations").get<std::size_t>();
    for (const auto& f : ev.at("families")) {
      DistinguishingFamily fam;
      fam.element = f.at("element").get<std::size_t>();
      fam.multiples = f.at("multiples").get<std::vector<unsigned>>();
      for (const auto& w : f.at("witnesses")) {
        fam.witnesses.push_back(
            {w.at("first").get<unsigned>(), w.at("second").get<unsigned>(), w.at("test").get<Position>()});
      }
      r.evidence.families.push_back(std::move(fam));
    }
    return r;
  });
}

Json to_json(const NormalPeriodCertificate& c) {
  return Json{{"code", c.code}, {"n0", c.n0},  {"p", c.p},
              {"k", c.k},       {"N", c.N},    {"window", {c.window_begin, c.window_end}}};
}

NormalPeriodCertificate normal_certificate_from_json(const Json& j) {
  return reading("certificate", [&] {
    NormalPeriodCertificate c;
    c.code = j.at("code").get<std::string>();
    c.n0 = j.at("n0").get<unsigned>();
    c.p = j.at("p").get<unsigned>();
    c.k = j.at("k").get<unsigned>();
    c.N = j.at("N").get<unsigned>();
    c.window_begin = j.at("window").at(0).get<unsigned>();
    c.window_end = j.at("window").at(1).get<unsigned>();
    return c;
  });
}

Json to_json(const MisereCertificate& c) {
  return Json{{"code", c.code},
              {"n0", c.n0},
              {"p", c.p},
              {"k", c.k},
              {"M", c.M},
              {"window", {c.window_begin, c.window_end}},
              {"quotient_order", c.quotient_order}};
}

MisereCertificate misere_certificate_from_json(const Json& j) {
  return reading("certificate", [&] {
    MisereCertificate c;
    c.code = j.at("code").get<std::string>();
    c.n0 = j.at("n0").get<unsigned>();
    c.p = j.at("p").get<unsigned>();
    c.k = j.at("k").get<unsigned>();
    c.M = j.at("M").get<unsigned>();
    c.window_begin = j.at("window").at(0).get<unsigned>();
    c.window_end = j.at("window").at(1).get<unsigned>();
    c.quotient_order = j.at("quotient_order").get<std::size_t>();
    return c;
  });
}

Json to_json(const PretendingData& d) {
  Json entries = Json::array();
  for (const auto& e : d.entries) {
    entries.push_back(Json{{"heap", e.heap},
                           {"value", e.value},
                           {"label", e.label},
                           {"quotient", e.quotient},
                           {"source", source_name(e.source)}});
  }
  Json quotients = Json::array();
  for (const auto& q : d.quotients) {
    quotients.push_back(Json{{"first_heap", q.first_heap},
                             {"last_heap", q.last_heap},
                             {"order", q.monoid.size()},
                             {"generator_heaps", q.generator_heaps}});
  }
  Json splits = Json::array();
  for (const auto& s : d.splits) {
    splits.push_back(Json{{"first", s.first},
                          {"second", s.second},
                          {"identified_through", s.identified_through},
                          {"separated_at", s.separated_at}});
  }
  return Json{{"code", d.code},
              {"k", d.k},
              {"requested", d.requested},
              {"reached", d.reached()},
              {"truncated", d.truncated},
              {"note", d.note},
              {"quotient", d.quotients.empty() ? Json(nullptr) : to_json(d.quotients.back().monoid)},
              {"entries", std::move(entries)},
              {"partial_quotients", std::move(quotients)},
              {"splits", std::move(splits)}};
}

}  // namespace misere
