#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "misere/error.hpp"
#include "misere/json_io.hpp"

namespace py = pybind11;
using namespace misere;

namespace {

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Outcome outcome_of(const std::string& notation, Play play) {
  Arena arena;
  return arena.outcome(parse_game(notation, arena), play);
}

Play play_of(const std::string& play) {
  if (play == "normal") return Play::normal;
  if (play == "misere") return Play::misere;
  throw InvalidArgument("play must be 'normal' or 'misere'");
}

QuotientCaps caps_of(unsigned cap_r, std::size_t cap_q, std::size_t memo) {
  QuotientCaps caps;
  caps.max_region = cap_r;
  caps.initial_region = std::min(caps.initial_region, cap_r);
  caps.max_elements = cap_q;
  caps.memo_limit = memo;
  return caps;
}

}  // namespace

PYBIND11_MODULE(misere, m) {
  m.doc() = "Misere quotients of impartial games";
  m.attr("__version__") = MISERE_VERSION;

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

  const QuotientCaps defaults;

  m.def(
      "outcome",
      [](const std::string& notation, const std::string& play) {
        return std::string(1, to_char(outcome_of(notation, play_of(play))));
      },
      py::arg("game"), py::arg("play") = "misere", "Outcome 'P' or 'N' of a game in brace/star notation.");
  m.def(
      "grundy",
      [](const std::string& notation) {
        Arena arena;
        return arena.grundy(parse_game(notation, arena));
      },
      py::arg("game"));
  m.def(
      "birthday",
      [](const std::string& notation) {
        Arena arena;
        return arena.birthday(parse_game(notation, arena));
      },
      py::arg("game"));

  m.def(
      "grundy_sequence", [](const std::string& code, unsigned n) { return grundy_sequence(parse_octal(code), n); },
      py::arg("code"), py::arg("heaps"));
  m.def(
      "normal_period",
      [](const std::string& code, unsigned n) -> py::object {
        auto c = detect_normal_period(parse_octal(code), n);
        return c ? to_python(to_json(*c)) : py::none();
      },
      py::arg("code"), py::arg("heaps"));
  m.def(
      "misere_nim_outcome",
      [](const std::vector<unsigned>& heaps) { return std::string(1, to_char(misere_nim_outcome(heaps))); },
      py::arg("heaps"));

  m.def(
      "quotient",
      [](const std::string& notation, unsigned cap_r, std::size_t cap_q, std::size_t memo) {
        Arena arena;
        auto ctx = ClosedContext::from_games(arena, {parse_game(notation, arena)});
        auto r = compute_quotient(ctx, caps_of(cap_r, cap_q, memo));
        return to_python(to_json(r, ctx));
      },
      py::arg("game"), py::arg("cap_r") = defaults.max_region, py::arg("cap_q") = defaults.max_elements,
      py::arg("memo") = defaults.memo_limit, "Misere quotient of the closure of a game, as a dict.");
  m.def(
      "pretending",
      [](const std::string& code, unsigned n, std::size_t cap_q, std::size_t memo) {
        auto d = pretending_function(parse_octal(code), n, caps_of(QuotientCaps{}.max_region, cap_q, memo));
        Json j = to_json(d);
        auto c = detect_misere_period(d);
        j["certificate"] = c ? to_json(*c) : Json(nullptr);
        return to_python(j);
      },
      py::arg("code"), py::arg("heaps"), py::arg("cap_q") = defaults.max_elements,
      py::arg("memo") = defaults.memo_limit, "Pretending function and misere period certificate of an octal game.");

  py::class_<BipartiteMonoid>(m, "BipartiteMonoid")
      .def(py::init<std::size_t, std::vector<Element>, Element, std::vector<Element>, std::vector<std::string>>(),
           py::arg("size"), py::arg("table"), py::arg("identity"), py::arg("p"),
           py::arg("labels") = std::vector<std::string>{})
      .def_property_readonly("size", &BipartiteMonoid::size)
      .def_property_readonly("identity", &BipartiteMonoid::identity)
      .def_property_readonly("labels", [](const BipartiteMonoid& x) {
        std::vector<std::string> out;
        for (Element e = 0; e < x.size(); ++e) out.push_back(x.label(e));
        return out;
      })
      .def("mul", &BipartiteMonoid::mul)
      .def("in_p", &BipartiteMonoid::in_p)
      .def("p_elements", &BipartiteMonoid::p_elements)
      .def("to_dict", [](const BipartiteMonoid& x) { return to_python(to_json(x)); })
      .def_static(
          "from_dict",
          [](const py::object& d) {
            return monoid_from_json(parse_json(py::module_::import("json").attr("dumps")(d).cast<std::string>()));
          },
          py::arg("data"))
      .def("__eq__", [](const BipartiteMonoid& a, const BipartiteMonoid& b) { return a == b; })
      .def("__len__", &BipartiteMonoid::size)
      .def("__repr__",
           [](const BipartiteMonoid& x) { return "<BipartiteMonoid of order " + std::to_string(x.size()) + ">"; });

  m.def("make_tn", [](unsigned n) { return make_tn(n); }, py::arg("n"));
  m.def("make_r8", &make_r8);
  m.def("is_reduced", &is_reduced);
  m.def("reduce", [](const BipartiteMonoid& x) {
    auto r = reduce(x);
    return py::make_tuple(r.monoid, r.projection);
  });
  m.def("iso", [](const BipartiteMonoid& a, const BipartiteMonoid& b) { return iso(a, b); });
  m.def("classify_tame", &classify_tame);
  m.def("structure_report",
        [](const BipartiteMonoid& x) { return to_python(to_json(structure_report(x), x)); });
  m.def(
      "check_presentation",
      [](const BipartiteMonoid& x, const std::vector<Element>& images, const std::string& text) {
        return check_presentation(x, images, parse_presentation(text));
      },
      py::arg("monoid"), py::arg("images"), py::arg("presentation"));
}
