#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "picentlab/character.hpp"
#include "picentlab/cli.hpp"
#include "picentlab/error.hpp"
#include "picentlab/families.hpp"
#include "picentlab/fixtures.hpp"
#include "picentlab/spec_json.hpp"

namespace py = pybind11;
using namespace picent;

namespace {

std::string report_json(const VerificationReport& rep) { return rep.to_json(false).dump(); }

GroupPtr group_from_text(const std::string& text) { return build_group(parse_group_spec_text(text)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  static py::exception<Error> error_type(m, "PicentError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      error_type((std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.attr("__version__") = "0.1.0";
  m.def("subcommands", &subcommands);
  m.def("fixture_names", &fixture_names);
  m.def("fixture_json", [](const std::string& name) { return group_spec_to_json(fixture(name)).dump(); });

  m.def(
      "verify_st",
      [](std::uint64_t p, std::uint64_t t, const std::string& mutate) {
        const auto mut = parse_st_mutation(mutate);
        if (!mut) throw Error(ErrorCode::BadParameters, "unknown mutation " + mutate);
        return report_json(verify_prop42(build_st(p, t, {}, *mut)));
      },
      py::arg("p"), py::arg("t"), py::arg("mutate") = "none");
  m.def(
      "verify_ell",
      [](std::uint64_t ell, std::uint64_t p, const std::string& mutate) {
        const auto mut = parse_ell_mutation(mutate);
        if (!mut) throw Error(ErrorCode::BadParameters, "unknown mutation " + mutate);
        return report_json(verify_prop44(build_ell(ell, p, {}, *mut)));
      },
      py::arg("ell"), py::arg("p"), py::arg("mutate") = "none");
  m.def(
      "verify_lemmas",
      [](std::uint64_t seed, std::size_t instances) {
        LemmaCorpusOptions o;
        o.seed = seed;
        o.valid_instances = instances;
        return report_json(verify_lemmas(o));
      },
      py::arg("seed") = 1, py::arg("instances") = 200);

  m.def("group_order", [](const std::string& text) { return group_from_text(text)->order(); });
  m.def("class_count", [](const std::string& text) { return conjugacy_classes(group_from_text(text))->count(); });
  m.def("character_degrees",
        [](const std::string& text) { return dixon_table(conjugacy_classes(group_from_text(text))).degrees; });

  m.def(
      "run_cli",
      [](const std::string& subcommand, const py::dict& options) {
        CliCommand cmd;
        cmd.subcommand = subcommand;
        cmd.out = "json";
        for (const auto& [k, v] : options) {
          const auto key = py::cast<std::string>(k);
          if (key == "p") cmd.p = py::cast<std::uint64_t>(v);
          else if (key == "t") cmd.t = py::cast<std::uint64_t>(v);
          else if (key == "ell") cmd.ell = py::cast<std::uint64_t>(v);
          else if (key == "q") cmd.q = py::cast<std::uint64_t>(v);
          else if (key == "seed") cmd.seed = py::cast<std::uint64_t>(v);
          else if (key == "instances") cmd.instances = py::cast<std::size_t>(v);
          else if (key == "max_order") cmd.max_order = py::cast<std::uint64_t>(v);
          else if (key == "mutate") cmd.mutate = py::cast<std::string>(v);
          else if (key == "fixture") cmd.fixture = py::cast<std::string>(v);
          else if (key == "spec") cmd.spec_path = py::cast<std::string>(v);
          else if (key == "synthetic") cmd.synthetic = py::cast<std::string>(v);
          else if (key == "cache_dir") cmd.cache_dir = py::cast<std::string>(v);
          else if (key == "no_cache") cmd.no_cache = py::cast<bool>(v);
          else throw Error(ErrorCode::BadParameters, "unknown option " + key);
        }
        std::ostringstream out, err;
        const int code = run(cmd, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("subcommand"), py::arg("options") = py::dict());
}
