#include <pybind11/pybind11.h>

#include "circount/cli.hpp"
#include "circount/errors.hpp"

namespace py = pybind11;
using namespace circount;

namespace {

std::string run_json(const std::string& document, bool positive, bool torus, bool affine, bool verify, bool explain,
                     std::size_t verify_samples, long precision_cap_bits) {
  cli::InputDocument doc = cli::parse(document);
  cli::RunOptions opts;
  opts.targets = {positive, torus, affine};
  opts.verify = verify;
  opts.explain = explain;
  opts.verify_samples = verify_samples;
  opts.precision_cap_bits = precision_cap_bits;
  py::gil_scoped_release unlocked;
  return cli::run(doc, opts).body.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Real root counts of circuit polynomial systems";

  static PyObject* error = py::exception<Error>(m, "CircountError", PyExc_ValueError).release().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error)(std::string(e.kind()) + ": " + e.what());
      py::setattr(exc, "kind", py::str(e.kind()));
      PyErr_SetObject(error, exc.ptr());
    }
  });

  m.def("run", &run_json, py::arg("document"), py::arg("positive") = false, py::arg("torus") = false,
        py::arg("affine") = false, py::arg("verify") = false, py::arg("explain") = false,
        py::arg("verify_samples") = 100000, py::arg("precision_cap_bits") = 0,
        "Count roots of one JSON document; returns the JSON report.");
  m.def(
      "canonical", [](const std::string& document) { return cli::serialize(cli::parse(document)); },
      py::arg("document"), "Parse and validate a JSON document; returns it with integers as strings.");
}
