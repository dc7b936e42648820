#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <variant>

#include "ffd/dataset.hpp"
#include "ffd/discovery.hpp"
#include "ffd/errors.hpp"
#include "ffd/fuzzy_index.hpp"
#include "ffd/golay.hpp"
#include "ffd/question_template.hpp"

namespace py = pybind11;
using namespace ffd;

namespace {

using Cell = std::variant<std::monostate, double, std::string>;

Record to_record(const std::map<std::string, std::optional<Cell>>& fields) {
  Record r;
  for (const auto& [name, cell] : fields) {
    if (!cell || std::holds_alternative<std::monostate>(*cell)) continue;
    if (const double* d = std::get_if<double>(&*cell)) {
      r.set(name, *d);
    } else {
      r.set(name, std::get<std::string>(*cell));
    }
  }
  return r;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Golay [23,12,7] codec and FuzzyFind index";

  static py::exception<FormatError> format_error(m, "FormatError", PyExc_ValueError);
  static py::exception<ContractError> contract_error(m, "ContractError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const FormatError& e) {
      format_error(e.what());
    } catch (const ContractError& e) {
      contract_error(e.what());
    }
  });

  m.def("encode", [](std::uint32_t info) { return encode(InfoWord12(info)).value(); },
        py::arg("info"), "Codeword for a 12-bit information word.");
  m.def("syndrome", [](std::uint32_t w) { return syndrome(BitVector23(w)).value(); },
        py::arg("word"));
  m.def(
      "decode",
      [](std::uint32_t w) {
        const Decoded d = decode(BitVector23(w));
        return py::make_tuple(d.codeword.value(), d.error.value());
      },
      py::arg("word"), "(codeword, error) with error weight <= 3.");
  m.def("hamming", [](std::uint32_t a, std::uint32_t b) {
    return hamming(BitVector23(a), BitVector23(b));
  });
  m.def(
      "neighborhood",
      [](std::uint32_t w) {
        std::vector<std::uint32_t> out;
        for (InfoWord12 u : neighborhood_indices(BitVector23(w))) out.push_back(u.value());
        return out;
      },
      py::arg("key"), "Bucket ids of a key: 1 or 6 of them.");

  py::class_<FuzzyIndex>(m, "FuzzyIndex")
      .def(py::init<>())
      .def("insert", [](FuzzyIndex& ix, std::uint64_t id, std::uint32_t key) {
        ix.insert(id, BitVector23(key));
      })
      .def("freeze", &FuzzyIndex::freeze)
      .def(
          "query",
          [](const FuzzyIndex& ix, std::uint32_t probe, int radius) {
            std::vector<std::pair<std::uint64_t, int>> out;
            for (const Match& mt : ix.query(BitVector23(probe), radius)) {
              out.emplace_back(mt.record_id, mt.distance);
            }
            return out;
          },
          py::arg("probe"), py::arg("radius") = 2)
      .def("key_of", [](const FuzzyIndex& ix, std::uint64_t id) { return ix.key_of(id).value(); })
      .def("__len__", &FuzzyIndex::size)
      .def("__contains__", &FuzzyIndex::contains)
      .def_property_readonly("posting_count", &FuzzyIndex::posting_count)
      .def("save", &FuzzyIndex::save_file)
      .def_static("load", &FuzzyIndex::load_file);

  m.def("default_template", [] { return std::string(default_movie_template_text()); });
  m.def(
      "encode_record",
      [](const std::string& template_text, const std::map<std::string, std::optional<Cell>>& rec) {
        return encode_record(parse_template(template_text), to_record(rec)).value();
      },
      py::arg("template"), py::arg("record"));
  m.def(
      "derive_template",
      [](const std::string& csv_path, const std::string& outcome,
         const std::vector<std::string>& exclude) {
        RankOptions o;
        o.exclude = exclude;
        return format_template(rank_questions(ingest_csv_file(csv_path), outcome, o).questions);
      },
      py::arg("csv_path"), py::arg("outcome"), py::arg("exclude") = std::vector<std::string>{});

  m.def("entropy", [](const std::vector<double>& p) { return entropy(p); });
  m.def("information_gain", [](const Bits& feature, const Bits& outcome) {
    return information_gain(feature, outcome);
  });
}
