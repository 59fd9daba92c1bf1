#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "abc/bench.hpp"
#include "abc/curve.hpp"
#include "abc/error.hpp"
#include "abc/field.hpp"
#include "abc/rng.hpp"
#include "abc/scheme.hpp"
#include "abc/wire.hpp"

namespace py = pybind11;
using namespace abc;
using wire::json;

namespace {

// Python ints cross the boundary as decimal strings; negative values are rejected.
BigNat to_nat(const py::int_& v) {
  std::string text = py::str(v);
  if (!text.empty() && text[0] == '-') throw Error(ErrorCode::Undefined, "expected a non-negative integer");
  return BigNat::from_decimal(text);
}

py::int_ to_py(const BigNat& v) { return py::int_(py::reinterpret_steal<py::object>(
    PyLong_FromString(v.to_decimal().c_str(), nullptr, 10))); }

FieldElement to_fe(const py::int_& v) { return FieldElement::from_bignat(to_nat(v)); }

std::unique_ptr<Rng> make_rng(std::optional<std::uint64_t> seed) {
  if (seed) return std::make_unique<SeededRng>(*seed);
  return std::make_unique<SystemRng>();
}

scheme::SchemeId scheme_id(const std::string& name) {
  auto id = scheme::parse_scheme(name);
  if (!id) throw Error(ErrorCode::ParseError, "unknown scheme '" + name + "'");
  return *id;
}

scheme::AttributeSet attrs_from(const std::optional<std::vector<py::int_>>& attrs, std::size_t count) {
  if (!attrs) return scheme::fixture_attributes(count);
  std::vector<scheme::Attribute> values;
  for (const auto& a : *attrs) values.emplace_back(to_nat(a));
  return scheme::AttributeSet(values);
}

std::pair<std::string, std::string> keygen(const std::string& which, std::optional<std::uint64_t> seed) {
  auto rng = make_rng(seed);
  wire::IssuerKeys keys;
  if (which == "all" || which == "ecc160") keys.ecc = scheme::ecc_keygen(*rng);
  if (which == "all" || which == "modexp1024") keys.modexp = scheme::rsa_keygen(*rng);
  if (!keys.ecc && !keys.modexp) throw Error(ErrorCode::ParseError, "unknown scheme '" + which + "'");
  return {wire::encode_issuer_keys(keys).dump(), wire::encode_public_keys(wire::public_keys(keys)).dump()};
}

std::string issue(const std::string& name, const std::string& issuer_keys,
                  const std::optional<std::vector<py::int_>>& attrs, std::size_t count,
                  std::optional<std::uint64_t> seed) {
  auto keys = wire::decode_issuer_keys(json::parse(issuer_keys));
  auto set = attrs_from(attrs, count);
  auto rng = make_rng(seed);
  if (scheme_id(name) == scheme::SchemeId::Ecc160) {
    if (!keys.ecc) throw Error(ErrorCode::ParseError, "no ecc160 key");
    return wire::encode_credential(scheme::ecc_issue(*keys.ecc, set, *rng)).dump();
  }
  if (!keys.modexp) throw Error(ErrorCode::ParseError, "no modexp1024 key");
  return wire::encode_credential(scheme::rsa_issue(*keys.modexp, set)).dump();
}

bool verify(const std::string& public_keys, const std::string& credential) {
  auto keys = wire::decode_public_keys(json::parse(public_keys));
  auto doc = json::parse(credential);
  try {
    if (scheme_id(wire::credential_scheme(doc)) == scheme::SchemeId::Ecc160) {
      if (!keys.ecc) throw Error(ErrorCode::ParseError, "no ecc160 key");
      return scheme::ecc_verify(*keys.ecc, wire::decode_ecc_credential(doc));
    }
    if (!keys.modexp) throw Error(ErrorCode::ParseError, "no modexp1024 key");
    return scheme::rsa_verify(*keys.modexp, wire::decode_modexp_credential(doc));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MalformedPoint) return false;
    throw;
  }
}

py::bytes frame_encode(const std::string& type, const std::string& payload) {
  auto t = wire::parse_type(type);
  if (!t) throw Error(ErrorCode::MalformedJson, "unknown message type '" + type + "'");
  wire::MemoryStream s;
  wire::frame_write(s, {*t, json::parse(payload)});
  const auto& d = s.data();
  return py::bytes(reinterpret_cast<const char*>(d.data()), d.size());
}

std::pair<std::string, std::string> frame_decode(const py::bytes& data) {
  std::string raw = data;
  wire::MemoryStream s(std::vector<std::uint8_t>(raw.begin(), raw.end()));
  auto env = wire::frame_read(s);
  return {std::string(wire::type_name(env.type)), env.payload.dump()};
}

std::string summarize(const std::string& records) {
  auto summaries = bench::summarize(bench::records_from_json(json::parse(records)));
  return bench::render_report(summaries, bench::ReportFormat::Json);
}

std::string render_report(const std::string& records, const std::string& format) {
  auto f = bench::parse_report_format(format);
  if (!f) throw Error(ErrorCode::BadConfig, "unknown report format '" + format + "'");
  return bench::render_report(bench::summarize(bench::records_from_json(json::parse(records))), *f);
}

std::string run_benchmark(const std::string& config) {
  auto cfg = bench::BenchConfig::from_json(json::parse(config));
  cfg.validate();
  auto result = bench::run_benchmark(cfg);
  return json{{"records", bench::records_to_json(result.records)}, {"failed_cells", result.failed_cells}}.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of the credential performance lab";

  static PyObject* abc_error = PyErr_NewException("abclab._core.AbcError", PyExc_RuntimeError, nullptr);
  m.attr("AbcError") = py::handle(abc_error);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(abc_error)(e.what());
      exc.attr("code") = std::string(error_code_name(e.code()));
      PyErr_SetObject(abc_error, exc.ptr());
    } catch (const json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.attr("P") = to_py(field_prime());
  m.attr("Q") = to_py(group_order());

  m.def("fe_add", [](const py::int_& a, const py::int_& b) { return to_py(fe_add(to_fe(a), to_fe(b)).to_bignat()); });
  m.def("fe_sub", [](const py::int_& a, const py::int_& b) { return to_py(fe_sub(to_fe(a), to_fe(b)).to_bignat()); });
  m.def("fe_mul", [](const py::int_& a, const py::int_& b) { return to_py(fe_mul(to_fe(a), to_fe(b)).to_bignat()); });
  m.def("fe_inv", [](const py::int_& a) { return to_py(fe_inv(to_fe(a)).to_bignat()); });
  m.def("mod_pow", [](const py::int_& b, const py::int_& e, const py::int_& mod) {
    return to_py(mod_pow(to_nat(b), to_nat(e), to_nat(mod)));
  });
  m.def("bit_length", [](const py::int_& n) { return bit_length(to_nat(n)); });
  m.def("sc_reduce_wide", [](const py::bytes& data) {
    std::string raw = data;
    std::vector<std::uint8_t> bytes(raw.begin(), raw.end());
    return to_py(sc_reduce_wide(bytes).value());
  });

  py::class_<curve::ExtendedPoint>(m, "Point")
      .def_static("base", &curve::base_point)
      .def_static("neutral", &curve::neutral)
      .def_static("from_affine",
                  [](const py::int_& x, const py::int_& y) { return curve::from_affine({to_fe(x), to_fe(y)}); })
      .def("affine",
           [](const curve::ExtendedPoint& p) {
             auto a = curve::to_affine(p);
             return py::make_tuple(to_py(a.x.to_bignat()), to_py(a.y.to_bignat()));
           })
      .def("double", &curve::point_double)
      .def("is_valid", &curve::is_valid)
      .def("__add__", &curve::point_add)
      .def("__neg__", &curve::point_negate)
      .def("__eq__", &curve::point_equal)
      .def("__rmul__", [](const curve::ExtendedPoint& p, const py::int_& k) { return curve::scalar_mul(to_nat(k), p); })
      .def("__repr__", [](const curve::ExtendedPoint& p) {
        auto a = curve::to_affine(p);
        return "Point(x=0x" + a.x.to_hex() + ", y=0x" + a.y.to_hex() + ")";
      });

  m.def("scalar_mul", [](const py::int_& k, const curve::ExtendedPoint& p) { return curve::scalar_mul(to_nat(k), p); });
  m.def("scalar_mul_counted", [](const py::int_& k, const curve::ExtendedPoint& p) {
    auto r = curve::scalar_mul_counted(to_nat(k), p);
    return py::make_tuple(r.point, r.doubles, r.adds);
  });

  m.def("fixture_attributes", [] {
    std::vector<py::int_> out;
    for (const auto& d : scheme::fixture_attribute_decimals()) out.push_back(to_py(BigNat::from_decimal(d)));
    return out;
  });
  m.def("keygen", &keygen, py::arg("scheme") = "all", py::arg("seed") = py::none());
  m.def("issue", &issue, py::arg("scheme"), py::arg("issuer_keys"), py::arg("attributes") = py::none(),
        py::arg("count") = 10, py::arg("seed") = py::none());
  m.def("verify", &verify, py::arg("public_keys"), py::arg("credential"));

  m.def("frame_encode", &frame_encode, py::arg("type"), py::arg("payload"));
  m.def("frame_decode", &frame_decode, py::arg("data"));

  m.def("run_benchmark", &run_benchmark, py::arg("config"));
  m.def("summarize", &summarize, py::arg("records"));
  m.def("render_report", &render_report, py::arg("records"), py::arg("format") = "markdown");
}
