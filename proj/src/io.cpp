#include "carleson/io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace carleson::io {

namespace {

[[noreturn]] void fail(const std::string& message) { throw ParseError(message); }

const Json& require_object(const Json& doc, const std::string& where) {
  if (!doc.is_object()) fail(where + ": expected an object");
  return doc;
}

void reject_unknown(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) fail(where + "." + key + ": unknown field");
  }
}

double field(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) fail(where + "." + key + ": required field missing");
  return to_number(obj.at(key), where + "." + key);
}

double field_or(const Json& obj, const std::string& key, double fallback, const std::string& where) {
  return obj.contains(key) ? to_number(obj.at(key), where + "." + key) : fallback;
}

const Json& array_field(const Json& doc, const std::string& key) {
  static const Json empty = Json::array();
  if (!doc.contains(key)) return empty;
  const Json& a = doc.at(key);
  if (!a.is_array()) fail(key + ": expected an array");
  return a;
}

std::vector<Atom> atoms_from(const Json& doc, const std::string& location_key) {
  std::vector<Atom> atoms;
  const Json& list = array_field(doc, "atoms");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "atoms[" + std::to_string(i) + "]";
    const Json& a = require_object(list[i], where);
    reject_unknown(a, {location_key, "w"}, where);
    atoms.push_back({field(a, location_key, where), field_or(a, "w", 1.0, where)});
  }
  return atoms;
}

template <class Measure, class Build>
Measure checked(Build build) {
  try {
    return build();
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

Json atoms_json(const std::vector<Atom>& atoms, const char* key) {
  Json list = Json::array();
  for (const auto& a : atoms) list.push_back({{key, number(a.location)}, {"w", number(a.weight)}});
  return list;
}

std::vector<double> real_array(const Json& doc, const std::string& key) {
  if (!doc.contains(key) || !doc.at(key).is_array()) fail(key + ": expected an array");
  std::vector<double> out;
  const Json& a = doc.at(key);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(to_number(a[i], key + "[" + std::to_string(i) + "]"));
  return out;
}

void split_complex(std::span<const cplx> values, Json& doc) {
  Json re = Json::array();
  Json im = Json::array();
  for (cplx v : values) {
    re.push_back(number(v.real()));
    im.push_back(number(v.imag()));
  }
  doc["re"] = std::move(re);
  doc["im"] = std::move(im);
}

std::vector<cplx> join_complex(const Json& doc) {
  const auto re = real_array(doc, "re");
  const auto im = real_array(doc, "im");
  if (re.size() != im.size()) fail("im: length differs from re");
  std::vector<cplx> out(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) out[i] = {re[i], im[i]};
  return out;
}

Json number_array(std::span<const double> xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(number(x));
  return a;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // nlohmann reports "parse error at line L, column C: ..."
    std::string what = e.what();
    const auto at = what.find("parse error");
    fail(source + ": " + (at == std::string::npos ? what : what.substr(at)));
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(path + ": cannot open file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_json(text.str(), path);
}

void write_json(std::ostream& out, const Json& value) { out << value.dump(2) << '\n'; }

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double to_number(const Json& value, const std::string& where) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const auto& s = value.get_ref<const std::string&>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  fail(where + ": expected a number or \"inf\"");
}

RadialMeasure radial_measure_from_json(const Json& doc) {
  require_object(doc, "measure");
  reject_unknown(doc, {"atoms", "pieces"}, "measure");
  auto atoms = atoms_from(doc, "r");
  std::vector<RadialPiece> pieces;
  const Json& list = array_field(doc, "pieces");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "pieces[" + std::to_string(i) + "]";
    const Json& p = require_object(list[i], where);
    reject_unknown(p, {"a", "b", "c", "p", "q"}, where);
    pieces.push_back({field(p, "a", where), field(p, "b", where), field_or(p, "c", 1.0, where),
                      field_or(p, "p", 0.0, where), field_or(p, "q", 0.0, where)});
  }
  return checked<RadialMeasure>([&] { return RadialMeasure(std::move(atoms), std::move(pieces)); });
}

VerticalMeasure vertical_measure_from_json(const Json& doc) {
  require_object(doc, "measure");
  reject_unknown(doc, {"atoms", "pieces"}, "measure");
  auto atoms = atoms_from(doc, "y");
  std::vector<VerticalPiece> pieces;
  const Json& list = array_field(doc, "pieces");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "pieces[" + std::to_string(i) + "]";
    const Json& p = require_object(list[i], where);
    reject_unknown(p, {"a", "b", "c", "p"}, where);
    pieces.push_back({field(p, "a", where), field_or(p, "b", kInf, where), field_or(p, "c", 1.0, where),
                      field_or(p, "p", 0.0, where)});
  }
  return checked<VerticalMeasure>([&] { return VerticalMeasure(std::move(atoms), std::move(pieces)); });
}

LineMeasure line_measure_from_json(const Json& doc) {
  require_object(doc, "measure");
  reject_unknown(doc, {"atoms", "pieces"}, "measure");
  auto atoms = atoms_from(doc, "t");
  std::vector<LinePiece> pieces;
  const Json& list = array_field(doc, "pieces");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "pieces[" + std::to_string(i) + "]";
    const Json& p = require_object(list[i], where);
    reject_unknown(p, {"a", "b", "c", "p"}, where);
    pieces.push_back({field_or(p, "a", -kInf, where), field_or(p, "b", kInf, where), field_or(p, "c", 1.0, where),
                      field_or(p, "p", 0.0, where)});
  }
  return checked<LineMeasure>([&] { return LineMeasure(std::move(atoms), std::move(pieces)); });
}

Json to_json(const RadialMeasure& mu) {
  Json pieces = Json::array();
  for (const auto& p : mu.pieces()) {
    pieces.push_back(
        {{"a", number(p.a)}, {"b", number(p.b)}, {"c", number(p.c)}, {"p", number(p.p)}, {"q", number(p.q)}});
  }
  return {{"atoms", atoms_json(mu.atoms(), "r")}, {"pieces", std::move(pieces)}};
}

Json to_json(const VerticalMeasure& pi) {
  Json pieces = Json::array();
  for (const auto& p : pi.pieces()) {
    pieces.push_back({{"a", number(p.a)}, {"b", number(p.b)}, {"c", number(p.c)}, {"p", number(p.p)}});
  }
  return {{"atoms", atoms_json(pi.atoms(), "y")}, {"pieces", std::move(pieces)}};
}

Json to_json(const LineMeasure& nu) {
  Json pieces = Json::array();
  for (const auto& p : nu.pieces()) {
    pieces.push_back({{"a", number(p.a)}, {"b", number(p.b)}, {"c", number(p.c)}, {"p", number(p.p)}});
  }
  return {{"atoms", atoms_json(nu.atoms(), "t")}, {"pieces", std::move(pieces)}};
}

Json to_json(const CoeffVector& u) {
  Json doc = {{"n_max", u.n_max()}};
  split_complex(u.data(), doc);
  return doc;
}

CoeffVector coeff_vector_from_json(const Json& doc) {
  require_object(doc, "coefficients");
  reject_unknown(doc, {"n_max", "re", "im"}, "coefficients");
  if (!doc.contains("n_max") || !doc.at("n_max").is_number_integer() || doc.at("n_max").get<long long>() < 0) {
    fail("n_max: expected a non-negative integer");
  }
  const int n = doc.at("n_max").get<int>();
  auto values = join_complex(doc);
  if (values.size() != 2 * static_cast<std::size_t>(n) + 1) {
    fail("re: expected " + std::to_string(2 * n + 1) + " entries for n_max = " + std::to_string(n));
  }
  return checked<CoeffVector>([&] { return CoeffVector(n, std::move(values)); });
}

Json to_json(const GridFunction& g) {
  Json doc = {{"m", g.m()}};
  split_complex(g.samples, doc);
  return doc;
}

Json to_json(const BandSignal& g) {
  Json doc = {{"xi_max", number(g.xi_max)}, {"d_xi", number(g.d_xi)}};
  split_complex(g.values, doc);
  return doc;
}

BandSignal band_signal_from_json(const Json& doc) {
  require_object(doc, "signal");
  reject_unknown(doc, {"xi_max", "d_xi", "re", "im"}, "signal");
  const double xi_max = field(doc, "xi_max", "signal");
  const double d_xi = field(doc, "d_xi", "signal");
  auto values = join_complex(doc);
  return checked<BandSignal>([&] { return BandSignal(xi_max, d_xi, std::move(values)); });
}

Json to_json(const NormReport& report) {
  return {{"value", number(report.value)},
          {"method", to_string(report.method)},
          {"est_error", number(report.est_error)}};
}

Json to_json(const CertifiedNorm& norm) {
  return {{"upper", number(norm.upper)},
          {"lower", number(norm.lower)},
          {"gap", number(norm.gap)},
          {"iterations", norm.iterations},
          {"converged", norm.converged},
          {"witness",
           {{"f", to_json(norm.witness.f)}, {"g", to_json(norm.witness.g)}, {"residual", number(norm.witness.residual)}}},
          {"dual_witness", to_json(norm.dual_witness)}};
}

Json to_json(const CarlesonVerdict& verdict) {
  return {{"is_carleson", verdict.is_carleson}, {"sup_ratio", number(verdict.sup_ratio)}};
}

Json to_json(const InequalityReport& report) {
  Json doc = {{"kind", to_string(report.kind)},
              {"seed", report.seed},
              {"corpus_size", report.corpus_size},
              {"n_max", report.n_max},
              {"smoothness", number(report.smoothness)},
              {"max_ratio", number(report.max_ratio)},
              {"max_relative_gap", number(report.max_relative_gap)}};
  doc["constant_reference"] = report.constant_reference ? number(*report.constant_reference) : Json(nullptr);
  doc["ratios"] = number_array(report.ratios);
  doc["ceilings"] = number_array(report.ceilings);
  return doc;
}

Json to_json(const std::vector<FejerRow>& rows) {
  Json list = Json::array();
  for (const auto& r : rows) {
    list.push_back({{"n", r.n},
                    {"h1_norm", number(r.h1_norm)},
                    {"a2_norm_sq", number(r.a2_norm_sq)},
                    {"partial_moment_sum", number(r.partial_moment_sum)}});
  }
  return {{"rows", std::move(list)}};
}

Json to_json(const GarnettReport& report) {
  return {{"poisson_sup", number(report.poisson_sup)},
          {"box_sup", number(report.box_sup)},
          {"poisson_grid_max", number(report.poisson_grid_max)},
          {"box_grid_max", number(report.box_grid_max)},
          {"integrable", report.integrable}};
}

Json to_json(const FourierCheck& check) {
  return {{"max_error", number(check.max_error)},
          {"xi", number_array(check.xi)},
          {"numeric", number_array(check.numeric)},
          {"exact", number_array(check.exact)}};
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

void write_columns(std::ostream& out, std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("write_columns: column lengths differ");
  for (std::size_t i = 0; i < x.size(); ++i) out << format_number(x[i]) << ' ' << format_number(y[i]) << '\n';
}

}  // namespace carleson::io
