#include "flatsurf/io.hpp"

#include <fstream>
#include <sstream>

#include "flatsurf/errors.hpp"

namespace flatsurf {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<int> int_array(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) bad(std::string(what) + " must hold integers");
    out.push_back(x.get<int>());
  }
  return out;
}

std::vector<Q> rational_array(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  std::vector<Q> out;
  for (const auto& x : j) {
    if (x.is_string()) out.push_back(parse_rational(x.get<std::string>()));
    else if (x.is_number_integer()) out.push_back(Q(x.get<long long>()));
    else bad(std::string(what) + " must hold rational strings");
  }
  return out;
}

Json rational_json(const std::vector<Q>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(to_string(x));
  return a;
}

ForniCertificateKind kind_of(const std::string& s) {
  for (auto k : {ForniCertificateKind::FiniteGroup, ForniCertificateKind::UnboundedGrowth, ForniCertificateKind::Split,
                 ForniCertificateKind::Inconclusive})
    if (s == to_string(k)) return k;
  bad("unknown certificate kind " + s);
}

}  // namespace

Json to_json(const Origami& o) {
  Json j;
  j["n"] = o.n();
  Json h = Json::array(), v = Json::array();
  for (int k = 0; k < o.n(); ++k) h.push_back(o.h()[k] + 1), v.push_back(o.v()[k] + 1);
  j["h"] = h;
  j["v"] = v;
  return j;
}

Origami origami_from_json(const Json& j) {
  auto h = int_array(field(j, "h"), "h"), v = int_array(field(j, "v"), "v");
  if (j.contains("n") && (!j["n"].is_number_integer() || j["n"].get<int>() != int(h.size())))
    bad("n does not match the permutation length");
  return Origami::from_one_based(h, v);
}

Json to_json(const CylDiagram& d) {
  Json cyls = Json::array();
  for (const auto& c : d.cylinders()) {
    Json b = Json::array(), t = Json::array();
    for (int s : c.bottom) b.push_back(d.names()[s]);
    for (int s : c.top) t.push_back(d.names()[s]);
    cyls.push_back(Json{{"bottom", b}, {"top", t}});
  }
  return Json{{"cylinders", cyls}};
}

CylDiagram diagram_from_json(const Json& j) {
  const auto& cs = field(j, "cylinders");
  if (!cs.is_array()) bad("cylinders must be an array");
  std::vector<Cylinder> cyls;
  for (const auto& c : cs) cyls.push_back({int_array(field(c, "bottom"), "bottom"), int_array(field(c, "top"), "top")});
  return CylDiagram::make(cyls);
}

Json to_json(const CylSurface& m) {
  Json j = to_json(m.diagram());
  j["lengths"] = rational_json(m.lengths());
  j["heights"] = rational_json(m.heights());
  j["twists"] = rational_json(m.twists());
  return j;
}

CylSurface surface_from_json(const Json& j) {
  return CylSurface::make(diagram_from_json(j), rational_array(field(j, "lengths"), "lengths"),
                          rational_array(field(j, "heights"), "heights"), rational_array(field(j, "twists"), "twists"));
}

Json to_json(const Mat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(r);
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", rows}};
}

Mat mat_from_json(const Json& j) {
  int r = field(j, "rows").get<int>(), c = field(j, "cols").get<int>();
  Mat m(r, c);
  const auto& d = field(j, "data");
  if (!d.is_array() || int(d.size()) != r) bad("matrix row count");
  for (int i = 0; i < r; ++i) {
    if (!d[i].is_array() || int(d[i].size()) != c) bad("matrix column count");
    for (int k = 0; k < c; ++k) m(i, k) = d[i][k].get<Int>();
  }
  return m;
}

Json to_json(const ForniReport& r) {
  Json j;
  j["dim_lower"] = r.dim_lower;
  j["dim_upper"] = r.dim_upper;
  j["certificate"] = to_string(r.kind);
  j["order"] = r.order;
  j["element_hash"] = r.element_hash;
  j["witness_word"] = r.witness_word;
  j["norm_trace"] = r.norm_trace;
  Json gens = Json::array();
  for (const auto& g : r.generators) gens.push_back(to_json(g));
  j["generators"] = gens;
  j["subspace"] = to_json(r.subspace);
  j["verdicts"] = r.verdicts;
  j["caps"] = r.caps;
  return j;
}

ForniReport forni_report_from_json(const Json& j) {
  ForniReport r;
  r.dim_lower = field(j, "dim_lower").get<int>();
  r.dim_upper = field(j, "dim_upper").get<int>();
  r.kind = kind_of(field(j, "certificate").get<std::string>());
  r.order = field(j, "order").get<std::size_t>();
  r.element_hash = field(j, "element_hash").get<std::string>();
  r.witness_word = field(j, "witness_word").get<std::string>();
  r.norm_trace = field(j, "norm_trace").get<std::vector<Int>>();
  for (const auto& g : field(j, "generators")) r.generators.push_back(mat_from_json(g));
  r.subspace = mat_from_json(field(j, "subspace"));
  r.verdicts = field(j, "verdicts").get<std::vector<std::string>>();
  r.caps = field(j, "caps").get<std::string>();
  return r;
}

Json to_json(const LyapEstimate& e) {
  Json j;
  j["exponents"] = e.exponents;
  j["stderrs"] = e.stderrs;
  j["taut_raw"] = e.taut_raw;
  j["steps"] = e.steps;
  j["seed"] = e.seed;
  j["reortho"] = e.reortho;
  j["normalization"] = e.normalization;
  return j;
}

namespace {

LyapEstimate lyap_from_json(const Json& j) {
  LyapEstimate e;
  e.exponents = field(j, "exponents").get<std::vector<double>>();
  e.stderrs = field(j, "stderrs").get<std::vector<double>>();
  e.taut_raw = field(j, "taut_raw").get<double>();
  e.steps = field(j, "steps").get<long>();
  e.seed = field(j, "seed").get<std::uint64_t>();
  e.reortho = field(j, "reortho").get<int>();
  e.normalization = field(j, "normalization").get<std::string>();
  return e;
}

}  // namespace

Json to_json(const CensusRecord& r) {
  Json j;
  j["origami"] = to_json(r.form);
  j["n"] = r.n;
  j["stratum"] = stratum_string(r.stratum);
  j["orbit_size"] = r.orbit_size;
  j["forni"] = to_json(r.forni);
  j["horizontal_spans"] = r.horizontal_spans;
  if (r.lyapunov) j["lyapunov"] = to_json(*r.lyapunov);
  return j;
}

CensusRecord census_record_from_json(const Json& j) {
  CensusRecord r;
  r.form = origami_from_json(field(j, "origami"));
  r.n = field(j, "n").get<int>();
  r.stratum = parse_stratum(field(j, "stratum").get<std::string>());
  r.orbit_size = field(j, "orbit_size").get<int>();
  r.forni = forni_report_from_json(field(j, "forni"));
  r.horizontal_spans = field(j, "horizontal_spans").get<std::vector<int>>();
  if (j.contains("lyapunov")) r.lyapunov = lyap_from_json(j["lyapunov"]);
  return r;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    bad(path + ": " + e.what());
  }
}

std::string stratum_string(const std::vector<int>& kappa) {
  std::string s = "H(";
  for (size_t i = 0; i < kappa.size(); ++i) s += (i ? "," : "") + std::to_string(kappa[i]);
  if (kappa.empty()) s += "0";
  return s + ")";
}

std::vector<int> parse_stratum(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s.push_back(c);
  if (s.rfind("H", 0) == 0) s = s.substr(1);
  if (!s.empty() && s.front() == '(') {
    if (s.back() != ')') bad("unbalanced stratum " + text);
    s = s.substr(1, s.size() - 2);
  }
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) bad("bad stratum " + text);
    int k = std::stoi(tok);
    if (k > 0) out.push_back(k);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

}  // namespace flatsurf
