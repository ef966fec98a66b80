#include "flatsurf/pipeline.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include "flatsurf/errors.hpp"

namespace fs = std::filesystem;

namespace flatsurf {

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorKind::ConfigError, what); }

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep))
    if (!trim(tok).empty()) out.push_back(trim(tok));
  return out;
}

long long parse_int(const std::string& key, const std::string& v) {
  try {
    size_t used = 0;
    long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    config_error(key + ": expected an integer, got '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  config_error(key + ": expected true or false, got '" + v + "'");
}

const std::vector<std::string> kStages{"enumerate", "census", "diagrams", "reports"};

void write_file(const fs::path& p, const std::string& data) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::ConfigError, "cannot write " + p.string());
  out << data;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

PipelineConfig parse_config(const std::string& text) {
  PipelineConfig c;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  std::map<std::string, std::string> seen;
  while (std::getline(ss, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) config_error("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (seen.count(key)) config_error("duplicate key " + key);
    seen[key] = val;
    auto& cs = c.census;
    try {
      if (key == "stages") {
        c.stages = split(val, ',');
        for (const auto& s : c.stages)
          if (std::find(kStages.begin(), kStages.end(), s) == kStages.end()) config_error("unknown stage " + s);
      } else if (key == "n_min") cs.n_min = int(parse_int(key, val));
      else if (key == "n_max") cs.n_max = int(parse_int(key, val));
      else if (key == "n_cap") cs.n_cap = int(parse_int(key, val));
      else if (key == "stratum") cs.stratum = parse_stratum(val);
      else if (key == "genus") cs.genus = int(parse_int(key, val));
      else if (key == "seed") cs.seed = std::uint64_t(parse_int(key, val)), cs.caps.seed = cs.seed;
      else if (key == "group_elements") cs.caps.group_elements = std::size_t(parse_int(key, val));
      else if (key == "entry_cap") cs.caps.entry_cap = parse_int(key, val);
      else if (key == "samples") cs.caps.samples = int(parse_int(key, val));
      else if (key == "lyapunov") cs.lyapunov = parse_bool(key, val);
      else if (key == "lyap_steps") cs.lyap_steps = long(parse_int(key, val));
      else if (key == "jobs") cs.jobs = int(parse_int(key, val));
      else if (key == "span_samples") cs.span_samples = int(parse_int(key, val));
      else if (key == "diagram_strata") {
        c.diagram_strata.clear();
        for (const auto& s : split(val, ';')) c.diagram_strata.push_back(parse_stratum(s));
      } else if (key == "reflection") c.reflection = parse_bool(key, val);
      else if (key == "output_dir") c.output_dir = val;
      else config_error("unknown key " + key);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ConfigError) throw;
      config_error(key + ": " + e.what());
    }
  }
  // stages run in pipeline order whatever order they were listed in
  std::vector<std::string> ordered;
  for (const auto& s : kStages)
    if (std::count(c.stages.begin(), c.stages.end(), s)) ordered.push_back(s);
  if (ordered.size() != c.stages.size()) config_error("repeated stage");
  c.stages = ordered;
  if (c.census.n_min < 1 || c.census.n_max < c.census.n_min) config_error("need 1 <= n_min <= n_max");
  if (c.census.n_max > c.census.n_cap) config_error("n_max exceeds n_cap");
  if (c.census.jobs < 1) config_error("jobs must be positive");
  if (c.output_dir.empty()) config_error("output_dir is empty");
  return c;
}

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string canonical_config(const PipelineConfig& c) {
  const auto& cs = c.census;
  std::ostringstream os;
  os << "stages=";
  for (size_t i = 0; i < c.stages.size(); ++i) os << (i ? "," : "") << c.stages[i];
  os << "\nn_min=" << cs.n_min << "\nn_max=" << cs.n_max << "\nn_cap=" << cs.n_cap;
  os << "\nstratum=" << (cs.stratum ? stratum_string(*cs.stratum) : std::string("genus ") + std::to_string(cs.genus));
  os << "\nseed=" << cs.seed << "\ngroup_elements=" << cs.caps.group_elements << "\nentry_cap=" << cs.caps.entry_cap;
  os << "\nsamples=" << cs.caps.samples << "\nlyapunov=" << cs.lyapunov << "\nlyap_steps=" << cs.lyap_steps;
  os << "\nspan_samples=" << cs.span_samples << "\ndiagram_strata=";
  for (size_t i = 0; i < c.diagram_strata.size(); ++i) os << (i ? ";" : "") << stratum_string(c.diagram_strata[i]);
  os << "\nreflection=" << c.reflection << "\n";
  return os.str();
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  EVP_DigestUpdate(ctx, data.data(), data.size());
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

std::string sha256_file(const std::string& path) { return sha256_hex(read_file(path)); }

Json RunManifest::to_json() const {
  Json j;
  j["code_version"] = code_version;
  j["config"] = config;
  j["input_hash"] = input_hash;
  Json outs = Json::object();
  for (const auto& [k, v] : outputs) outs[k] = v;
  j["outputs"] = outs;
  j["complete"] = complete;
  return j;
}

namespace {

struct Unit {
  std::string name;
  // writes its part files into dir, returns their names
  std::function<std::vector<std::string>(const fs::path& dir)> run;
};

std::string census_csv_line(const CensusLevel& L) {
  long nontrivial = 0, inconclusive = 0;
  for (const auto& r : L.records) {
    nontrivial += r.forni.dim_lower > 0;
    inconclusive += r.forni.dim_lower < r.forni.dim_upper || r.forni.kind == ForniCertificateKind::Inconclusive;
  }
  return std::to_string(L.n) + "," + std::to_string(L.classes) + "," + std::to_string(L.orbits) + "," +
         std::to_string(nontrivial) + "," + std::to_string(inconclusive) + "\n";
}

std::string stratum_file_tag(const std::vector<int>& k) {
  std::string s = "H";
  for (int x : k) s += "_" + std::to_string(x);
  return s;
}

}  // namespace

RunManifest run_pipeline(const PipelineConfig& config, const RunControl& control) {
  RunManifest man;
  man.code_version = kCodeVersion;
  const std::string canon = canonical_config(config);
  man.input_hash = sha256_hex(canon);
  man.config = Json::object();
  for (const auto& line : split(canon, '\n')) {
    auto eq = line.find('=');
    man.config[line.substr(0, eq)] = line.substr(eq + 1);
  }
  man.config["output_dir"] = config.output_dir;

  const fs::path out(config.output_dir), parts = out / "parts";
  fs::create_directories(out);
  auto has = [&](const char* s) { return std::count(config.stages.begin(), config.stages.end(), s) > 0; };

  std::vector<Unit> units;
  const auto& cs = config.census;
  if (has("enumerate"))
    for (int n = cs.n_min; n <= cs.n_max; ++n)
      units.push_back({"enumerate n=" + std::to_string(n), [&, n](const fs::path& dir) {
                         EnumerateOptions eo;
                         eo.n = n;
                         eo.n_cap = cs.n_cap;
                         eo.stratum = cs.stratum;
                         if (!cs.stratum) eo.genus = cs.genus;
                         long classes = 0, rooted = 0, symmetric = 0;
                         enumerate_origamis(eo, [&](const Origami&, int a) {
                           ++classes;
                           rooted += n / a;
                           symmetric += a > 1;
                         });
                         std::string f = "enumerate_n" + std::to_string(n) + ".csv";
                         write_file(dir / f, std::to_string(n) + "," + std::to_string(classes) + "," +
                                                 std::to_string(rooted) + "," + std::to_string(symmetric) + "\n");
                         return std::vector<std::string>{f};
                       }});
  if (has("census"))
    for (int n = cs.n_min; n <= cs.n_max; ++n)
      units.push_back({"census n=" + std::to_string(n), [&, n](const fs::path& dir) {
                         auto L = census_level(n, cs);
                         std::string lines;
                         for (const auto& r : L.records) lines += to_json(r).dump() + "\n";
                         std::string f = "census_n" + std::to_string(n) + ".jsonl";
                         std::string g = "census_n" + std::to_string(n) + ".csv";
                         write_file(dir / f, lines);
                         write_file(dir / g, census_csv_line(L));
                         return std::vector<std::string>{f, g};
                       }});
  if (has("diagrams"))
    for (const auto& k : config.diagram_strata)
      units.push_back({"diagrams " + stratum_string(k), [&, k](const fs::path& dir) {
                         auto D = diagram_census(k, config.reflection);
                         std::string lines, rows;
                         for (const auto& e : D.entries) {
                           Json j = to_json(e.diagram.diagram);
                           j["stratum"] = stratum_string(k);
                           j["r"] = e.diagram.diagram.r();
                           j["span"] = e.span;
                           j["configuration"] = to_string(e.label);
                           j["parts_genus_sum"] = e.parts_genus_sum;
                           lines += j.dump() + "\n";
                         }
                         for (const auto& r : D.rows)
                           rows += stratum_string(k) + "," + std::to_string(r.r) + "," + to_string(r.label) + "," +
                                   std::to_string(r.count) + "\n";
                         std::string f = "diagrams_" + stratum_file_tag(k) + ".jsonl";
                         std::string g = "diagrams_" + stratum_file_tag(k) + ".csv";
                         write_file(dir / f, lines);
                         write_file(dir / g, rows);
                         return std::vector<std::string>{f, g};
                       }});

  if (!units.empty()) {
    fs::create_directories(parts);
    const fs::path ck = out / "checkpoint.jsonl";
    std::map<std::string, Json> done;
    if (fs::exists(ck)) {
      std::ifstream in(ck);
      std::string line;
      bool header = true;
      while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        Json j;
        try {
          j = Json::parse(line);
        } catch (const nlohmann::json::exception&) {
          break;  // torn final line from an interrupted write
        }
        if (header) {
          if (j.value("input_hash", "") != man.input_hash)
            throw Error(ErrorKind::ResumeMismatch, "checkpoint in " + out.string() + " was written for another config");
          header = false;
          continue;
        }
        done[j.at("unit").get<std::string>()] = j.at("files");
      }
      if (header) write_file(ck, Json{{"input_hash", man.input_hash}}.dump() + "\n");
    } else {
      write_file(ck, Json{{"input_hash", man.input_hash}}.dump() + "\n");
    }
    for (const auto& u : units) {
      auto it = done.find(u.name);
      if (it != done.end()) {
        for (const auto& [f, h] : it->second.items())
          if (!fs::exists(parts / f) || sha256_file((parts / f).string()) != h.get<std::string>())
            throw Error(ErrorKind::ResumeMismatch, "unit file " + f + " differs from its checkpoint");
        ++man.units_resumed;
        continue;
      }
      if (control.max_units && man.units_run >= *control.max_units) return man;
      auto files = u.run(parts);
      Json rec{{"unit", u.name}, {"files", Json::object()}};
      for (const auto& f : files) rec["files"][f] = sha256_file((parts / f).string());
      std::ofstream app(ck, std::ios::app);
      app << rec.dump() << "\n";
      app.flush();
      ++man.units_run;
    }
  }

  // assemble the artifacts from the unit files, in plan order
  std::map<std::string, std::string> artifacts;
  auto cat = [&](const std::string& prefix, const std::string& ext) {
    std::string s;
    if (prefix == "diagrams_") {
      for (const auto& k : config.diagram_strata) s += read_file(parts / (prefix + stratum_file_tag(k) + ext));
    } else {
      for (int n = cs.n_min; n <= cs.n_max; ++n) s += read_file(parts / (prefix + std::to_string(n) + ext));
    }
    return s;
  };
  if (has("enumerate")) artifacts["enumeration.csv"] = "n,classes,rooted,with_automorphisms\n" + cat("enumerate_n", ".csv");
  if (has("census")) {
    artifacts["census.jsonl"] = cat("census_n", ".jsonl");
    artifacts["census.csv"] = "n,classes,orbits,nontrivial,inconclusive\n" + cat("census_n", ".csv");
    std::string inc;
    for (const auto& line : split(artifacts["census.jsonl"], '\n')) {
      auto r = census_record_from_json(Json::parse(line));
      if (r.forni.dim_lower < r.forni.dim_upper || r.forni.kind == ForniCertificateKind::Inconclusive) {
        inc += line + "\n";
        ++man.inconclusive;
      }
    }
    artifacts["inconclusive.jsonl"] = inc;
  }
  if (has("diagrams")) {
    artifacts["diagrams.jsonl"] = cat("diagrams_", ".jsonl");
    artifacts["diagrams.csv"] = "stratum,r,configuration,count\n" + cat("diagrams_", ".csv");
  }
  if (has("reports")) {
    Json rep;
    rep["code_version"] = kCodeVersion;
    if (has("census")) {
      Json nontrivial = Json::array(), inconclusive = Json::array(), levels = Json::array();
      for (const auto& line : split(artifacts["census.jsonl"], '\n')) {
        auto r = census_record_from_json(Json::parse(line));
        Json s{{"origami", to_json(r.form)},     {"n", r.n},
               {"stratum", stratum_string(r.stratum)}, {"orbit_size", r.orbit_size},
               {"dim_lower", r.forni.dim_lower}, {"dim_upper", r.forni.dim_upper},
               {"certificate", to_string(r.forni.kind)}};
        if (r.forni.dim_lower > 0) nontrivial.push_back(s);
        if (r.forni.dim_lower < r.forni.dim_upper || r.forni.kind == ForniCertificateKind::Inconclusive)
          inconclusive.push_back(s);
      }
      for (const auto& line : split(cat("census_n", ".csv"), '\n')) {
        auto f = split(line, ',');
        levels.push_back(Json{{"n", std::stoi(f[0])}, {"conjugation_classes", std::stol(f[1])}, {"orbits", std::stol(f[2])}});
      }
      rep["nontrivial"] = nontrivial;
      rep["inconclusive"] = inconclusive;
      rep["levels"] = levels;
    }
    if (has("diagrams")) {
      Json totals = Json::object();
      for (const auto& k : config.diagram_strata) {
        long c = long(split(read_file(parts / ("diagrams_" + stratum_file_tag(k) + ".jsonl")), '\n').size());
        totals[stratum_string(k)] = c;
      }
      rep["diagram_totals"] = totals;
    }
    artifacts["report.json"] = rep.dump(2) + "\n";
  }
  for (const auto& [name, data] : artifacts) {
    write_file(out / name, data);
    man.outputs[name] = sha256_hex(data);
  }
  man.complete = true;
  write_file(out / "manifest.json", man.to_json().dump(2) + "\n");
  return man;
}

}  // namespace flatsurf
