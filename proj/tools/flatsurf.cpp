#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "flatsurf/census.hpp"
#include "flatsurf/errors.hpp"
#include "flatsurf/io.hpp"
#include "flatsurf/pipeline.hpp"
#include "flatsurf/rel_deform.hpp"

using namespace flatsurf;

namespace {

constexpr int kInconclusive = 2;
constexpr int kInvariant = 3;

std::vector<int> parse_subset(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

Json collapse_json(const CollapseEvent& e, const CylSurface& m) {
  auto c = classify_collapse(e, m);
  Json v = Json::array();
  for (const auto& s : e.vanishing)
    v.push_back(Json{{"cylinder", s.cylinder}, {"x", to_string(s.x)}, {"bottom_zero", s.bottom_zero}, {"top_zero", s.top_zero}});
  return Json{{"u", to_string(e.u)},
              {"cylinders", e.cylinders},
              {"vanishing", v},
              {"kind", to_string(c.kind)},
              {"target_stratum", c.kind == CollapseKind::LowerStratumSameGenus ? stratum_string(c.target_stratum) : ""},
              {"reason", c.reason}};
}

// One command per line: twist t..., stretch s... until U, horocycle T [cyls], diagonal F [cyls],
// collapse cyls. Rationals as p/q; a collapse ends the script.
Json run_deform(CylSurface m, std::istream& script) {
  Json steps = Json::array();
  Json out;
  std::string line;
  while (std::getline(script, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::stringstream ss(line);
    std::string cmd;
    if (!(ss >> cmd)) continue;
    std::vector<std::string> args;
    for (std::string a; ss >> a;) args.push_back(a);
    Json step{{"command", line}};
    if (cmd == "twist") {
      std::vector<Q> t;
      for (const auto& a : args) t.push_back(parse_rational(a));
      m = apply_rel_twist(m, t);
    } else if (cmd == "stretch") {
      auto until = std::find(args.begin(), args.end(), "until");
      if (until == args.end() || until + 1 == args.end()) throw Error(ErrorKind::ParseError, "stretch needs 'until U'");
      std::vector<Q> s;
      for (auto it = args.begin(); it != until; ++it) s.push_back(parse_rational(*it));
      auto r = rel_stretch_path(m, s, parse_rational(*(until + 1)));
      if (r.collapsed) {
        step["collapse"] = collapse_json(r.event, m);
        steps.push_back(step);
        out["collapse"] = step["collapse"];
        break;
      }
      m = r.surface;
    } else if (cmd == "horocycle" || cmd == "diagonal") {
      if (args.empty()) throw Error(ErrorKind::ParseError, cmd + " needs a parameter");
      MatrixAction a;
      a.op = cmd == "horocycle" ? MatrixOp::Horocycle : MatrixOp::Diagonal;
      a.param = parse_rational(args[0]);
      if (args.size() > 1) a.subset = parse_subset(args[1]);
      m = apply_matrix(m, a);
    } else if (cmd == "collapse") {
      if (args.empty()) throw Error(ErrorKind::ParseError, "collapse needs cylinders");
      auto e = class_collapse(m, parse_subset(args[0]));
      step["collapse"] = collapse_json(e, m);
      steps.push_back(step);
      out["collapse"] = step["collapse"];
      break;
    } else {
      throw Error(ErrorKind::ParseError, "unknown command " + cmd);
    }
    step["surface"] = to_json(m);
    steps.push_back(step);
  }
  out["steps"] = steps;
  out["surface"] = to_json(m);
  return out;
}

Json classify_json(const CylDiagram& d) {
  Json j = to_json(d);
  j["stratum"] = stratum_string(d.stratum());
  j["genus"] = d.genus();
  j["r"] = d.r();
  j["span"] = core_curve_span(d).dimension;
  j["configuration"] = to_string(configuration_label(d));
  auto p = pinch_all_core_curves(d);
  Json parts = Json::array();
  for (const auto& part : p.parts) parts.push_back(Json{{"genus", part.genus}, {"zero_orders", part.zero_orders}, {"poles", part.poles}});
  j["parts"] = parts;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cylinder diagrams, origamis and the Kontsevich-Zorich cocycle"};
  app.require_subcommand(1);

  auto* census = app.add_subcommand("census", "origami and cylinder-diagram censuses");
  census->require_subcommand(1);
  auto* origamis = census->add_subcommand("origamis", "zero-Forni census of connected origamis");
  CensusOptions co;
  std::string stratum_text, out_dir;
  bool per_orbit_lyap = false;
  origamis->add_option("--n-max", co.n_max, "largest square count")->required();
  origamis->add_option("--n-min", co.n_min, "smallest square count");
  origamis->add_option("--stratum", stratum_text, "stratum, e.g. H(1,1,1,1); default every genus-3 stratum");
  origamis->add_flag("--lyapunov", per_orbit_lyap, "estimate exponents for every orbit");
  origamis->add_option("--lyap-steps", co.lyap_steps, "continued-fraction digits per estimate");
  origamis->add_option("--jobs", co.jobs, "worker threads");
  origamis->add_option("--n-cap", co.n_cap, "raise the square-count cap (default 10)");
  origamis->add_option("--seed", co.seed, "seed for sampling and Lyapunov runs");

  auto* diagrams = census->add_subcommand("diagrams", "cylinder-diagram census of a stratum");
  std::string dstratum, csv_path;
  bool reflection = false;
  diagrams->add_option("--stratum", dstratum, "stratum, e.g. H(1,1,1,1)")->required();
  diagrams->add_flag("--reflection", reflection, "identify mirror images");
  diagrams->add_option("--csv", csv_path, "write the per-(r, configuration) summary here");

  auto* classify = app.add_subcommand("classify", "span, pinching and configuration of a diagram");
  std::string diagram_file;
  classify->add_option("--diagram", diagram_file, "CylDiagram JSON file")->required();

  auto* forni = app.add_subcommand("forni", "certified Forni-subspace dimension of an origami");
  std::string origami_file;
  ForniCaps caps;
  forni->add_option("--origami", origami_file, "origami JSON file")->required();
  forni->add_option("--group-elements", caps.group_elements, "group closure cap");
  forni->add_option("--entry-cap", caps.entry_cap, "matrix entry cap");
  forni->add_option("--samples", caps.samples, "random products tried");
  forni->add_option("--seed", caps.seed, "sampling seed");

  auto* lyap = app.add_subcommand("lyapunov", "Monte-Carlo Lyapunov exponents of an origami");
  long steps = 1000000;
  std::uint64_t seed = 1;
  int reortho = 20;
  lyap->add_option("--origami", origami_file, "origami JSON file")->required();
  lyap->add_option("--steps", steps, "continued-fraction digits")->required();
  lyap->add_option("--seed", seed, "seed")->required();
  lyap->add_option("--reortho", reortho, "re-orthonormalization period");

  auto* deform = app.add_subcommand("deform", "apply a REL / matrix script to a surface");
  std::string surface_file, script_file;
  deform->add_option("--surface", surface_file, "CylSurface JSON file")->required();
  deform->add_option("--script", script_file, "deformation script")->required();

  auto* run = app.add_subcommand("run", "run a configured pipeline with checkpoints");
  std::string config_file;
  run->add_option("--config", config_file, "key = value config file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*origamis) {
      if (!stratum_text.empty()) co.stratum = parse_stratum(stratum_text);
      co.lyapunov = per_orbit_lyap;
      co.caps.seed = co.seed;
      long inconclusive = 0;
      zero_forni_census(co, [&](const CensusLevel& L) {
        for (const auto& r : L.records) {
          std::cout << to_json(r).dump() << "\n";
          inconclusive += r.forni.dim_lower < r.forni.dim_upper || r.forni.kind == ForniCertificateKind::Inconclusive;
        }
        std::cerr << "n=" << L.n << " classes=" << L.classes << " orbits=" << L.orbits << "\n";
      });
      return inconclusive ? kInconclusive : 0;
    }
    if (*diagrams) {
      auto D = diagram_census(parse_stratum(dstratum), reflection);
      for (const auto& e : D.entries) {
        Json j = classify_json(e.diagram.diagram);
        std::cout << j.dump() << "\n";
      }
      std::ostringstream csv;
      csv << "stratum,r,configuration,count\n";
      for (const auto& r : D.rows) csv << stratum_string(D.stratum) << "," << r.r << "," << to_string(r.label) << "," << r.count << "\n";
      if (!csv_path.empty()) {
        std::ofstream(csv_path) << csv.str();
      } else {
        std::cerr << csv.str();
      }
      std::cerr << "total " << D.total() << "\n";
      return 0;
    }
    if (*classify) {
      std::cout << classify_json(diagram_from_json(read_json_file(diagram_file))).dump(2) << "\n";
      return 0;
    }
    if (*forni) {
      auto r = forni_subspace(origami_from_json(read_json_file(origami_file)), caps);
      std::cout << to_json(r).dump(2) << "\n";
      return r.kind == ForniCertificateKind::Inconclusive ? kInconclusive : 0;
    }
    if (*lyap) {
      std::cout << to_json(lyapunov_estimate(origami_from_json(read_json_file(origami_file)), steps, seed, reortho)).dump(2)
                << "\n";
      return 0;
    }
    if (*deform) {
      std::ifstream script(script_file);
      if (!script) throw Error(ErrorKind::ParseError, "cannot open " + script_file);
      std::cout << run_deform(surface_from_json(read_json_file(surface_file)), script).dump(2) << "\n";
      return 0;
    }
    if (*run) {
      auto m = run_pipeline(load_config(config_file));
      std::cout << m.to_json().dump(2) << "\n";
      return m.inconclusive ? kInconclusive : 0;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.kind() == ErrorKind::InvariantViolation ? kInvariant : 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
