#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "flatsurf/diagrams.hpp"
#include "flatsurf/kz_monodromy.hpp"
#include "flatsurf/origami.hpp"

namespace flatsurf {

struct EnumerateOptions {
  int n = 1;
  std::optional<std::vector<int>> stratum;  // nonincreasing zero orders
  std::optional<int> genus;
  int n_cap = 10;
};

// Connected origamis with n squares up to simultaneous conjugation, each in canonical form
// (the least BFS reading over all basepoints) together with its automorphism count. Squares
// are generated in BFS order from square 0, so connectivity is built in; the canonical check
// keeps one representative per class. CapExceeded when n > n_cap.
void enumerate_origamis(const EnumerateOptions& opt, const std::function<void(const Origami&, int)>& emit);
std::vector<Origami> enumerate_origamis(const EnumerateOptions& opt);

struct CensusRecord {
  Origami form;  // least canonical form in the SL(2,Z) orbit
  int n = 0;
  std::vector<int> stratum;
  int orbit_size = 0;
  ForniReport forni;
  std::optional<LyapEstimate> lyapunov;
  std::vector<int> horizontal_spans;  // core-curve span dimension of each orbit vertex examined
  double millis = 0;
};

struct CensusOptions {
  int n_min = 1;
  int n_max = 8;
  std::optional<std::vector<int>> stratum;  // default: every genus-3 stratum
  int genus = 3;
  int n_cap = 10;
  ForniCaps caps;
  bool lyapunov = false;
  long lyap_steps = 100000;
  std::uint64_t seed = 1;
  int jobs = 1;
  int span_samples = 8;  // orbit vertices whose horizontal direction is checked against the bound
};

struct CensusLevel {
  int n = 0;
  long classes = 0;  // conjugation classes in the filter
  long orbits = 0;
  std::vector<CensusRecord> records;  // one per orbit, sorted by form
};

struct CensusResult {
  std::vector<CensusLevel> levels;
  std::vector<CensusRecord> nontrivial;    // certified dim_lower > 0
  std::vector<CensusRecord> inconclusive;  // lower < upper
};

// One level of the census: every orbit of connected origamis with n squares in the filter.
// InvariantViolation when a Forni bound is contradicted by a periodic direction.
CensusLevel census_level(int n, const CensusOptions& opt);
CensusResult zero_forni_census(const CensusOptions& opt,
                               const std::function<void(const CensusLevel&)>& on_level = nullptr);
void collect(CensusResult& res, const CensusLevel& level);

struct DiagramCensusRow {
  int r = 0;
  ConfigurationLabel label = ConfigurationLabel::OtherHighDim;
  long count = 0;
};
struct DiagramCensusEntry {
  CanonicalDiagram diagram;
  int span = 0;
  ConfigurationLabel label = ConfigurationLabel::OtherHighDim;
  int parts_genus_sum = 0;
};
struct DiagramCensus {
  std::vector<int> stratum;
  bool reflection = false;
  std::vector<DiagramCensusEntry> entries;
  std::vector<DiagramCensusRow> rows;  // by (r, label)
  long total() const { return long(entries.size()); }
  long count(int r) const;
  long count(ConfigurationLabel l) const;
};
// Unsupported for genus > 3. Checks span = g - sum of part genera on every entry.
DiagramCensus diagram_census(const std::vector<int>& stratum, bool reflection);

}  // namespace flatsurf
