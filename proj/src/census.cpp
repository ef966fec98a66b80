#include "flatsurf/census.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_set>

#include "flatsurf/errors.hpp"
#include "flatsurf/homology.hpp"
#include "flatsurf/surface.hpp"

namespace flatsurf {

namespace {

struct Generator {
  int n;
  std::vector<int> h, v;
  std::vector<char> hused, vused;
  std::vector<int> seq, label, order;
  std::vector<int> hinv, vinv, comm;
  std::vector<char> seen;
  int count = 1;
  const EnumerateOptions& opt;
  const std::function<void(const Origami&, int)>& emit;

  Generator(const EnumerateOptions& o, const std::function<void(const Origami&, int)>& e)
      : n(o.n), h(n, -1), v(n, -1), hused(n, 0), vused(n, 0), seq(2 * n), label(n), order(n), hinv(n), vinv(n),
        comm(n), seen(n), opt(o), emit(e) {}

  void rec(int pos) {
    if (pos == 2 * n) {
      if (count == n) leaf();
      return;
    }
    const int i = pos / 2;
    if (i >= count) return;  // squares 0..count-1 are closed: disconnected
    auto& img = pos % 2 ? v : h;
    auto& used = pos % 2 ? vused : hused;
    for (int t = 0; t < count; ++t) {
      if (used[t]) continue;
      img[i] = t, used[t] = 1;
      rec(pos + 1);
      used[t] = 0;
    }
    if (count < n) {
      int t = count++;
      img[i] = t, used[t] = 1;
      rec(pos + 1);
      used[t] = 0;
      --count;
    }
    img[i] = -1;
  }

  bool stratum_ok() {
    for (int k = 0; k < n; ++k) hinv[h[k]] = k, vinv[v[k]] = k;
    // cycle type of the commutator: one cycle per vertex, of length (order + 1)
    std::vector<int> orders;
    std::fill(seen.begin(), seen.end(), 0);
    int vertices = 0;
    for (int k = 0; k < n; ++k) {
      if (seen[k]) continue;
      ++vertices;
      int len = 0;
      for (int x = k; !seen[x]; x = vinv[hinv[v[h[x]]]]) seen[x] = 1, ++len;
      if (len > 1) orders.push_back(len - 1);
    }
    int genus = (2 - vertices + n) / 2;
    if (opt.genus && genus != *opt.genus) return false;
    if (opt.stratum) {
      std::sort(orders.rbegin(), orders.rend());
      if (orders != *opt.stratum) return false;
    }
    return true;
  }

  // -1: basepoint b reads smaller, 0 equal, 1 larger
  int compare_from(int b) {
    std::fill(label.begin(), label.end(), -1);
    int next = 1;
    label[b] = 0;
    order[0] = b;
    for (int i = 0; i < n; ++i) {
      int s = order[i];
      for (int w = 0; w < 2; ++w) {
        int t = w ? v[s] : h[s];
        if (label[t] < 0) label[t] = next, order[next++] = t;
        int x = label[t], y = w ? v[i] : h[i];
        if (x != y) return x < y ? -1 : 1;
      }
    }
    return 0;
  }

  void leaf() {
    if (!stratum_ok()) return;
    int autos = 1;
    for (int b = 1; b < n; ++b) {
      int c = compare_from(b);
      if (c < 0) return;
      if (c == 0) ++autos;
    }
    emit(Origami::make(h, v), autos);
  }
};

using Key = unsigned __int128;

Key pack(const Origami& o) {
  Key k = 0;
  for (int x : o.h()) k = (k << 4) | Key(x);
  for (int x : o.v()) k = (k << 4) | Key(x);
  return k;
}

struct KeyHash {
  std::size_t operator()(Key k) const {
    std::uint64_t lo = std::uint64_t(k), hi = std::uint64_t(k >> 64);
    return std::size_t(lo * 0x9E3779B97F4A7C15ULL ^ (hi + 0x632BE59BD9B4E019ULL + (lo << 6)));
  }
};

bool form_less(const Origami& a, const Origami& b) {
  if (a.h() != b.h()) return a.h() < b.h();
  return a.v() < b.v();
}

}  // namespace

void enumerate_origamis(const EnumerateOptions& opt, const std::function<void(const Origami&, int)>& emit) {
  if (opt.n < 1) throw Error(ErrorKind::DomainError, "n must be positive");
  if (opt.n > opt.n_cap) throw Error(ErrorKind::CapExceeded, "n = " + std::to_string(opt.n) + " exceeds the cap " + std::to_string(opt.n_cap));
  if (opt.n > 15) throw Error(ErrorKind::CapExceeded, "n > 15 is not supported");
  Generator g(opt, emit);
  g.rec(0);
}

std::vector<Origami> enumerate_origamis(const EnumerateOptions& opt) {
  std::vector<Origami> out;
  enumerate_origamis(opt, [&](const Origami& o, int) { out.push_back(o); });
  return out;
}

CensusLevel census_level(int n, const CensusOptions& opt) {
  CensusLevel level;
  level.n = n;
  EnumerateOptions eo;
  eo.n = n;
  eo.n_cap = opt.n_cap;
  eo.stratum = opt.stratum;
  if (!opt.stratum) eo.genus = opt.genus;
  std::vector<Origami> forms;
  enumerate_origamis(eo, [&](const Origami& o, int) { forms.push_back(o); });
  level.classes = long(forms.size());

  // orbit representatives; graphs are rebuilt by the workers
  std::unordered_set<Key, KeyHash> visited;
  std::vector<Origami> reps;
  std::vector<int> sizes;
  for (const auto& f : forms) {
    if (visited.count(pack(f))) continue;
    auto G = orbit_graph(f);
    Origami best = G.vertices[0];
    for (const auto& x : G.vertices) {
      visited.insert(pack(x));
      if (form_less(x, best)) best = x;
    }
    reps.push_back(best);
    sizes.push_back(G.size());
  }
  level.orbits = long(reps.size());
  level.records.resize(reps.size());

  std::atomic<size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto work = [&]() {
    for (;;) {
      size_t i = next++;
      if (i >= reps.size()) return;
      try {
        auto t0 = std::chrono::steady_clock::now();
        auto G = orbit_graph(reps[i]);
        CensusRecord rec;
        rec.form = reps[i];
        rec.n = n;
        rec.stratum = singularity_data(reps[i]).stratum;
        rec.orbit_size = G.size();
        rec.forni = forni_subspace(G, opt.caps);
        const int g = singularity_data(reps[i]).genus;
        // Forni criterion: every periodic direction with span d bounds the dimension by 2(g - d)
        int step = std::max(1, G.size() / std::max(1, opt.span_samples));
        for (int u = 0; u < G.size(); u += step)
          for (const auto& o : {G.vertices[u], sl2z_step(G.vertices[u], Gen::S)}) {
            int d = core_curve_span(horizontal_cylinders(o).diagram()).dimension;
            rec.horizontal_spans.push_back(d);
            if (rec.forni.dim_lower > forni_dim_bound(d, g))
              throw Error(ErrorKind::InvariantViolation, "Forni lower bound " + std::to_string(rec.forni.dim_lower) +
                                                             " exceeds 2(g - d) for " + o.str());
          }
        if (opt.lyapunov) rec.lyapunov = lyapunov_estimate(reps[i], opt.lyap_steps, opt.seed);
        rec.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        level.records[i] = std::move(rec);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
        next = reps.size();
      }
    }
  };
  const int jobs = std::max(1, opt.jobs);
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (err) std::rethrow_exception(err);
  std::sort(level.records.begin(), level.records.end(),
            [](const CensusRecord& a, const CensusRecord& b) { return form_less(a.form, b.form); });
  return level;
}

void collect(CensusResult& res, const CensusLevel& level) {
  for (const auto& r : level.records) {
    if (r.forni.dim_lower > 0) res.nontrivial.push_back(r);
    if (r.forni.dim_lower < r.forni.dim_upper || r.forni.kind == ForniCertificateKind::Inconclusive)
      res.inconclusive.push_back(r);
  }
  res.levels.push_back(level);
}

CensusResult zero_forni_census(const CensusOptions& opt, const std::function<void(const CensusLevel&)>& on_level) {
  if (opt.n_max > opt.n_cap) throw Error(ErrorKind::CapExceeded, "n_max = " + std::to_string(opt.n_max) + " exceeds the cap " + std::to_string(opt.n_cap));
  CensusResult res;
  for (int n = std::max(1, opt.n_min); n <= opt.n_max; ++n) {
    auto level = census_level(n, opt);
    collect(res, level);
    if (on_level) on_level(level);
  }
  return res;
}

long DiagramCensus::count(int r) const {
  long c = 0;
  for (const auto& e : entries) c += e.diagram.diagram.r() == r;
  return c;
}

long DiagramCensus::count(ConfigurationLabel l) const {
  long c = 0;
  for (const auto& e : entries) c += e.label == l;
  return c;
}

DiagramCensus diagram_census(const std::vector<int>& stratum, bool reflection) {
  DiagramCensus out;
  out.stratum = stratum;
  out.reflection = reflection;
  std::map<std::pair<int, int>, long> rows;
  for (const auto& cd : enumerate_cylinder_diagrams(stratum, reflection)) {
    DiagramCensusEntry e;
    e.diagram = cd;
    const auto& d = cd.diagram;
    e.span = core_curve_span(d).dimension;
    e.label = configuration_label(d);
    auto pinched = pinch_all_core_curves(d);
    e.parts_genus_sum = pinched.genus_sum();
    if (e.span != d.genus() - e.parts_genus_sum)
      throw Error(ErrorKind::InvariantViolation, "span != g - sum g_i on " + d.str());
    for (const auto& p : pinched.parts) {
      int zeros = 0;
      for (int k : p.zero_orders) zeros += k;
      if (zeros - p.poles != 2 * p.genus - 2) throw Error(ErrorKind::InvariantViolation, "part order count on " + d.str());
    }
    ++rows[{d.r(), int(e.label)}];
    out.entries.push_back(std::move(e));
  }
  for (const auto& [k, c] : rows) out.rows.push_back({k.first, ConfigurationLabel(k.second), c});
  return out;
}

}  // namespace flatsurf
