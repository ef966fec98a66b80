#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "flatsurf/homology.hpp"
#include "flatsurf/origami.hpp"

namespace flatsurf {

// Words are strings over T, S and their inverses t, s, applied left to right.
enum class Gen { T = 0, S = 1, Tinv = 2, Sinv = 3 };
char gen_char(Gen g);
Gen gen_of(char c);
Gen gen_inverse(Gen g);
std::string word_inverse(const std::string& w);

Origami sl2z_step(const Origami& o, Gen g);
// Image of a chain on o (edges x_k = 2k, y_k = 2k+1) in the edges of sl2z_step(o, g).
Vec push_chain(const Origami& o, Gen g, const Vec& z);
// L = [[1,0],[1,1]] as a word
inline const char* kLowerWord = "stS";

struct OrbitGraph {
  std::vector<Origami> vertices;                 // canonical forms, vertices[0] the base
  std::vector<std::array<int, 4>> next;          // by Gen
  std::vector<std::array<Perm, 4>> relabel;      // squares of sl2z_step(vertex) -> canonical target
  std::vector<int> parent;                       // BFS tree over T and S edges
  std::vector<std::string> tree_word;            // base -> vertex
  std::vector<std::string> loops;                // one per non-tree T/S edge
  std::unordered_map<std::string, int> index;    // Origami::str() of canonical form -> vertex

  int size() const { return int(vertices.size()); }
  int find(const Origami& canonical) const;
};
OrbitGraph orbit_graph(const Origami& o, std::size_t cap = 200000);

// Walk a word from vertex `from`; pushes columns of chains along, returns the end vertex.
int walk(const OrbitGraph& G, int from, const std::string& word, std::vector<Vec>* chains = nullptr);

// Action of a closed word on H1 of the base, in origami_homology(base) coordinates. Returns the
// pullback: the inverse of the pushforward, so rep(w1 w2) = rep(w1) rep(w2) and T^N acts by
// x -> x + sum k_i <x, c_i> c_i. NotClosed if the word does not return to the base.
Mat homology_action(const OrbitGraph& G, const std::string& word);
Mat homology_action(const OrbitGraph& G, const HomBasis& B, const std::string& word);

// Kernel of the covering map to the torus on H1, columns in absolute coordinates.
Mat nontaut_subspace(const Origami& o);
Mat nontaut_subspace(const HomBasis& B);
// J-orthogonal of the kernel: the rank-2 tautological part.
Mat taut_subspace(const HomBasis& B);

struct MonodromyRep {
  HomBasis basis;
  std::vector<std::string> words;
  std::vector<Mat> matrices;  // 2g x 2g
  Mat K;                      // 2g x (2g-2)
  Mat taut;                   // 2g x 2
  std::vector<Mat> on_K;      // M K = K R
};
MonodromyRep monodromy(const OrbitGraph& G);
// restriction of M to the invariant sublattice with basis columns W; InvariantViolation if not invariant
Mat restrict_to(const Mat& M, const Mat& W);

// Number of eigenvalues on the unit circle, with multiplicity, of an integer matrix whose
// characteristic polynomial is reciprocal; exact via the trace polynomial and Sturm sequences.
int unit_circle_eigenvalues(const Mat& A);
std::vector<BigInt> charpoly(const Mat& A);  // coefficients c_0..c_n, monic

struct ForniCaps {
  std::size_t group_elements = 1000000;
  Int entry_cap = 1000000000000LL;
  int samples = 4096;  // random products tried for a growth witness or the unit-eigenvalue bound
  std::uint64_t seed = 1;
};

enum class ForniCertificateKind { FiniteGroup, UnboundedGrowth, Split, Inconclusive };
const char* to_string(ForniCertificateKind k);

struct ForniReport {
  int dim_lower = 0, dim_upper = 0;
  ForniCertificateKind kind = ForniCertificateKind::Inconclusive;
  std::vector<Mat> generators;  // replay data on the certified lattice
  std::size_t order = 0;        // FiniteGroup
  std::string element_hash;     // FiniteGroup
  std::string witness_word;     // UnboundedGrowth: a word with no unit eigenvalue on K
  std::vector<Int> norm_trace;  // max entry of witness^(2^j)
  Mat subspace;                 // Split: rational invariant sublattice with finite action
  std::vector<std::string> verdicts;
  std::string caps;
};

ForniReport forni_subspace(const Origami& o, const ForniCaps& caps = {});
ForniReport forni_subspace(const OrbitGraph& G, const ForniCaps& caps = {});

// Closure of a matrix group; returns false when more than cap elements or an entry over entry_cap.
struct Closure {
  bool finite = false;
  bool entry_overflow = false;
  std::size_t order = 0;
  std::string hash;
};
Closure close_group(const std::vector<Mat>& gens, std::size_t cap, Int entry_cap);
bool replay(const ForniReport& r);

struct LyapEstimate {
  std::vector<double> exponents;  // top g, normalized by the tautological exponent
  std::vector<double> stderrs;
  double taut_raw = 0;            // raw tautological exponent per continued-fraction digit
  long steps = 0;
  std::uint64_t seed = 0;
  int reortho = 20;
  std::string normalization = "tautological";
};
LyapEstimate lyapunov_estimate(const Origami& o, long steps, std::uint64_t seed, int reortho = 20);

}  // namespace flatsurf
