#pragma once

#include <string>
#include <vector>

#include "flatsurf/homology.hpp"
#include "flatsurf/surface.hpp"

namespace flatsurf {

// Canonical relabeling: cylinders ordered with nonincreasing bottom sizes, bottoms read as
// consecutive labels, tops rotated to their least rotation; the key is the least such reading.
struct CanonicalDiagram {
  std::vector<int> key;
  CylDiagram diagram;
  bool operator==(const CanonicalDiagram& o) const { return key == o.key; }
  bool operator<(const CanonicalDiagram& o) const { return key < o.key; }
};

// Mirror images. hflip: x -> -x; vflip: y -> -y; rot180 is their composition.
CylDiagram hflip(const CylDiagram& d);
CylDiagram vflip(const CylDiagram& d);
CylDiagram rot180(const CylDiagram& d);

CanonicalDiagram canonicalize(const CylDiagram& d, bool with_reflection = false);
bool isomorphic(const CylDiagram& a, const CylDiagram& b, bool with_reflection = false);

// kappa lists zero orders (0 allowed for marked points); empty kappa means H(0).
// Unsupported for genus > 3. Output sorted by key.
std::vector<CanonicalDiagram> enumerate_cylinder_diagrams(const std::vector<int>& kappa, int r,
                                                          bool with_reflection = false);
std::vector<CanonicalDiagram> enumerate_cylinder_diagrams(const std::vector<int>& kappa,
                                                          bool with_reflection = false);

struct DegenerateSurface {
  struct Part {
    int genus = 0;
    std::vector<int> zeros;        // diagram zero indices
    std::vector<int> zero_orders;  // same order as zeros
    int poles = 0;
  };
  struct Node {
    int cylinder;
    int bottom_part;  // part carrying the bottom boundary of the cylinder
    int top_part;
  };
  std::vector<Part> parts;
  std::vector<Node> nodes;  // nodes[i] belongs to cylinder i

  int genus_sum() const;
  int cycle_rank() const;  // independent cycles of the part/node multigraph
};

DegenerateSurface pinch_all_core_curves(const CylDiagram& d);

enum class ConfigurationLabel { Config1, Config2, Config3, Config4, Config5, Config6, OtherLagrangian, OtherHighDim };
const char* to_string(ConfigurationLabel c);

// NotGenusThree for other genera.
ConfigurationLabel classify_configuration(const CylDiagram& d);
// Census variant: OtherHighDim instead of throwing.
ConfigurationLabel configuration_label(const CylDiagram& d);

enum class Freeness { Free, Undetermined };

struct HomologousPartition {
  std::vector<std::vector<int>> blocks;  // cylinders with equal core class, sorted
  std::vector<Freeness> freeness;        // per cylinder
};
HomologousPartition homologous_partition(const CylDiagram& d);
HomologousPartition homologous_partition(const HomBasis& B, const CylDiagram& d);

}  // namespace flatsurf
