#pragma once

#include <map>
#include <string>
#include <vector>

#include "rumkit/group.hpp"

namespace rumkit {

// One violation found by a validator; `where` names the offending object.
struct ValidationIssue {
    std::string where;
    std::string message;
};

// Directed edge orbit [e] = ([tail] -> [head]) with gain psi. Loops and
// parallel edges are allowed; a loop with gain 0 would name the degenerate
// edge vv and is rejected by validation.
struct DirectedEdgeOrbit {
    std::string id;
    std::string tail;
    std::string head;
    GroupElement gain;
};

struct GainGraph {
    GroupSpec group;
    std::vector<std::string> vertex_orbits;  // ordered; ids unique
    std::vector<DirectedEdgeOrbit> edge_orbits;

    int vertex_index(const std::string& id) const;  // -1 if unknown
};

// Reports every violation, never throws on malformed input.
std::vector<ValidationIssue> validate_gain_graph(const GainGraph& g);

// Finite truncation domain: a list of distinct group elements with a fixed
// order and O(log) membership lookup. Boxes iterate free axis 0 slowest,
// -R..R per axis, with all torsion combinations innermost.
class Window {
  public:
    Window() = default;
    Window(GroupSpec spec, std::vector<GroupElement> elements);  // validates distinctness
    static Window box(const GroupSpec& spec, const std::vector<long long>& radii);
    static Window box(const GroupSpec& spec, long long radius);  // same radius every free axis

    const GroupSpec& spec() const { return spec_; }
    const std::vector<GroupElement>& elements() const { return elements_; }
    int size() const { return static_cast<int>(elements_.size()); }
    // Index of the element in the window order, -1 if absent.
    int index_of(const GroupElement& g) const;
    bool contains(const GroupElement& g) const { return index_of(g) >= 0; }

  private:
    GroupSpec spec_;
    std::vector<GroupElement> elements_;
    std::map<GroupElement, int, ElemLess> index_;
};

// Vertex (gamma, [v]) of the covering graph; orbit indexes gain graph order.
struct CoveringVertex {
    GroupElement gamma;
    int orbit;
};

// The gamma' instance of an edge orbit: runs from (gamma', [tail]) to
// (gamma' + psi, [head]). Interior iff the head lands inside the window
// (tails always do by construction). Exterior heads are kept, flagged.
struct CoveringEdge {
    int orbit;
    GroupElement shift;       // gamma'
    GroupElement head_gamma;  // gamma' + psi
    int tail_vertex;          // index into CoveringGraph::vertices
    int head_vertex;          // -1 when exterior
    bool interior;
};

struct CoveringGraph {
    GainGraph graph;
    Window window;
    std::vector<CoveringVertex> vertices;  // window-major, then orbit
    std::vector<CoveringEdge> edges;       // edge-orbit-major, then window order

    int vertex_index(const GroupElement& gamma, int orbit) const;
};

// Expands the gain graph over the window. Throws if the gain graph is invalid.
CoveringGraph expand_window(const GainGraph& g, const Window& w);

// Maximum vertex degree counting interior edges only. Throws std::logic_error
// if the Lemma bound 2|E_0| is ever exceeded (cannot happen for a free action).
int degree_check(const CoveringGraph& c);

}  // namespace rumkit
