#include "rumkit/gain_graph.hpp"

#include <set>
#include <stdexcept>

namespace rumkit {

int GainGraph::vertex_index(const std::string& id) const {
    for (size_t i = 0; i < vertex_orbits.size(); ++i)
        if (vertex_orbits[i] == id) return static_cast<int>(i);
    return -1;
}

std::vector<ValidationIssue> validate_gain_graph(const GainGraph& g) {
    std::vector<ValidationIssue> issues;
    try {
        g.group.validate();
    } catch (const std::exception& e) {
        issues.push_back({"group", e.what()});
    }
    if (g.vertex_orbits.empty())
        issues.push_back({"vertex_orbits", "at least one vertex orbit is required"});

    std::set<std::string> seen;
    for (const auto& v : g.vertex_orbits) {
        if (v.empty()) issues.push_back({"vertex_orbits", "empty vertex orbit id"});
        if (!seen.insert(v).second)
            issues.push_back({"vertex_orbits", "duplicate vertex orbit id '" + v + "'"});
    }
    std::set<std::string> eseen;
    for (const auto& e : g.edge_orbits) {
        const std::string where = "edge_orbits['" + e.id + "']";
        if (e.id.empty()) issues.push_back({"edge_orbits", "empty edge orbit id"});
        if (!eseen.insert(e.id).second)
            issues.push_back({where, "duplicate edge orbit id"});
        if (g.vertex_index(e.tail) < 0)
            issues.push_back({where, "dangling endpoint: unknown tail orbit '" + e.tail + "'"});
        if (g.vertex_index(e.head) < 0)
            issues.push_back({where, "dangling endpoint: unknown head orbit '" + e.head + "'"});
        if (static_cast<int>(e.gain.free.size()) != g.group.free_rank ||
            e.gain.torsion.size() != g.group.torsion_orders.size()) {
            issues.push_back({where, "gain does not match the group spec"});
            continue;
        }
        for (size_t j = 0; j < e.gain.torsion.size(); ++j) {
            if (e.gain.torsion[j] < 0 || (j < g.group.torsion_orders.size() &&
                                          e.gain.torsion[j] >= g.group.torsion_orders[j])) {
                issues.push_back({where, "gain torsion coordinate not canonically reduced"});
                break;
            }
        }
        if (e.tail == e.head && elem_is_zero(e.gain))
            issues.push_back({where, "degenerate loop: a loop must carry a nonzero gain"});
    }
    return issues;
}

Window::Window(GroupSpec spec, std::vector<GroupElement> elements)
    : spec_(std::move(spec)), elements_(std::move(elements)) {
    spec_.validate();
    for (size_t i = 0; i < elements_.size(); ++i) {
        GroupElement reduced = make_element(spec_, elements_[i].free, elements_[i].torsion);
        elements_[i] = reduced;
        if (!index_.emplace(reduced, static_cast<int>(i)).second)
            throw std::invalid_argument("window: duplicate element " + elem_to_string(reduced));
    }
}

Window Window::box(const GroupSpec& spec, const std::vector<long long>& radii) {
    spec.validate();
    if (static_cast<int>(radii.size()) != spec.free_rank)
        throw std::invalid_argument("window box: one radius per free axis required");
    for (long long r : radii)
        if (r < 0) throw std::invalid_argument("window box: radii must be non-negative");

    std::vector<GroupElement> elems;
    std::vector<long long> free_idx(spec.free_rank);
    for (int i = 0; i < spec.free_rank; ++i) free_idx[i] = -radii[i];
    const size_t m = spec.torsion_orders.size();
    while (true) {
        std::vector<long long> tor(m, 0);
        while (true) {
            GroupElement e;
            e.free.reserve(spec.free_rank);
            for (long long x : free_idx) e.free.push_back(BigInt(x));
            e.torsion = tor;
            elems.push_back(std::move(e));
            int j = static_cast<int>(m) - 1;
            for (; j >= 0; --j) {
                if (++tor[j] < spec.torsion_orders[j]) break;
                tor[j] = 0;
            }
            if (j < 0) break;
        }
        int a = spec.free_rank - 1;
        for (; a >= 0; --a) {
            if (++free_idx[a] <= radii[a]) break;
            free_idx[a] = -radii[a];
        }
        if (a < 0) break;
    }
    return Window(spec, std::move(elems));
}

Window Window::box(const GroupSpec& spec, long long radius) {
    return box(spec, std::vector<long long>(spec.free_rank, radius));
}

int Window::index_of(const GroupElement& g) const {
    auto it = index_.find(g);
    return it == index_.end() ? -1 : it->second;
}

int CoveringGraph::vertex_index(const GroupElement& gamma, int orbit) const {
    int w = window.index_of(gamma);
    if (w < 0) return -1;
    return w * static_cast<int>(graph.vertex_orbits.size()) + orbit;
}

CoveringGraph expand_window(const GainGraph& g, const Window& w) {
    auto issues = validate_gain_graph(g);
    if (!issues.empty()) {
        std::string msg = "expand_window: invalid gain graph:";
        for (const auto& i : issues) msg += "\n  " + i.where + ": " + i.message;
        throw std::invalid_argument(msg);
    }
    if (!(g.group == w.spec()))
        throw std::invalid_argument("expand_window: window group does not match gain graph group");

    CoveringGraph c;
    c.graph = g;
    c.window = w;
    const int nv = static_cast<int>(g.vertex_orbits.size());
    c.vertices.reserve(static_cast<size_t>(w.size()) * nv);
    for (const GroupElement& gamma : w.elements())
        for (int v = 0; v < nv; ++v) c.vertices.push_back({gamma, v});

    c.edges.reserve(g.edge_orbits.size() * w.elements().size());
    for (size_t e = 0; e < g.edge_orbits.size(); ++e) {
        const DirectedEdgeOrbit& orbit = g.edge_orbits[e];
        const int tail_orbit = g.vertex_index(orbit.tail);
        const int head_orbit = g.vertex_index(orbit.head);
        for (int wi = 0; wi < w.size(); ++wi) {
            const GroupElement& shift = w.elements()[wi];
            GroupElement head_gamma = elem_add(g.group, shift, orbit.gain);
            int head_window = w.index_of(head_gamma);
            CoveringEdge ce;
            ce.orbit = static_cast<int>(e);
            ce.shift = shift;
            ce.head_gamma = std::move(head_gamma);
            ce.tail_vertex = wi * nv + tail_orbit;
            ce.head_vertex = head_window < 0 ? -1 : head_window * nv + head_orbit;
            ce.interior = head_window >= 0;
            c.edges.push_back(std::move(ce));
        }
    }
    return c;
}

int degree_check(const CoveringGraph& c) {
    std::vector<int> degree(c.vertices.size(), 0);
    for (const CoveringEdge& e : c.edges) {
        if (!e.interior) continue;
        ++degree[e.tail_vertex];
        ++degree[e.head_vertex];
    }
    int max_degree = 0;
    for (int d : degree) max_degree = std::max(max_degree, d);
    const int bound = 2 * static_cast<int>(c.graph.edge_orbits.size());
    if (max_degree > bound)
        throw std::logic_error("degree_check: vertex degree exceeds 2|E_0|");
    return max_degree;
}

}  // namespace rumkit
