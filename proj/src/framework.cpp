#include "rumkit/framework.hpp"

#include <cmath>
#include <sstream>

namespace rumkit {

const char* constraint_kind_name(ConstraintKind k) {
    switch (k) {
        case ConstraintKind::euclidean: return "euclidean";
        case ConstraintKind::direction: return "direction";
        case ConstraintKind::length: return "length";
        case ConstraintKind::l2q: return "l2q";
        case ConstraintKind::explicit_blocks: return "explicit";
    }
    return "?";
}

namespace {

void require_valid_inputs(const GainGraph& g, const Representation& rep) {
    auto issues = validate_gain_graph(g);
    auto rep_issues = validate_representation(g.group, rep);
    issues.insert(issues.end(), rep_issues.begin(), rep_issues.end());
    if (!issues.empty()) {
        std::string msg = "invalid framework inputs:";
        for (const auto& i : issues) msg += "\n  " + i.where + ": " + i.message;
        throw BuildError(msg);
    }
}

const Eigen::VectorXd& placement_of(const PlacementMap& placements, const std::string& id, int dim) {
    auto it = placements.find(id);
    if (it == placements.end())
        throw BuildError("missing placement for vertex orbit '" + id + "'");
    if (it->second.size() != dim)
        throw BuildError("placement for vertex orbit '" + id + "' has wrong dimension");
    return it->second;
}

// p_tail - tau(gain) p_head for one orbit.
Eigen::VectorXd edge_vector(const GainGraph& g, const PlacementMap& placements,
                            const Representation& rep, const DirectedEdgeOrbit& e) {
    const Eigen::VectorXd& pt = placement_of(placements, e.tail, rep.dim);
    const Eigen::VectorXd& ph = placement_of(placements, e.head, rep.dim);
    return pt - rep.tau(g.group, e.gain).apply(ph);
}

SymmetricFramework skeleton(const GainGraph& g, const Representation& rep, int dim_y,
                            const PlacementMap& placements) {
    SymmetricFramework fw;
    fw.graph = g;
    fw.dim_x = rep.dim;
    fw.dim_y = dim_y;
    fw.rep = rep;
    fw.blocks.resize(g.edge_orbits.size());
    fw.recipes.resize(g.edge_orbits.size());
    if (!placements.empty()) {
        fw.placements.reserve(g.vertex_orbits.size());
        for (const auto& v : g.vertex_orbits)
            fw.placements.push_back(placement_of(placements, v, rep.dim));
    }
    return fw;
}

Eigen::MatrixXcd derive_b(const Eigen::MatrixXcd& a, const GainGraph& g, const Representation& rep,
                          const GroupElement& gain) {
    return -(a * rep.dtau(g.group, gain).cast<std::complex<double>>());
}

}  // namespace

SymmetricFramework build_euclidean(const GainGraph& g, const PlacementMap& placements,
                                   const Representation& rep) {
    require_valid_inputs(g, rep);
    SymmetricFramework fw = skeleton(g, rep, 1, placements);
    for (size_t e = 0; e < g.edge_orbits.size(); ++e) {
        const auto& orbit = g.edge_orbits[e];
        Eigen::VectorXd ev = edge_vector(g, placements, rep, orbit);
        if (ev.norm() < 1e-12)
            throw BuildError("degenerate edge: zero bar on orbit '" + orbit.id + "'");
        fw.blocks[e].A = ev.transpose().cast<std::complex<double>>();
        fw.blocks[e].B = derive_b(fw.blocks[e].A, g, rep, orbit.gain);
        fw.recipes[e] = {ConstraintKind::euclidean, 0.0, false};
    }
    return fw;
}

SymmetricFramework build_direction_length(const GainGraph& g, const PlacementMap& placements,
                                          const Representation& rep,
                                          const std::map<std::string, ConstraintKind>& edge_kinds) {
    require_valid_inputs(g, rep);
    const int d = rep.dim;
    if (d < 2) throw BuildError("direction-length frameworks need dimension >= 2");
    SymmetricFramework fw = skeleton(g, rep, d - 1, placements);
    for (size_t e = 0; e < g.edge_orbits.size(); ++e) {
        const auto& orbit = g.edge_orbits[e];
        auto kind_it = edge_kinds.find(orbit.id);
        if (kind_it == edge_kinds.end() || (kind_it->second != ConstraintKind::direction &&
                                            kind_it->second != ConstraintKind::length))
            throw BuildError("orbit '" + orbit.id + "' needs a direction or length kind");
        Eigen::VectorXd ev = edge_vector(g, placements, rep, orbit);
        if (ev.norm() < 1e-12)
            throw BuildError("degenerate edge: zero segment on orbit '" + orbit.id + "'");

        Eigen::MatrixXd a(d - 1, d);
        if (kind_it->second == ConstraintKind::length) {
            for (int r = 0; r < d - 1; ++r) a.row(r) = ev.transpose();
        } else if (d == 2) {
            a(0, 0) = -ev(1);
            a(0, 1) = ev(0);
        } else {
            // Orthonormal complement of the edge direction: drop the standard
            // basis vector most aligned with it, Gram-Schmidt the rest in order.
            Eigen::VectorXd u = ev.normalized();
            int drop = 0;
            for (int i = 1; i < d; ++i)
                if (std::abs(u(i)) > std::abs(u(drop))) drop = i;
            int r = 0;
            std::vector<Eigen::VectorXd> rows;
            for (int i = 0; i < d; ++i) {
                if (i == drop) continue;
                Eigen::VectorXd w = Eigen::VectorXd::Unit(d, i);
                w -= u.dot(w) * u;
                for (const auto& prev : rows) w -= prev.dot(w) * prev;
                w.normalize();
                rows.push_back(w);
                a.row(r++) = w.transpose();
            }
        }
        fw.blocks[e].A = a.cast<std::complex<double>>();
        fw.blocks[e].B = derive_b(fw.blocks[e].A, g, rep, orbit.gain);
        fw.recipes[e] = {kind_it->second, 0.0, false};
    }
    return fw;
}

double l2q_norm(const Eigen::Vector3d& v, double q) {
    return std::pow(std::pow(std::hypot(v(0), v(1)), q) + std::pow(std::abs(v(2)), q), 1.0 / q);
}

namespace {

// Gradient row of the (2,q)-norm at a smooth point (x,y,z).
Eigen::RowVector3d l2q_row(const Eigen::Vector3d& ev, double q) {
    const double x = ev(0), y = ev(1), z = ev(2);
    const double d = std::hypot(x, y);
    const double scale = std::pow(std::pow(d, q) + std::pow(std::abs(z), q), 1.0 / q - 1.0);
    Eigen::RowVector3d row = Eigen::RowVector3d::Zero();
    if (d > 0.0) {
        const double dq2 = std::pow(d, q - 2.0);
        row(0) = dq2 * x;
        row(1) = dq2 * y;
    }
    if (z != 0.0) {
        row(2) = (z > 0 ? 1.0 : -1.0) * std::pow(std::abs(z), q - 1.0);
    }
    return scale * row;
}

}  // namespace

SymmetricFramework build_l2q(const GainGraph& g, const PlacementMap& placements,
                             const Representation& rep, double q) {
    require_valid_inputs(g, rep);
    if (rep.dim != 3) throw BuildError("l2q frameworks are three-dimensional");
    if (!(q > 1.0)) throw BuildError("l2q exponent must be > 1");
    SymmetricFramework fw = skeleton(g, rep, 1, placements);
    for (size_t e = 0; e < g.edge_orbits.size(); ++e) {
        const auto& orbit = g.edge_orbits[e];
        Eigen::VectorXd evd = edge_vector(g, placements, rep, orbit);
        Eigen::Vector3d ev = evd;
        if (ev.norm() < 1e-12)
            throw BuildError("degenerate edge: zero segment on orbit '" + orbit.id + "'");
        if (q < 2.0 && std::hypot(ev(0), ev(1)) < 1e-12)
            throw BuildError("non-smooth point: orbit '" + orbit.id +
                             "' lies on the z-axis with q < 2");
        fw.blocks[e].A = l2q_row(ev, q).cast<std::complex<double>>();
        fw.blocks[e].B = derive_b(fw.blocks[e].A, g, rep, orbit.gain);
        fw.recipes[e] = {ConstraintKind::l2q, q, false};
    }
    return fw;
}

SymmetricFramework build_explicit(const GainGraph& g, const Representation& rep, int dim_y,
                                  const std::map<std::string, ExplicitBlocks>& blocks,
                                  const PlacementMap& placements) {
    require_valid_inputs(g, rep);
    if (dim_y <= 0) throw BuildError("dim_y must be positive");
    SymmetricFramework fw = skeleton(g, rep, dim_y, placements);
    for (size_t e = 0; e < g.edge_orbits.size(); ++e) {
        const auto& orbit = g.edge_orbits[e];
        auto it = blocks.find(orbit.id);
        if (it == blocks.end()) throw BuildError("missing blocks for orbit '" + orbit.id + "'");
        const ExplicitBlocks& eb = it->second;
        if (eb.A.rows() != dim_y || eb.A.cols() != rep.dim)
            throw BuildError("block A for orbit '" + orbit.id + "' must be dim_y x dim_x");
        fw.blocks[e].A = eb.A;
        if (eb.B) {
            if (eb.B->rows() != dim_y || eb.B->cols() != rep.dim)
                throw BuildError("block B for orbit '" + orbit.id + "' must be dim_y x dim_x");
            fw.blocks[e].B = *eb.B;
        } else {
            fw.blocks[e].B = derive_b(fw.blocks[e].A, g, rep, orbit.gain);
        }
        fw.recipes[e] = {ConstraintKind::explicit_blocks, 0.0, eb.B.has_value()};
    }
    return fw;
}

EquivarianceReport validate_equivariance(const SymmetricFramework& fw) {
    EquivarianceReport report;
    auto rep_issues = validate_representation(fw.graph.group, fw.rep);
    report.issues.insert(report.issues.end(), rep_issues.begin(), rep_issues.end());

    for (size_t e = 0; e < fw.graph.edge_orbits.size(); ++e) {
        const auto& orbit = fw.graph.edge_orbits[e];
        const std::string where = "edge_orbits['" + orbit.id + "']";
        Eigen::MatrixXcd expected =
            -(fw.blocks[e].A * fw.rep.dtau(fw.graph.group, orbit.gain).cast<std::complex<double>>());
        double dev = (fw.blocks[e].B - expected).cwiseAbs().maxCoeff();
        report.max_deviation = std::max(report.max_deviation, dev);
        if (dev > 1e-10) {
            std::ostringstream os;
            os << "B != -A*dtau(gain), deviation " << dev;
            report.issues.push_back({where, os.str()});
        }
    }

    // Placement-built recipes: rebuild A from the stored geometry and compare.
    if (fw.has_placements()) {
        PlacementMap pm;
        for (size_t v = 0; v < fw.graph.vertex_orbits.size(); ++v)
            pm[fw.graph.vertex_orbits[v]] = fw.placements[v];
        for (size_t e = 0; e < fw.graph.edge_orbits.size(); ++e) {
            if (fw.recipes[e].kind == ConstraintKind::explicit_blocks) continue;
            const auto& orbit = fw.graph.edge_orbits[e];
            GainGraph sub;
            sub.group = fw.graph.group;
            sub.vertex_orbits = fw.graph.vertex_orbits;
            sub.edge_orbits = {orbit};
            SymmetricFramework rebuilt;
            try {
                switch (fw.recipes[e].kind) {
                    case ConstraintKind::euclidean:
                        rebuilt = build_euclidean(sub, pm, fw.rep);
                        break;
                    case ConstraintKind::direction:
                    case ConstraintKind::length:
                        rebuilt = build_direction_length(sub, pm, fw.rep,
                                                         {{orbit.id, fw.recipes[e].kind}});
                        break;
                    case ConstraintKind::l2q:
                        rebuilt = build_l2q(sub, pm, fw.rep, fw.recipes[e].q);
                        break;
                    default:
                        continue;
                }
            } catch (const BuildError& err) {
                report.issues.push_back({"edge_orbits['" + orbit.id + "']", err.what()});
                continue;
            }
            double dev = (rebuilt.blocks[0].A - fw.blocks[e].A).cwiseAbs().maxCoeff();
            report.max_deviation = std::max(report.max_deviation, dev);
            if (dev > 1e-10) {
                std::ostringstream os;
                os << "stored A disagrees with a rebuild from placements, deviation " << dev;
                report.issues.push_back({"edge_orbits['" + orbit.id + "']", os.str()});
            }
        }
    }
    return report;
}

double directional_derivative_oracle(const Eigen::Vector3d& edge_vector, const Eigen::Vector3d& x,
                                     double q, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("directional derivative: step must be positive");
    return (l2q_norm(edge_vector + step * x, q) - l2q_norm(edge_vector - step * x, q)) / (2.0 * step);
}

}  // namespace rumkit
