#include "rumkit/representation.hpp"

#include <sstream>
#include <stdexcept>

namespace rumkit {

AffineMap AffineMap::identity(int dim) {
    return {Eigen::MatrixXd::Identity(dim, dim), Eigen::VectorXd::Zero(dim)};
}

Eigen::VectorXd AffineMap::apply(const Eigen::VectorXd& x) const {
    return linear * x + translation;
}

AffineMap AffineMap::compose(const AffineMap& other) const {
    return {linear * other.linear, linear * other.translation + translation};
}

AffineMap AffineMap::inverse() const {
    Eigen::MatrixXd qt = linear.transpose();
    return {qt, -(qt * translation)};
}

AffineMap AffineMap::pow(const BigInt& e) const {
    AffineMap base = e < 0 ? inverse() : *this;
    BigInt n = e < 0 ? BigInt(-e) : e;
    AffineMap acc = identity(static_cast<int>(linear.rows()));
    while (n > 0) {
        if ((n & 1) != 0) acc = acc.compose(base);
        base = base.compose(base);
        n >>= 1;
    }
    return acc;
}

AffineMap Representation::tau(const GroupSpec& spec, const GroupElement& gamma) const {
    if (static_cast<int>(free_gens.size()) != spec.free_rank ||
        torsion_gens.size() != spec.torsion_orders.size())
        throw std::invalid_argument("representation does not match the group spec");
    AffineMap acc = AffineMap::identity(dim);
    for (size_t i = 0; i < free_gens.size(); ++i)
        acc = acc.compose(free_gens[i].pow(gamma.free[i]));
    for (size_t j = 0; j < torsion_gens.size(); ++j)
        acc = acc.compose(torsion_gens[j].pow(BigInt(gamma.torsion[j])));
    return acc;
}

Eigen::MatrixXd Representation::dtau(const GroupSpec& spec, const GroupElement& gamma) const {
    return tau(spec, gamma).linear;
}

std::vector<ValidationIssue> validate_representation(const GroupSpec& spec, const Representation& rep) {
    std::vector<ValidationIssue> issues;
    if (rep.dim <= 0) {
        issues.push_back({"representation", "dimension must be positive"});
        return issues;
    }
    if (static_cast<int>(rep.free_gens.size()) != spec.free_rank)
        issues.push_back({"representation.free", "expected one generator per free coordinate"});
    if (rep.torsion_gens.size() != spec.torsion_orders.size())
        issues.push_back({"representation.torsion", "expected one generator per torsion coordinate"});
    if (!issues.empty()) return issues;

    auto gen_name = [](bool torsion, size_t k) {
        std::ostringstream os;
        os << "representation." << (torsion ? "torsion" : "free") << "[" << k << "]";
        return os.str();
    };
    std::vector<AffineMap> all;
    std::vector<std::string> names;
    for (size_t i = 0; i < rep.free_gens.size(); ++i) {
        all.push_back(rep.free_gens[i]);
        names.push_back(gen_name(false, i));
    }
    for (size_t j = 0; j < rep.torsion_gens.size(); ++j) {
        all.push_back(rep.torsion_gens[j]);
        names.push_back(gen_name(true, j));
    }

    for (size_t k = 0; k < all.size(); ++k) {
        const AffineMap& g = all[k];
        if (g.linear.rows() != rep.dim || g.linear.cols() != rep.dim ||
            g.translation.size() != rep.dim) {
            issues.push_back({names[k], "generator dimensions do not match the space"});
            continue;
        }
        double dev = (g.linear.transpose() * g.linear - Eigen::MatrixXd::Identity(rep.dim, rep.dim))
                         .cwiseAbs()
                         .maxCoeff();
        if (dev > 1e-12) {
            std::ostringstream os;
            os << "generator is not orthogonal (deviation " << dev << ")";
            issues.push_back({names[k], os.str()});
        }
    }
    if (!issues.empty()) return issues;

    for (size_t j = 0; j < rep.torsion_gens.size(); ++j) {
        AffineMap p = rep.torsion_gens[j].pow(BigInt(spec.torsion_orders[j]));
        double dev = std::max(
            (p.linear - Eigen::MatrixXd::Identity(rep.dim, rep.dim)).cwiseAbs().maxCoeff(),
            p.translation.cwiseAbs().maxCoeff());
        if (dev > 1e-10) {
            std::ostringstream os;
            os << "generator order does not divide " << spec.torsion_orders[j]
               << " (deviation " << dev << ")";
            issues.push_back({gen_name(true, j), os.str()});
        }
    }
    for (size_t a = 0; a < all.size(); ++a) {
        for (size_t b = a + 1; b < all.size(); ++b) {
            AffineMap ab = all[a].compose(all[b]);
            AffineMap ba = all[b].compose(all[a]);
            double dev = std::max((ab.linear - ba.linear).cwiseAbs().maxCoeff(),
                                  (ab.translation - ba.translation).cwiseAbs().maxCoeff());
            if (dev > 1e-10) {
                std::ostringstream os;
                os << "does not commute with " << names[b] << " (deviation " << dev << ")";
                issues.push_back({names[a], os.str()});
            }
        }
    }
    return issues;
}

}  // namespace rumkit
