#include "rumkit/io.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace rumkit {

using nlohmann::json;

namespace {

// Collects schema problems so a bad file reports everything at once.
struct SchemaReader {
    std::vector<std::string> errors;

    void fail(const std::string& path, const std::string& what) {
        errors.push_back(path + ": " + what);
    }

    const json* object(const json& j, const std::string& path) {
        if (!j.is_object()) {
            fail(path, "expected an object");
            return nullptr;
        }
        return &j;
    }

    const json* field(const json& j, const std::string& path, const char* key, bool required = true) {
        if (!j.is_object()) return nullptr;
        auto it = j.find(key);
        if (it == j.end()) {
            if (required) fail(path == "$" ? key : path + "." + key, "missing field");
            return nullptr;
        }
        return &*it;
    }

    long long integer(const json& j, const std::string& path, bool* ok = nullptr) {
        if (ok) *ok = true;
        if (j.is_number_integer()) return j.get<long long>();
        fail(path, "expected an integer");
        if (ok) *ok = false;
        return 0;
    }

    double number(const json& j, const std::string& path) {
        if (j.is_number()) return j.get<double>();
        fail(path, "expected a number");
        return 0.0;
    }

    std::string text(const json& j, const std::string& path) {
        if (j.is_string()) return j.get<std::string>();
        fail(path, "expected a string");
        return {};
    }

    std::vector<long long> int_list(const json& j, const std::string& path) {
        std::vector<long long> out;
        if (!j.is_array()) {
            fail(path, "expected an array of integers");
            return out;
        }
        for (size_t i = 0; i < j.size(); ++i)
            out.push_back(integer(j[i], path + "[" + std::to_string(i) + "]"));
        return out;
    }

    Eigen::VectorXd vector(const json& j, const std::string& path) {
        if (!j.is_array()) {
            fail(path, "expected an array of numbers");
            return Eigen::VectorXd();
        }
        Eigen::VectorXd v(j.size());
        for (size_t i = 0; i < j.size(); ++i)
            v(i) = number(j[i], path + "[" + std::to_string(i) + "]");
        return v;
    }

    Eigen::MatrixXd matrix(const json& j, const std::string& path) {
        if (!j.is_array() || j.empty()) {
            fail(path, "expected a non-empty array of rows");
            return Eigen::MatrixXd();
        }
        std::vector<Eigen::VectorXd> rows;
        size_t width = 0;
        for (size_t i = 0; i < j.size(); ++i) {
            rows.push_back(vector(j[i], path + "[" + std::to_string(i) + "]"));
            if (i == 0)
                width = rows[0].size();
            else if (static_cast<size_t>(rows[i].size()) != width)
                fail(path, "rows have inconsistent lengths");
        }
        Eigen::MatrixXd m(rows.size(), width);
        for (size_t i = 0; i < rows.size(); ++i)
            if (static_cast<size_t>(rows[i].size()) == width) m.row(i) = rows[i];
        return m;
    }
};

// Everything extracted from the file before the builders run.
struct ParsedDocument {
    GroupSpec group;
    int dim_x = 0;
    int dim_y = 0;
    Representation rep;
    GainGraph graph;
    PlacementMap placements;
    std::vector<std::string> placement_order;  // vertex orbits that had one
    struct EdgeRecipe {
        ConstraintKind kind;
        double q = 0.0;
        Eigen::MatrixXcd A;
        std::optional<Eigen::MatrixXcd> B;
    };
    std::map<std::string, EdgeRecipe> recipes;
};

ConstraintKind parse_kind(const std::string& name, SchemaReader& r, const std::string& path) {
    if (name == "euclidean") return ConstraintKind::euclidean;
    if (name == "direction") return ConstraintKind::direction;
    if (name == "length") return ConstraintKind::length;
    if (name == "l2q") return ConstraintKind::l2q;
    if (name == "explicit") return ConstraintKind::explicit_blocks;
    r.fail(path, "unknown constraint type '" + name + "'");
    return ConstraintKind::explicit_blocks;
}

ParsedDocument read_document(const json& doc) {
    SchemaReader r;
    ParsedDocument out;

    r.object(doc, "$");
    if (const json* group = r.field(doc, "$", "group")) {
        if (const json* fr = r.field(*group, "group", "free_rank"))
            out.group.free_rank = static_cast<int>(r.integer(*fr, "group.free_rank"));
        if (const json* to = r.field(*group, "group", "torsion"))
            out.group.torsion_orders = r.int_list(*to, "group.torsion");
    }
    if (const json* space = r.field(doc, "$", "space")) {
        if (const json* dx = r.field(*space, "space", "dim_x"))
            out.dim_x = static_cast<int>(r.integer(*dx, "space.dim_x"));
        if (const json* dy = r.field(*space, "space", "dim_y"))
            out.dim_y = static_cast<int>(r.integer(*dy, "space.dim_y"));
    }

    auto read_gens = [&](const json& list, const std::string& path) {
        std::vector<AffineMap> gens;
        if (!list.is_array()) {
            r.fail(path, "expected an array of generators");
            return gens;
        }
        for (size_t i = 0; i < list.size(); ++i) {
            const std::string gpath = path + "[" + std::to_string(i) + "]";
            AffineMap gen;
            if (const json* m = r.field(list[i], gpath, "matrix"))
                gen.linear = r.matrix(*m, gpath + ".matrix");
            if (const json* t = r.field(list[i], gpath, "translation"))
                gen.translation = r.vector(*t, gpath + ".translation");
            gens.push_back(std::move(gen));
        }
        return gens;
    };
    if (const json* rep = r.field(doc, "$", "representation")) {
        if (const json* free = r.field(*rep, "representation", "free"))
            out.rep.free_gens = read_gens(*free, "representation.free");
        if (const json* tor = r.field(*rep, "representation", "torsion"))
            out.rep.torsion_gens = read_gens(*tor, "representation.torsion");
    }
    out.rep.dim = out.dim_x;

    out.graph.group = out.group;
    if (const json* vlist = r.field(doc, "$", "vertex_orbits")) {
        if (!vlist->is_array() || vlist->empty())
            r.fail("vertex_orbits", "expected a non-empty array");
        else {
            for (size_t i = 0; i < vlist->size(); ++i) {
                const std::string vpath = "vertex_orbits[" + std::to_string(i) + "]";
                std::string id;
                if (const json* idf = r.field((*vlist)[i], vpath, "id"))
                    id = r.text(*idf, vpath + ".id");
                out.graph.vertex_orbits.push_back(id);
                if (const json* p = r.field((*vlist)[i], vpath, "placement", false)) {
                    out.placements[id] = r.vector(*p, vpath + ".placement");
                    out.placement_order.push_back(id);
                }
            }
        }
    }

    if (const json* elist = r.field(doc, "$", "edge_orbits")) {
        if (!elist->is_array())
            r.fail("edge_orbits", "expected an array");
        else {
            for (size_t i = 0; i < elist->size(); ++i) {
                const std::string epath = "edge_orbits[" + std::to_string(i) + "]";
                DirectedEdgeOrbit e;
                if (const json* idf = r.field((*elist)[i], epath, "id"))
                    e.id = r.text(*idf, epath + ".id");
                if (const json* t = r.field((*elist)[i], epath, "tail"))
                    e.tail = r.text(*t, epath + ".tail");
                if (const json* h = r.field((*elist)[i], epath, "head"))
                    e.head = r.text(*h, epath + ".head");
                if (const json* gain = r.field((*elist)[i], epath, "gain")) {
                    std::vector<long long> free, torsion;
                    if (const json* f = r.field(*gain, epath + ".gain", "free"))
                        free = r.int_list(*f, epath + ".gain.free");
                    if (const json* to = r.field(*gain, epath + ".gain", "torsion"))
                        torsion = r.int_list(*to, epath + ".gain.torsion");
                    e.gain.free.assign(free.begin(), free.end());
                    e.gain.torsion = torsion;
                }
                ParsedDocument::EdgeRecipe recipe;
                if (const json* c = r.field((*elist)[i], epath, "constraint")) {
                    const std::string cpath = epath + ".constraint";
                    if (const json* ty = r.field(*c, cpath, "type"))
                        recipe.kind = parse_kind(r.text(*ty, cpath + ".type"), r, cpath + ".type");
                    if (recipe.kind == ConstraintKind::l2q) {
                        if (const json* q = r.field(*c, cpath, "q"))
                            recipe.q = r.number(*q, cpath + ".q");
                    }
                    if (recipe.kind == ConstraintKind::explicit_blocks) {
                        if (const json* a = r.field(*c, cpath, "A"))
                            recipe.A = r.matrix(*a, cpath + ".A").cast<std::complex<double>>();
                        if (const json* b = r.field(*c, cpath, "B", false))
                            recipe.B = r.matrix(*b, cpath + ".B").cast<std::complex<double>>();
                    }
                }
                out.recipes[e.id] = std::move(recipe);
                out.graph.edge_orbits.push_back(std::move(e));
            }
        }
    }

    if (!r.errors.empty()) {
        std::string msg = "schema errors:";
        for (const auto& e : r.errors) msg += "\n  " + e;
        throw SchemaError(msg);
    }
    return out;
}

SymmetricFramework build_document(const ParsedDocument& doc) {
    std::vector<std::string> errors;
    try {
        doc.group.validate();
    } catch (const std::exception& e) {
        errors.push_back(e.what());
    }
    if (doc.dim_x <= 0) errors.push_back("space.dim_x must be positive");
    if (doc.dim_y <= 0) errors.push_back("space.dim_y must be positive");
    for (const auto& issue : validate_gain_graph(doc.graph))
        errors.push_back(issue.where + ": " + issue.message);
    for (const auto& issue : validate_representation(doc.group, doc.rep))
        errors.push_back(issue.where + ": " + issue.message);
    if (!errors.empty()) {
        std::string msg = "validation errors:";
        for (const auto& e : errors) msg += "\n  " + e;
        throw FrameworkValidationError(msg);
    }

    // One constraint family per file, except direction/length which may mix.
    bool has_dir_len = false, has_other = false;
    ConstraintKind other_kind = ConstraintKind::euclidean;
    double q = 0.0;
    bool q_seen = false;
    for (const auto& e : doc.graph.edge_orbits) {
        const auto& recipe = doc.recipes.at(e.id);
        if (recipe.kind == ConstraintKind::direction || recipe.kind == ConstraintKind::length) {
            has_dir_len = true;
        } else {
            if (has_other && recipe.kind != other_kind)
                errors.push_back("edge_orbits['" + e.id + "']: constraint families cannot mix");
            has_other = true;
            other_kind = recipe.kind;
        }
        if (recipe.kind == ConstraintKind::l2q) {
            if (q_seen && recipe.q != q)
                errors.push_back("edge_orbits['" + e.id + "']: all l2q edges must share one q");
            q = recipe.q;
            q_seen = true;
        }
    }
    if (has_dir_len && has_other)
        errors.push_back("edge_orbits: direction/length edges cannot mix with other families");
    if (!errors.empty()) {
        std::string msg = "validation errors:";
        for (const auto& e : errors) msg += "\n  " + e;
        throw FrameworkValidationError(msg);
    }

    SymmetricFramework fw;
    try {
        if (doc.graph.edge_orbits.empty()) {
            fw = build_explicit(doc.graph, doc.rep, doc.dim_y, {}, doc.placements);
        } else if (has_dir_len) {
            std::map<std::string, ConstraintKind> kinds;
            for (const auto& e : doc.graph.edge_orbits) kinds[e.id] = doc.recipes.at(e.id).kind;
            fw = build_direction_length(doc.graph, doc.placements, doc.rep, kinds);
        } else {
            switch (other_kind) {
                case ConstraintKind::euclidean:
                    fw = build_euclidean(doc.graph, doc.placements, doc.rep);
                    break;
                case ConstraintKind::l2q:
                    fw = build_l2q(doc.graph, doc.placements, doc.rep, q);
                    break;
                case ConstraintKind::explicit_blocks: {
                    std::map<std::string, ExplicitBlocks> blocks;
                    for (const auto& e : doc.graph.edge_orbits) {
                        const auto& recipe = doc.recipes.at(e.id);
                        blocks[e.id] = {recipe.A, recipe.B};
                    }
                    fw = build_explicit(doc.graph, doc.rep, doc.dim_y, blocks, doc.placements);
                    break;
                }
                default:
                    throw BuildError("unreachable constraint family");
            }
        }
    } catch (const BuildError& e) {
        throw FrameworkValidationError(std::string("validation errors:\n  ") + e.what());
    }

    if (fw.dim_y != doc.dim_y)
        throw FrameworkValidationError(
            "validation errors:\n  space.dim_y does not match the constraint family");
    EquivarianceReport report = validate_equivariance(fw);
    if (!report.ok()) {
        std::string msg = "validation errors:";
        for (const auto& i : report.issues) msg += "\n  " + i.where + ": " + i.message;
        throw FrameworkValidationError(msg);
    }
    return fw;
}

json element_to_json(const GroupElement& g) {
    json out;
    out["free"] = json::array();
    for (const auto& x : g.free) out["free"].push_back(x.convert_to<long long>());
    out["torsion"] = g.torsion;
    return out;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_to_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

}  // namespace

SymmetricFramework parse_framework_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    return build_document(read_document(doc));
}

SymmetricFramework parse_framework_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_framework_text(buffer.str());
}

std::string serialize_framework(const SymmetricFramework& fw) {
    json doc;
    doc["group"]["free_rank"] = fw.graph.group.free_rank;
    doc["group"]["torsion"] = fw.graph.group.torsion_orders;
    doc["space"]["dim_x"] = fw.dim_x;
    doc["space"]["dim_y"] = fw.dim_y;
    doc["representation"]["free"] = json::array();
    for (const auto& g : fw.rep.free_gens)
        doc["representation"]["free"].push_back(
            {{"matrix", matrix_to_json(g.linear)}, {"translation", vector_to_json(g.translation)}});
    doc["representation"]["torsion"] = json::array();
    for (const auto& g : fw.rep.torsion_gens)
        doc["representation"]["torsion"].push_back(
            {{"matrix", matrix_to_json(g.linear)}, {"translation", vector_to_json(g.translation)}});

    doc["vertex_orbits"] = json::array();
    for (size_t v = 0; v < fw.graph.vertex_orbits.size(); ++v) {
        json vj;
        vj["id"] = fw.graph.vertex_orbits[v];
        if (fw.has_placements()) vj["placement"] = vector_to_json(fw.placements[v]);
        doc["vertex_orbits"].push_back(std::move(vj));
    }

    doc["edge_orbits"] = json::array();
    for (size_t e = 0; e < fw.graph.edge_orbits.size(); ++e) {
        const auto& orbit = fw.graph.edge_orbits[e];
        json ej;
        ej["id"] = orbit.id;
        ej["tail"] = orbit.tail;
        ej["head"] = orbit.head;
        ej["gain"] = element_to_json(orbit.gain);
        const ConstraintSpec& recipe = fw.recipes[e];
        json cj;
        cj["type"] = constraint_kind_name(recipe.kind);
        if (recipe.kind == ConstraintKind::l2q) cj["q"] = recipe.q;
        if (recipe.kind == ConstraintKind::explicit_blocks) {
            cj["A"] = matrix_to_json(fw.blocks[e].A.real());
            if (recipe.b_given) cj["B"] = matrix_to_json(fw.blocks[e].B.real());
        }
        ej["constraint"] = std::move(cj);
        doc["edge_orbits"].push_back(std::move(ej));
    }
    return doc.dump(2) + "\n";
}

void write_framework_file(const std::string& path, const SymmetricFramework& fw) {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot write file: " + path);
    out << serialize_framework(fw);
}

Character parse_character(const GroupSpec& spec, const std::string& text) {
    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> parts;
        std::string cur;
        for (char ch : s) {
            if (ch == sep) {
                parts.push_back(cur);
                cur.clear();
            } else if (!std::isspace(static_cast<unsigned char>(ch))) {
                cur += ch;
            }
        }
        parts.push_back(cur);
        if (parts.size() == 1 && parts[0].empty()) parts.clear();
        return parts;
    };

    const size_t semi = text.find(';');
    const std::string free_part = semi == std::string::npos ? text : text.substr(0, semi);
    const std::string torsion_part = semi == std::string::npos ? "" : text.substr(semi + 1);

    Character chi;
    for (const std::string& tok : split(free_part, ',')) {
        const size_t slash = tok.find('/');
        try {
            if (slash != std::string::npos) {
                long long num = std::stoll(tok.substr(0, slash));
                long long den = std::stoll(tok.substr(slash + 1));
                chi.free_turns.push_back(Turn::from_fraction(num, den));
            } else {
                chi.free_turns.push_back(Turn::from_double(std::stod(tok)));
            }
        } catch (const std::exception&) {
            throw SchemaError("character: cannot parse turn '" + tok + "'");
        }
    }
    for (const std::string& tok : split(torsion_part, ',')) {
        try {
            chi.torsion_indices.push_back(std::stoll(tok));
        } catch (const std::exception&) {
            throw SchemaError("character: cannot parse torsion index '" + tok + "'");
        }
    }
    if (!char_conforms(spec, chi))
        throw SchemaError("character '" + text + "' does not match the group (expected " +
                          std::to_string(spec.free_rank) + " turns and " +
                          std::to_string(spec.torsion_orders.size()) + " torsion indices in range)");
    return chi;
}

void write_spectrum_csv(std::ostream& os, const GroupSpec& spec,
                        const std::vector<SpectrumSample>& samples) {
    for (int i = 1; i <= spec.free_rank; ++i) os << "turn_" << i << ",";
    for (size_t j = 1; j <= spec.torsion_orders.size(); ++j) os << "torsion_" << j << ",";
    os << "sigma_min,kernel_dim,in_spectrum\n";
    os.precision(17);
    for (const SpectrumSample& s : samples) {
        for (const Turn& t : s.chi.free_turns) os << t.value << ",";
        for (long long k : s.chi.torsion_indices) os << k << ",";
        os << s.sigma_min << "," << s.kernel_dim << "," << (s.in_spectrum ? 1 : 0) << "\n";
    }
}

void write_flex_json(std::ostream& os, const SymmetricFramework& fw, const FlexField& flex) {
    json out = json::array();
    const int nv = static_cast<int>(fw.graph.vertex_orbits.size());
    for (size_t i = 0; i < flex.values.size(); ++i) {
        const GroupElement& gamma = flex.window.elements()[i / nv];
        json entry;
        entry["gamma"] = element_to_json(gamma);
        entry["orbit"] = fw.graph.vertex_orbits[i % nv];
        json re = json::array(), im = json::array();
        for (int k = 0; k < flex.values[i].size(); ++k) {
            re.push_back(flex.values[i](k).real());
            im.push_back(flex.values[i](k).imag());
        }
        entry["value_re"] = std::move(re);
        entry["value_im"] = std::move(im);
        out.push_back(std::move(entry));
    }
    os << out.dump(2) << "\n";
}

}  // namespace rumkit
