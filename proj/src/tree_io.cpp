#include "blaine/tree_io.hpp"

#include <algorithm>
#include <fstream>

namespace blaine {

using nlohmann::json;

namespace {

const json& field(const json& obj, const std::string& key, const std::string& ptr) {
    if (!obj.contains(key)) throw SchemaError(ptr, "missing key \"" + key + "\"");
    return obj.at(key);
}

int as_int(const json& j, const std::string& ptr) {
    if (!j.is_number_integer()) throw SchemaError(ptr, "expected an integer");
    return j.get<int>();
}

const json& as_array(const json& j, const std::string& ptr) {
    if (!j.is_array()) throw SchemaError(ptr, "expected an array");
    return j;
}

const json& as_object(const json& j, const std::string& ptr) {
    if (!j.is_object()) throw SchemaError(ptr, "expected an object");
    return j;
}

}  // namespace

json label_to_json(const FaceLabel& l) {
    if (l.kind == FaceLabel::Kind::zero) return "0";
    if (l.kind == FaceLabel::Kind::infinity) return "inf";
    return json{{"re", l.value.real()}, {"im", l.value.imag()}};
}

FaceLabel label_from_json(const json& j, const std::string& ptr) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "0") return FaceLabel::zero();
        if (s == "inf") return FaceLabel::infinity();
        throw SchemaError(ptr, "label string must be \"0\" or \"inf\"");
    }
    as_object(j, ptr);
    const auto& re = field(j, "re", ptr);
    const auto& im = field(j, "im", ptr);
    if (!re.is_number()) throw SchemaError(ptr + "/re", "expected a number");
    if (!im.is_number()) throw SchemaError(ptr + "/im", "expected a number");
    const cplx v{re.get<double>(), im.get<double>()};
    if (v == cplx{0.0, 0.0}) throw SchemaError(ptr, "numeric label must be nonzero; use \"0\"");
    return FaceLabel::of(v);
}

json tree_to_json(const LabeledTree& tree) {
    json out;
    auto vs = tree.vertices;
    std::sort(vs.begin(), vs.end(), [](auto& a, auto& b) { return a.id < b.id; });
    out["vertices"] = json::array();
    for (const auto& v : vs)
        out["vertices"].push_back({{"id", v.id}, {"label", to_string(v.type)}, {"real", v.real}, {"conj", v.conj}});
    out["rotation"] = json::object();
    for (const auto& [id, rot] : tree.rotation) out["rotation"][std::to_string(id)] = rot;
    auto es = tree.edges;
    std::sort(es.begin(), es.end(), [](auto& a, auto& b) { return a.id < b.id; });
    out["edges"] = json::array();
    for (const auto& e : es) out["edges"].push_back({{"id", e.id}, {"ends", {e.u, e.v}}});
    out["faces"] = json::array();
    for (const auto& f : tree.faces) out["faces"].push_back({{"label", label_to_json(f.label)}, {"boundary", f.boundary}});
    out["cell_order"] = json::array();
    for (const auto& l : tree.cell_decomposition().cross_order) out["cell_order"].push_back(label_to_json(l));
    return out;
}

LabeledTree tree_from_json(const json& j) {
    as_object(j, "");
    LabeledTree t;

    const auto& vs = as_array(field(j, "vertices", ""), "/vertices");
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const std::string p = "/vertices/" + std::to_string(i);
        as_object(vs[i], p);
        TreeVertex v;
        v.id = as_int(field(vs[i], "id", p), p + "/id");
        const auto& lab = field(vs[i], "label", p);
        if (lab == "x") v.type = VertexType::cross;
        else if (lab == "o") v.type = VertexType::circle;
        else throw SchemaError(p + "/label", "vertex label must be \"x\" or \"o\"");
        const auto& real = field(vs[i], "real", p);
        if (!real.is_boolean()) throw SchemaError(p + "/real", "expected a boolean");
        v.real = real.get<bool>();
        v.conj = as_int(field(vs[i], "conj", p), p + "/conj");
        t.vertices.push_back(v);
    }

    const auto& rot = as_object(field(j, "rotation", ""), "/rotation");
    for (const auto& [key, val] : rot.items()) {
        const std::string p = "/rotation/" + key;
        int id = 0;
        try {
            std::size_t used = 0;
            id = std::stoi(key, &used);
            if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
            throw SchemaError(p, "rotation key must be a vertex id");
        }
        as_array(val, p);
        std::vector<int> order;
        for (std::size_t k = 0; k < val.size(); ++k) order.push_back(as_int(val[k], p + "/" + std::to_string(k)));
        t.rotation[id] = order;
    }

    const auto& es = as_array(field(j, "edges", ""), "/edges");
    for (std::size_t i = 0; i < es.size(); ++i) {
        const std::string p = "/edges/" + std::to_string(i);
        as_object(es[i], p);
        TreeEdge e;
        e.id = as_int(field(es[i], "id", p), p + "/id");
        const auto& ends = as_array(field(es[i], "ends", p), p + "/ends");
        if (ends.size() != 2) throw SchemaError(p + "/ends", "expected two endpoints");
        e.u = as_int(ends[0], p + "/ends/0");
        e.v = as_int(ends[1], p + "/ends/1");
        if (e.u == kEnd) std::swap(e.u, e.v);
        t.edges.push_back(e);
    }

    const auto& fs = as_array(field(j, "faces", ""), "/faces");
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const std::string p = "/faces/" + std::to_string(i);
        as_object(fs[i], p);
        TreeFace f;
        f.label = label_from_json(field(fs[i], "label", p), p + "/label");
        const auto& b = as_array(field(fs[i], "boundary", p), p + "/boundary");
        for (std::size_t k = 0; k < b.size(); ++k) f.boundary.push_back(as_int(b[k], p + "/boundary/" + std::to_string(k)));
        t.faces.push_back(f);
    }

    if (j.contains("cell_order")) {
        const auto& co = as_array(j.at("cell_order"), "/cell_order");
        CellDecompositionSpec cells;
        for (std::size_t i = 0; i < co.size(); ++i)
            cells.cross_order.push_back(label_from_json(co[i], "/cell_order/" + std::to_string(i)));
        t.cell_order = cells;
    }
    std::sort(t.vertices.begin(), t.vertices.end(), [](auto& a, auto& b) { return a.id < b.id; });
    return t;
}

LabeledTree read_tree_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameters("cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError("", std::string("malformed JSON: ") + e.what());
    }
    return tree_from_json(j);
}

}  // namespace blaine
