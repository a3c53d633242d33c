#include "blaine/trees.hpp"

#include "blaine/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace blaine {

// ---------------------------------------------------------------- labels

FaceLabel FaceLabel::of(cplx v) {
    if (v == cplx{0.0, 0.0}) return zero();
    return {Kind::value, {v.real() + 0.0, v.imag() + 0.0}};  // no signed zeros
}

FaceLabel FaceLabel::conj() const {
    return kind == Kind::value ? of(std::conj(value)) : *this;
}

std::string FaceLabel::to_string() const {
    if (kind == Kind::zero) return "0";
    if (kind == Kind::infinity) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", value.real(), value.imag());
    return buf;
}

bool operator==(const FaceLabel& a, const FaceLabel& b) {
    if (a.kind != b.kind) return false;
    return a.kind != FaceLabel::Kind::value || a.value == b.value;
}

bool operator<(const FaceLabel& a, const FaceLabel& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.kind != FaceLabel::Kind::value) return false;
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
}

std::string to_string(VertexType t) { return t == VertexType::cross ? "x" : "o"; }

// ---------------------------------------------------------------- cells

std::vector<FaceLabel> CellDecompositionSpec::circle_order() const {
    return {cross_order.rbegin(), cross_order.rend()};
}

int CellDecompositionSpec::index_of(const FaceLabel& l) const {
    for (std::size_t i = 0; i < cross_order.size(); ++i)
        if (cross_order[i] == l) return static_cast<int>(i);
    return -1;
}

int CellDecompositionSpec::steps(VertexType t, const FaceLabel& from, const FaceLabel& to) const {
    const int q = static_cast<int>(size());
    const int i = index_of(from);
    const int j = index_of(to);
    if (i < 0 || j < 0) throw InvalidParameters("label not in the cell decomposition");
    int s = (t == VertexType::cross) ? (j - i) : (i - j);
    s = ((s % q) + q) % q;
    return s == 0 ? q : s;
}

FaceLabel CellDecompositionSpec::successor(VertexType t, const FaceLabel& l) const {
    const int q = static_cast<int>(size());
    const int i = index_of(l);
    if (i < 0) throw InvalidParameters("label not in the cell decomposition");
    const int j = (t == VertexType::cross) ? (i + 1) % q : (i - 1 + q) % q;
    return cross_order[j];
}

void CellDecompositionSpec::validate() const {
    if (cross_order.size() < 2) throw InvalidParameters("cell decomposition needs at least two labels");
    std::set<FaceLabel> seen(cross_order.begin(), cross_order.end());
    if (seen.size() != cross_order.size()) throw InvalidParameters("repeated label in cell decomposition");
}

CellDecompositionSpec CellDecompositionSpec::default_for(std::vector<FaceLabel> labels) {
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    std::stable_sort(labels.begin(), labels.end(), [](const FaceLabel& a, const FaceLabel& b) {
        auto key = [](const FaceLabel& l) {
            if (l.kind == FaceLabel::Kind::infinity) return std::pair{-std::numeric_limits<double>::infinity(), 0.0};
            return std::pair{-l.value.imag(), l.value.real()};
        };
        return key(a) < key(b);
    });
    return CellDecompositionSpec{labels};
}

// ---------------------------------------------------------------- tree accessors

const TreeVertex& LabeledTree::vertex(int id) const {
    for (const auto& v : vertices)
        if (v.id == id) return v;
    throw InvalidParameters("no vertex " + std::to_string(id));
}

const TreeEdge& LabeledTree::edge(int id) const {
    for (const auto& e : edges)
        if (e.id == id) return e;
    throw InvalidParameters("no edge " + std::to_string(id));
}

bool LabeledTree::has_vertex(int id) const {
    return std::any_of(vertices.begin(), vertices.end(), [&](const TreeVertex& v) { return v.id == id; });
}

std::vector<FaceLabel> LabeledTree::asymptotic_values() const {
    std::vector<FaceLabel> out;
    for (const auto& f : faces)
        if (f.label.in_cstar()) out.push_back(f.label);
    return out;
}

CellDecompositionSpec LabeledTree::cell_decomposition() const {
    if (cell_order) return *cell_order;
    std::vector<FaceLabel> labels;
    for (const auto& f : faces) labels.push_back(f.label);
    return CellDecompositionSpec::default_for(labels);
}

bool ValidationReport::has(const std::string& clause) const {
    return std::any_of(issues.begin(), issues.end(), [&](const ValidationIssue& i) { return i.clause == clause; });
}

// ---------------------------------------------------------------- face tracing

namespace {

struct Traced {
    std::vector<std::vector<int>> boundaries;
    std::map<int, std::vector<int>> corner_face;  // vertex -> face index per corner
};

int other_end(const TreeEdge& e, int x) { return e.u == x ? e.v : e.u; }

int position(const std::vector<int>& rot, int edge) {
    auto it = std::find(rot.begin(), rot.end(), edge);
    if (it == rot.end()) throw InvalidParameters("edge " + std::to_string(edge) + " missing from rotation");
    return static_cast<int>(it - rot.begin());
}

// Assumes ids and rotations are consistent.
Traced trace(const LabeledTree& t) {
    Traced out;
    std::map<int, const TreeEdge*> edge_by_id;
    for (const auto& e : t.edges) edge_by_id[e.id] = &e;
    for (const auto& [v, rot] : t.rotation) out.corner_face[v].assign(rot.size(), -1);
    if (t.edges.empty()) {
        out.boundaries.push_back({});
        for (auto& [v, cf] : out.corner_face) cf.assign(cf.size(), 0);
        return out;
    }

    const TreeEdge* start = nullptr;
    for (const auto& e : t.edges)
        if (e.is_end() && (!start || e.id < start->id)) start = &e;
    const bool has_ends = start != nullptr;
    int at;  // vertex being arrived at
    if (has_ends) {
        at = start->u;
    } else {
        start = &*std::min_element(t.edges.begin(), t.edges.end(),
                                   [](const TreeEdge& a, const TreeEdge& b) { return a.id < b.id; });
        at = start->v;
    }

    const std::size_t total_darts = 2 * t.edges.size();
    std::vector<int> current{start->id};
    const TreeEdge* via = start;
    for (std::size_t step = 1; step < total_darts + 1; ++step) {
        const auto& rot = t.rotation.at(at);
        const int d = static_cast<int>(rot.size());
        const int k_out = (position(rot, via->id) - 1 + d) % d;
        out.corner_face[at][k_out] = static_cast<int>(out.boundaries.size());
        const TreeEdge* next = edge_by_id.at(rot[k_out]);
        current.push_back(next->id);
        if (next->is_end()) {
            out.boundaries.push_back(current);
            if (next == start) break;
            current = {next->id};
            via = next;
            // at stays the same: bouncing off infinity returns to next->u
        } else {
            const int nxt = other_end(*next, at);
            if (!has_ends && next == start && nxt == start->v) {
                current.pop_back();
                out.boundaries.push_back(current);
                break;
            }
            at = nxt;
            via = next;
        }
    }
    return out;
}

bool cyclic_equal(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    for (std::size_t s = 0; s < a.size(); ++s) {
        bool ok = true;
        for (std::size_t i = 0; i < a.size() && ok; ++i) ok = a[(s + i) % a.size()] == b[i];
        if (ok) return true;
    }
    return false;
}

// Traced face index -> declared face index, or nullopt with a reason.
std::optional<std::vector<int>> match_faces(const LabeledTree& t, const Traced& tr, std::string& why) {
    std::vector<int> map(tr.boundaries.size(), -1);
    std::vector<bool> used(t.faces.size(), false);
    for (std::size_t i = 0; i < tr.boundaries.size(); ++i) {
        for (std::size_t j = 0; j < t.faces.size(); ++j) {
            if (!used[j] && cyclic_equal(tr.boundaries[i], t.faces[j].boundary)) {
                map[i] = static_cast<int>(j);
                used[j] = true;
                break;
            }
        }
        if (map[i] < 0) {
            why = "traced face " + std::to_string(i) + " has no matching declared face";
            return std::nullopt;
        }
    }
    if (t.faces.size() != tr.boundaries.size()) {
        why = "declared " + std::to_string(t.faces.size()) + " faces, traced " + std::to_string(tr.boundaries.size());
        return std::nullopt;
    }
    return map;
}

std::map<int, std::vector<FaceLabel>> labels_from_trace(const LabeledTree& t, const Traced& tr,
                                                        const std::vector<int>& map) {
    std::map<int, std::vector<FaceLabel>> out;
    for (const auto& [v, cf] : tr.corner_face) {
        auto& labels = out[v];
        for (int f : cf) labels.push_back(t.faces.at(map.at(f)).label);
    }
    return out;
}

// Structural clauses: ids, rotation, tree, bipartite.
void check_structure(const LabeledTree& t, ValidationReport& r) {
    auto issue = [&](const char* c, std::string d) { r.issues.push_back({c, std::move(d)}); };
    std::set<int> vids, eids;
    for (const auto& v : t.vertices)
        if (!vids.insert(v.id).second) issue("ids", "duplicate vertex id " + std::to_string(v.id));
    for (const auto& e : t.edges) {
        if (!eids.insert(e.id).second) issue("ids", "duplicate edge id " + std::to_string(e.id));
        if (!vids.count(e.u) || (e.v != kEnd && !vids.count(e.v)))
            issue("ids", "edge " + std::to_string(e.id) + " references an unknown vertex");
        if (e.u == e.v) issue("ids", "edge " + std::to_string(e.id) + " is a loop");
    }
    for (const auto& v : t.vertices) {
        if (!vids.count(v.conj)) issue("ids", "vertex " + std::to_string(v.id) + " has unknown conj partner");
        if (!t.rotation.count(v.id)) issue("ids", "vertex " + std::to_string(v.id) + " has no rotation");
    }
    for (const auto& [v, rot] : t.rotation)
        if (!vids.count(v)) issue("ids", "rotation for unknown vertex " + std::to_string(v));
    if (!r.valid()) return;

    std::map<int, std::multiset<int>> incident;
    for (const auto& e : t.edges) {
        incident[e.u].insert(e.id);
        if (e.v != kEnd) incident[e.v].insert(e.id);
    }
    for (const auto& v : t.vertices) {
        const auto& rot = t.rotation.at(v.id);
        std::multiset<int> have(rot.begin(), rot.end());
        if (have != incident[v.id])
            issue("rotation", "rotation at vertex " + std::to_string(v.id) + " is not a permutation of its edges");
        if (rot.empty() && t.vertices.size() > 1) issue("rotation", "isolated vertex " + std::to_string(v.id));
    }
    if (!r.valid()) return;

    std::map<int, int> parent;
    for (int id : vids) parent[id] = id;
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    int internal = 0;
    for (const auto& e : t.edges) {
        if (e.is_end()) continue;
        ++internal;
        const int a = find(e.u), b = find(e.v);
        if (a == b) issue("tree", "edge " + std::to_string(e.id) + " closes a cycle");
        parent[a] = b;
    }
    std::set<int> roots;
    for (int id : vids) roots.insert(find(id));
    if (roots.size() != 1) issue("tree", "graph is not connected");
    if (internal + 1 != static_cast<int>(vids.size()) && r.valid())
        issue("tree", "edge count does not match a tree");

    for (const auto& e : t.edges) {
        if (e.is_end()) continue;
        if (t.vertex(e.u).type == t.vertex(e.v).type)
            issue("bipartite", "edge " + std::to_string(e.id) + " joins two " + to_string(t.vertex(e.u).type) +
                                   " vertices");
    }
}

// Reflection constant c at each vertex (corner k at v goes to corner
// c - k - 1 at conj(v)) and the induced edge map.
bool reflect(const LabeledTree& t, const std::map<int, std::vector<FaceLabel>>& corners, std::map<int, int>& emap,
             std::string& why) {
    emap.clear();
    for (const auto& v : t.vertices) {
        const auto& w = t.vertex(v.conj);
        const auto& rv = t.rotation.at(v.id);
        const auto& rw = t.rotation.at(w.id);
        const int d = static_cast<int>(rv.size());
        if (static_cast<int>(rw.size()) != d) {
            why = "vertices " + std::to_string(v.id) + " and " + std::to_string(w.id) + " differ in degree";
            return false;
        }
        const auto& lv = corners.at(v.id);
        const auto& lw = corners.at(w.id);
        int found = -1;
        for (int c = 0; c < d && found < 0; ++c) {
            bool ok = true;
            for (int i = 0; i < d && ok; ++i) {
                const auto& e = t.edge(rv[i]);
                const auto& f = t.edge(rw[((c - i) % d + d) % d]);
                if (e.is_end() != f.is_end()) ok = false;
                else if (!e.is_end() && other_end(f, w.id) != t.vertex(other_end(e, v.id)).conj) ok = false;
                if (ok && !(lw[((c - i - 1) % d + d) % d] == lv[i].conj())) ok = false;
            }
            if (ok) found = c;
        }
        if (found < 0) {
            why = "no mirror match between vertex " + std::to_string(v.id) + " and its partner " +
                  std::to_string(w.id);
            return false;
        }
        for (int i = 0; i < d; ++i) {
            const int e = rv[i];
            const int f = rw[((found - i) % d + d) % d];
            auto [it, fresh] = emap.emplace(e, f);
            if (!fresh && it->second != f) {
                why = "edge " + std::to_string(e) + " has inconsistent mirror images";
                return false;
            }
        }
    }
    for (const auto& [e, f] : emap) {
        if (emap.at(f) != e) {
            why = "edge involution is not an involution at edge " + std::to_string(e);
            return false;
        }
    }
    return true;
}

}  // namespace

std::vector<std::vector<int>> trace_face_boundaries(const LabeledTree& tree) {
    ValidationReport r;
    check_structure(tree, r);
    if (r.has("ids") || r.has("rotation")) throw InvalidParameters(r.issues.front().detail);
    return trace(tree).boundaries;
}

std::map<int, std::vector<FaceLabel>> corner_labels(const LabeledTree& tree) {
    ValidationReport r;
    check_structure(tree, r);
    if (!r.valid()) throw InvalidParameters(r.issues.front().clause + ": " + r.issues.front().detail);
    const Traced tr = trace(tree);
    std::string why;
    const auto map = match_faces(tree, tr, why);
    if (!map) throw InvalidParameters("faces: " + why);
    return labels_from_trace(tree, tr, *map);
}

ValidationReport validate_tree(const LabeledTree& tree, const CellDecompositionSpec& cells) {
    ValidationReport r;
    auto issue = [&](const char* c, std::string d) { r.issues.push_back({c, std::move(d)}); };
    check_structure(tree, r);
    if (!r.valid()) return r;

    try {
        cells.validate();
    } catch (const ValidationError& e) {
        issue("labels", e.what());
        return r;
    }

    const Traced tr = trace(tree);
    std::string why;
    const auto map = match_faces(tree, tr, why);
    if (!map) {
        issue("faces", why);
        return r;
    }
    for (std::size_t i = 0; i < tree.faces.size(); ++i)
        if (cells.index_of(tree.faces[i].label) < 0)
            issue("labels", "face " + std::to_string(i) + " label " + tree.faces[i].label.to_string() +
                                " is not in the cell decomposition");
    if (!r.valid()) return r;

    const auto corners = labels_from_trace(tree, tr, *map);
    const int q = static_cast<int>(cells.size());
    for (const auto& v : tree.vertices) {
        const auto& lab = corners.at(v.id);
        const int d = static_cast<int>(lab.size());
        int total = 0;
        for (int k = 0; k < d; ++k) total += cells.steps(v.type, lab[k], lab[(k + 1) % d]);
        if (total != q)
            issue("cyclic_order", "labels around vertex " + std::to_string(v.id) + " wind " + std::to_string(total) +
                                      " steps, expected " + std::to_string(q));
    }

    for (const auto& v : tree.vertices) {
        const auto& w = tree.vertex(v.conj);
        if (w.conj != v.id) issue("symmetry", "conj is not an involution at vertex " + std::to_string(v.id));
        if (w.type != v.type) issue("symmetry", "conj changes the type of vertex " + std::to_string(v.id));
        if (v.real != (v.conj == v.id))
            issue("symmetry", "vertex " + std::to_string(v.id) + " real flag disagrees with its conj partner");
    }
    for (const auto& l : cells.cross_order)
        if (cells.index_of(l.conj()) < 0) issue("symmetry", "label set is not closed under conjugation");
    if (!r.has("symmetry")) {
        const int n = static_cast<int>(cells.size());
        for (int k = 0; k < n; ++k) {
            const int a = cells.index_of(cells.cross_order[k].conj());
            const int b = cells.index_of(cells.cross_order[(k + 1) % n].conj());
            if ((a - b + n) % n != 1) {
                issue("symmetry", "conjugation does not reverse the cyclic order of labels");
                break;
            }
        }
    }
    if (!r.has("symmetry")) {
        std::map<int, int> emap;
        if (!reflect(tree, corners, emap, why)) issue("symmetry", why);
    }
    return r;
}

ValidationReport validate_tree(const LabeledTree& tree) { return validate_tree(tree, tree.cell_decomposition()); }

LabeledTree tree_from_corners(std::vector<TreeVertex> vertices, std::vector<TreeEdge> edges,
                              std::map<int, std::vector<int>> rotation,
                              const std::map<int, std::vector<FaceLabel>>& corners,
                              std::optional<CellDecompositionSpec> cells) {
    LabeledTree t;
    std::sort(vertices.begin(), vertices.end(), [](auto& a, auto& b) { return a.id < b.id; });
    std::sort(edges.begin(), edges.end(), [](auto& a, auto& b) { return a.id < b.id; });
    t.vertices = std::move(vertices);
    t.edges = std::move(edges);
    t.rotation = std::move(rotation);
    t.cell_order = std::move(cells);

    ValidationReport r;
    check_structure(t, r);
    if (r.has("ids") || r.has("rotation")) throw InvalidParameters(r.issues.front().detail);
    const Traced tr = trace(t);
    for (std::size_t f = 0; f < tr.boundaries.size(); ++f) {
        std::optional<FaceLabel> label;
        for (const auto& [v, cf] : tr.corner_face) {
            const auto& lab = corners.at(v);
            if (lab.size() != cf.size()) throw InvalidParameters("corner count mismatch at " + std::to_string(v));
            for (std::size_t k = 0; k < cf.size(); ++k) {
                if (cf[k] != static_cast<int>(f)) continue;
                if (label && !(*label == lab[k]))
                    throw InvalidParameters("face " + std::to_string(f) + " receives two labels");
                label = lab[k];
            }
        }
        if (!label) throw InvalidParameters("face " + std::to_string(f) + " has no corner");
        t.faces.push_back({*label, tr.boundaries[f]});
    }
    return t;
}

bool check_real_zeros_poles(const LabeledTree& tree) {
    const auto corners = corner_labels(tree);
    for (const auto& v : tree.vertices) {
        if (v.real) continue;
        const auto& lab = corners.at(v.id);
        const bool zero = std::count(lab.begin(), lab.end(), FaceLabel::zero()) > 0;
        const bool inf = std::count(lab.begin(), lab.end(), FaceLabel::infinity()) > 0;
        if (!zero || !inf) return false;
    }
    return true;
}

int count_singularities(const LabeledTree& tree) { return static_cast<int>(tree.asymptotic_values().size()); }

std::map<int, int> edge_involution(const LabeledTree& tree) {
    const auto corners = corner_labels(tree);
    std::map<int, int> emap;
    std::string why;
    if (!reflect(tree, corners, emap, why)) throw InvalidParameters("symmetry: " + why);
    return emap;
}

int count_real_ends(const LabeledTree& tree) {
    const auto emap = edge_involution(tree);
    int n = 0;
    for (const auto& e : tree.edges)
        if (e.is_end() && emap.at(e.id) == e.id) ++n;
    return n;
}

// ---------------------------------------------------------------- splitting

namespace {

struct Eligibility {
    bool ok = false;
    std::string why;
    int toward = -1;  // edge on the path to the real axis
    int away = -1;
};

Eligibility check_split(const LabeledTree& t, const std::map<int, std::vector<FaceLabel>>& corners, int id) {
    Eligibility e;
    if (!t.has_vertex(id)) {
        e.why = "no vertex " + std::to_string(id);
        return e;
    }
    const auto& v = t.vertex(id);
    if (v.real) {
        e.why = "vertex " + std::to_string(id) + " is on the real axis";
        return e;
    }
    const auto& rot = t.rotation.at(id);
    const auto& lab = corners.at(id);
    if (rot.size() != 2 || !((lab[0] == FaceLabel::zero() && lab[1] == FaceLabel::infinity()) ||
                             (lab[1] == FaceLabel::zero() && lab[0] == FaceLabel::infinity()))) {
        e.why = "vertex " + std::to_string(id) + " is not adjacent only to faces 0 and inf";
        return e;
    }
    // Breadth-first search for the nearest real vertex.
    std::map<int, int> first_edge;
    std::queue<int> todo;
    first_edge[id] = -1;
    todo.push(id);
    int found = -1;
    while (!todo.empty() && found < 0) {
        const int x = todo.front();
        todo.pop();
        for (int eid : t.rotation.at(x)) {
            const auto& ed = t.edge(eid);
            if (ed.is_end()) continue;
            const int y = other_end(ed, x);
            if (first_edge.count(y)) continue;
            first_edge[y] = (x == id) ? eid : first_edge[x];
            if (t.vertex(y).real) {
                found = y;
                break;
            }
            todo.push(y);
        }
    }
    if (found < 0) {
        e.why = "no path from vertex " + std::to_string(id) + " to the real axis";
        return e;
    }
    e.toward = first_edge[found];
    e.away = rot[0] == e.toward ? rot[1] : rot[0];
    e.ok = true;
    return e;
}

}  // namespace

std::vector<int> eligible_split_vertices(const LabeledTree& tree) {
    const auto corners = corner_labels(tree);
    std::vector<int> out;
    for (const auto& v : tree.vertices)
        if (check_split(tree, corners, v.id).ok) out.push_back(v.id);
    std::sort(out.begin(), out.end());
    return out;
}

LabeledTree split_tree(const LabeledTree& tree, int vertex_id) {
    const auto report = validate_tree(tree);
    if (!report.valid()) throw InvalidParameters("tree is invalid: " + report.issues.front().detail);
    const auto cells = tree.cell_decomposition();
    auto corners = corner_labels(tree);
    const auto el = check_split(tree, corners, vertex_id);
    if (!el.ok) throw IneligibleVertex(el.why);
    const auto emap = edge_involution(tree);

    const TreeVertex w = tree.vertex(vertex_id);
    const TreeVertex wb = tree.vertex(w.conj);
    const int d = el.toward, u = el.away;
    const auto& rot_w = tree.rotation.at(w.id);
    const int kd = position(rot_w, d);
    const FaceLabel c_right = corners.at(w.id)[kd];
    const FaceLabel c_left = corners.at(w.id)[(kd + 1) % 2];
    if (cells.steps(w.type, c_right, c_left) < 2) throw IneligibleVertex("no room for a new label at this vertex");
    const FaceLabel a = cells.successor(w.type, c_right);

    int vmax = 0, emax = 0;
    for (const auto& v : tree.vertices) vmax = std::max(vmax, v.id);
    for (const auto& e : tree.edges) emax = std::max(emax, e.id);
    const int w1 = vmax + 1, w2 = vmax + 2, w1b = vmax + 3, w2b = vmax + 4;
    const int n = emax + 1, uw = emax + 2, n1 = emax + 3, u1 = emax + 4;
    const int nb = emax + 5, uwb = emax + 6, n1b = emax + 7, u1b = emax + 8;
    const VertexType other = w.type == VertexType::cross ? VertexType::circle : VertexType::cross;

    auto vertices = tree.vertices;
    vertices.push_back({w1, other, false, w1b});
    vertices.push_back({w2, w.type, false, w2b});
    vertices.push_back({w1b, other, false, w1});
    vertices.push_back({w2b, w.type, false, w2});

    auto edges = tree.edges;
    auto reattach = [&](int eid, int from, int to) {
        for (auto& e : edges) {
            if (e.id != eid) continue;
            if (e.u == from) e.u = to;
            else if (e.v == from) e.v = to;
        }
    };
    reattach(u, w.id, w2);
    reattach(emap.at(u), wb.id, w2b);
    edges.push_back({n, w.id, kEnd});
    edges.push_back({uw, w.id, w1});
    edges.push_back({n1, w1, kEnd});
    edges.push_back({u1, w1, w2});
    edges.push_back({nb, wb.id, kEnd});
    edges.push_back({uwb, wb.id, w1b});
    edges.push_back({n1b, w1b, kEnd});
    edges.push_back({u1b, w1b, w2b});

    auto rotation = tree.rotation;
    rotation[w.id] = {d, n, uw};
    corners[w.id] = {c_right, a, c_left};
    rotation[w1] = {uw, n1, u1};
    corners[w1] = {a, c_right, c_left};
    rotation[w2] = {u1, u};
    corners[w2] = {c_right, c_left};

    const std::map<int, int> mirror_edge{{d, emap.at(d)}, {u, emap.at(u)}, {n, nb}, {uw, uwb}, {n1, n1b}, {u1, u1b}};
    const std::map<int, int> mirror_vertex{{w.id, wb.id}, {w1, w1b}, {w2, w2b}};
    for (const auto& [x, xb] : mirror_vertex) {
        const auto rx = rotation.at(x);
        const auto lx = corners.at(x);
        const int k = static_cast<int>(rx.size());
        std::vector<int> rb(k);
        std::vector<FaceLabel> lb(k);
        for (int i = 0; i < k; ++i) {
            rb[i] = mirror_edge.at(rx[((-i) % k + k) % k]);
            lb[i] = lx[((-i - 1) % k + k) % k].conj();
        }
        rotation[xb] = rb;
        corners[xb] = lb;
    }

    LabeledTree out = tree_from_corners(std::move(vertices), std::move(edges), std::move(rotation), corners, cells);
    const auto check = validate_tree(out);
    if (!check.valid()) throw std::logic_error("split produced an invalid tree: " + check.issues.front().detail);
    return out;
}

// ---------------------------------------------------------------- classification

ClassificationResult classify(const LabeledTree& tree) {
    const auto report = validate_tree(tree);
    if (!report.valid())
        throw InvalidParameters("tree is invalid (" + report.issues.front().clause + "): " +
                                report.issues.front().detail);
    const int m = count_singularities(tree);
    switch (count_real_ends(tree)) {
        case 0: return classify_orders(CaseTag::i, m);
        case 1: return classify_orders(CaseTag::ii, m);
        case 2: return classify_orders(CaseTag::iii, m);
        default: throw Unclassifiable("more than two ends lie on the real axis");
    }
}

SectorPlan sector_plan(CaseTag c, int m) {
    const auto cls = classify_orders(c, m);
    SectorPlan plan;
    plan.case_tag = c;
    plan.m = m;
    plan.rho = cls.rho;
    const double pi = std::numbers::pi;
    const double small = pi / plan.rho, large = 2.0 * pi / plan.rho;
    const cplx I{0.0, 1.0};
    for (int j = 0; j < m; ++j) {
        Sector s;
        switch (c) {
            case CaseTag::i:
                s = {large, 0.0, cplx{-1.0, 0.0}, Sector::Kind::large};
                break;
            case CaseTag::ii:
                s = j == 0 ? Sector{small, 0.0, 1.0, Sector::Kind::small} : Sector{large, 0.0, -I, Sector::Kind::large};
                break;
            case CaseTag::iii:
                if (j == 0) s = {small, 0.0, 1.0, Sector::Kind::small};
                else if (j == m / 2) s = {small, 0.0, -1.0, Sector::Kind::small};
                else s = {large, 0.0, j < m / 2 ? -I : I, Sector::Kind::large};
                break;
        }
        plan.sectors.push_back(s);
    }
    double edge = -plan.sectors.front().opening / 2.0;
    for (auto& s : plan.sectors) {
        s.bisector = edge + s.opening / 2.0;
        edge += s.opening;
    }
    return plan;
}

// ---------------------------------------------------------------- fixtures

namespace {

const cplx I{0.0, 1.0};
FaceLabel L(cplx v) { return FaceLabel::of(v); }
const FaceLabel Z = FaceLabel::zero();
const FaceLabel INF = FaceLabel::infinity();

TreeVertex X(int id, bool real, int conj) { return {id, VertexType::cross, real, conj}; }
TreeVertex O(int id, bool real, int conj) { return {id, VertexType::circle, real, conj}; }

}  // namespace

LabeledTree builtin_tree(int m) {
    if (m < 4 || m % 2 != 0) throw InvalidM("builtin tree requires m is even, m≥4");
    // Real axis: r1 - v0 - l1 with ends to the right of r1 and left of l1;
    // u1 above v0 carries the tracts over 0 and inf, w1 hangs off u1.
    std::vector<TreeVertex> vs{O(0, true, 0), X(1, true, 1), X(2, true, 2), X(3, false, 4),
                               X(4, false, 3), O(5, false, 6), O(6, false, 5)};
    std::vector<TreeEdge> es{{0, 0, 1}, {1, 0, 2}, {2, 0, 3}, {3, 0, 4}, {4, 1, kEnd}, {5, 2, kEnd}, {6, 3, kEnd},
                             {7, 3, 5}, {8, 3, kEnd}, {9, 4, kEnd}, {10, 4, 6}, {11, 4, kEnd}, {12, 5, kEnd},
                             {13, 6, kEnd}};
    std::map<int, std::vector<int>> rot{{0, {0, 2, 1, 3}}, {1, {4, 0}},       {2, {1, 5}},  {3, {2, 6, 7, 8}},
                                        {4, {3, 11, 10, 9}}, {5, {7, 12}}, {6, {10, 13}}};
    std::map<int, std::vector<FaceLabel>> corners{
        {0, {L(I), L(2.0 * I), L(-2.0 * I), L(-I)}},
        {1, {L(I), L(-I)}},
        {2, {L(2.0 * I), L(-2.0 * I)}},
        {3, {L(I), Z, INF, L(2.0 * I)}},
        {4, {L(-2.0 * I), INF, Z, L(-I)}},
        {5, {Z, INF}},
        {6, {INF, Z}},
    };
    CellDecompositionSpec cells{{INF, L(2.0 * I), L(I), Z, L(-I), L(-2.0 * I)}};
    LabeledTree t = tree_from_corners(vs, es, rot, corners, cells);
    for (int k = 4; k < m; k += 2) t = split_tree(t, eligible_split_vertices(t).front());
    return t;
}

LabeledTree case_ii_tree() {
    std::vector<TreeVertex> vs{X(0, true, 0), O(1, false, 2), O(2, false, 1)};
    std::vector<TreeEdge> es{{0, 0, kEnd}, {1, 0, 1}, {2, 0, 2}, {3, 1, kEnd}, {4, 1, kEnd}, {5, 2, kEnd}, {6, 2, kEnd}};
    std::map<int, std::vector<int>> rot{{0, {0, 1, 2}}, {1, {1, 3, 4}}, {2, {2, 6, 5}}};
    std::map<int, std::vector<FaceLabel>> corners{
        {0, {L(I), Z, L(-I)}}, {1, {L(I), INF, Z}}, {2, {Z, INF, L(-I)}}};
    return tree_from_corners(vs, es, rot, corners, CellDecompositionSpec{{INF, L(I), Z, L(-I)}});
}

LabeledTree case_i_tree() {
    std::vector<TreeVertex> vs{X(0, true, 0), O(1, false, 2), O(2, false, 1)};
    std::vector<TreeEdge> es{{0, 0, 1}, {1, 0, 2}, {2, 1, kEnd}, {3, 1, kEnd}, {4, 2, kEnd}, {5, 2, kEnd}};
    std::map<int, std::vector<int>> rot{{0, {0, 1}}, {1, {0, 2, 3}}, {2, {1, 5, 4}}};
    std::map<int, std::vector<FaceLabel>> corners{{0, {Z, INF}}, {1, {INF, L(-I), Z}}, {2, {Z, L(I), INF}}};
    return tree_from_corners(vs, es, rot, corners, CellDecompositionSpec{{INF, L(I), Z, L(-I)}});
}

LabeledTree exp_tree() {
    std::vector<TreeVertex> vs{X(0, true, 0), O(1, false, 2), O(2, false, 1)};
    std::vector<TreeEdge> es{{0, 0, 1}, {1, 0, 2}, {2, 1, kEnd}, {3, 2, kEnd}};
    std::map<int, std::vector<int>> rot{{0, {0, 1}}, {1, {0, 2}}, {2, {1, 3}}};
    std::map<int, std::vector<FaceLabel>> corners{{0, {Z, INF}}, {1, {INF, Z}}, {2, {Z, INF}}};
    return tree_from_corners(vs, es, rot, corners, CellDecompositionSpec{{INF, Z}});
}

// ---------------------------------------------------------------- isomorphism

std::string canonical_code(const LabeledTree& tree) {
    const auto corners = corner_labels(tree);
    std::vector<int> roots;
    for (const auto& v : tree.vertices)
        if (v.real) roots.push_back(v.id);
    if (roots.empty())
        for (const auto& v : tree.vertices) roots.push_back(v.id);

    std::string best;
    bool have = false;
    for (int root : roots) {
        const int deg = static_cast<int>(tree.rotation.at(root).size());
        for (int s = 0; s < std::max(deg, 1); ++s) {
            std::string code;
            std::map<int, int> number;
            std::vector<int> order;
            std::function<void(int, int, int)> visit = [&](int x, int start, int parent_edge) {
                number[x] = static_cast<int>(order.size());
                order.push_back(x);
                const auto& v = tree.vertex(x);
                const auto& rot = tree.rotation.at(x);
                const int d = static_cast<int>(rot.size());
                code += "(" + to_string(v.type) + (v.real ? "r" : "n") + std::to_string(d);
                for (int j = 0; j < d; ++j) {
                    const int k = (start + j) % d;
                    code += "[" + corners.at(x)[k].to_string() + "]";
                    const auto& e = tree.edge(rot[k]);
                    if (e.is_end()) code += "E";
                    else if (e.id == parent_edge) code += "P";
                    else {
                        const int y = other_end(e, x);
                        visit(y, position(tree.rotation.at(y), e.id), e.id);
                    }
                }
                code += ")";
            };
            visit(root, s, -1);
            code += "|";
            for (int x : order) code += std::to_string(number.at(tree.vertex(x).conj)) + ",";
            if (!have || code < best) {
                best = code;
                have = true;
            }
        }
    }
    return best;
}

bool isomorphic(const LabeledTree& a, const LabeledTree& b) {
    if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size()) return false;
    return canonical_code(a) == canonical_code(b);
}

}  // namespace blaine
