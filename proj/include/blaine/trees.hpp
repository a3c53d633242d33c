#pragma once

// Plane bipartite trees with labeled faces, stored as rotation systems.
//
// Edges whose second endpoint is kEnd run off to infinity ("ends"). Faces
// are traced with the face on the left: arriving at a vertex along
// rotation[k+1] the walk leaves along rotation[k], and the corner between
// rotation[k] and rotation[k+1] belongs to the face. Every end separates two
// faces, so a tree with n >= 1 ends has n faces (1 face without ends).

#include "blaine/growth.hpp"
#include "blaine/quadrature.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace blaine {

inline constexpr int kEnd = -1;

struct FaceLabel {
    enum class Kind { zero, infinity, value };
    Kind kind = Kind::zero;
    cplx value{0.0, 0.0};  // only for Kind::value

    static FaceLabel zero() { return {}; }
    static FaceLabel infinity() { return {Kind::infinity, {0.0, 0.0}}; }
    static FaceLabel of(cplx v);  // 0 maps to zero()

    bool in_cstar() const { return kind == Kind::value; }
    FaceLabel conj() const;
    std::string to_string() const;
    friend bool operator==(const FaceLabel& a, const FaceLabel& b);
    friend bool operator<(const FaceLabel& a, const FaceLabel& b);  // arbitrary total order
};

enum class VertexType { cross, circle };
std::string to_string(VertexType t);  // "x" / "o"

struct TreeVertex {
    int id = 0;
    VertexType type = VertexType::cross;
    bool real = false;
    int conj = 0;
};

struct TreeEdge {
    int id = 0;
    int u = 0;
    int v = kEnd;
    bool is_end() const { return v == kEnd; }
};

struct TreeFace {
    FaceLabel label;
    std::vector<int> boundary;  // edge ids in walk order
};

struct CellDecompositionSpec {
    std::vector<FaceLabel> cross_order;  // counterclockwise around a x vertex

    std::vector<FaceLabel> circle_order() const;
    std::size_t size() const { return cross_order.size(); }
    int index_of(const FaceLabel& l) const;  // -1 if absent
    // Counterclockwise steps from `from` to `to` around a vertex of type t;
    // equal labels count as a full turn.
    int steps(VertexType t, const FaceLabel& from, const FaceLabel& to) const;
    FaceLabel successor(VertexType t, const FaceLabel& l) const;
    void validate() const;  // InvalidParameters

    // infinity first, then the remaining labels by decreasing imaginary part
    // (ties by increasing real part).
    static CellDecompositionSpec default_for(std::vector<FaceLabel> labels);
};

struct LabeledTree {
    std::vector<TreeVertex> vertices;
    std::map<int, std::vector<int>> rotation;
    std::vector<TreeEdge> edges;
    std::vector<TreeFace> faces;
    std::optional<CellDecompositionSpec> cell_order;

    const TreeVertex& vertex(int id) const;  // InvalidParameters if absent
    const TreeEdge& edge(int id) const;
    bool has_vertex(int id) const;
    std::vector<FaceLabel> asymptotic_values() const;  // C* labels, face order
    CellDecompositionSpec cell_decomposition() const;  // stored or default
};

struct ValidationIssue {
    std::string clause;  // ids, rotation, tree, bipartite, faces, labels, cyclic_order, symmetry
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool valid() const { return issues.empty(); }
    bool has(const std::string& clause) const;
};

ValidationReport validate_tree(const LabeledTree& tree, const CellDecompositionSpec& cells);
ValidationReport validate_tree(const LabeledTree& tree);

// Per-vertex corner labels in rotation order, from traced faces matched to
// the declared ones. Throws InvalidParameters on structural problems.
std::map<int, std::vector<FaceLabel>> corner_labels(const LabeledTree& tree);

// Faces traced from the rotation system, without labels.
std::vector<std::vector<int>> trace_face_boundaries(const LabeledTree& tree);

// Builds a tree from per-vertex corner labels; faces are traced and labeled.
LabeledTree tree_from_corners(std::vector<TreeVertex> vertices, std::vector<TreeEdge> edges,
                              std::map<int, std::vector<int>> rotation,
                              const std::map<int, std::vector<FaceLabel>>& corners,
                              std::optional<CellDecompositionSpec> cells = std::nullopt);

bool check_real_zeros_poles(const LabeledTree& tree);
int count_singularities(const LabeledTree& tree);

// Edge involution induced by the vertex involution; throws InvalidParameters
// if the rotation systems are not mirror images.
std::map<int, int> edge_involution(const LabeledTree& tree);
int count_real_ends(const LabeledTree& tree);

std::vector<int> eligible_split_vertices(const LabeledTree& tree);
LabeledTree split_tree(const LabeledTree& tree, int vertex_id);

ClassificationResult classify(const LabeledTree& tree);

struct Sector {
    enum class Kind { large, small };
    double opening = 0.0;
    double bisector = 0.0;  // S_0 is centered on the positive real axis
    cplx rotation{1.0, 0.0};
    Kind kind = Kind::large;
};

struct SectorPlan {
    CaseTag case_tag = CaseTag::i;
    int m = 0;
    double rho = 0.0;
    std::vector<Sector> sectors;
};

SectorPlan sector_plan(CaseTag c, int m);

LabeledTree builtin_tree(int m);
LabeledTree case_ii_tree();  // one-sided chain, m = 2
LabeledTree case_i_tree();   // no real ends, m = 2
LabeledTree exp_tree();      // faces 0 and infinity only, m = 0

std::string canonical_code(const LabeledTree& tree);
bool isomorphic(const LabeledTree& a, const LabeledTree& b);

}  // namespace blaine
