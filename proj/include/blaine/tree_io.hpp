#pragma once

#include "blaine/errors.hpp"
#include "blaine/trees.hpp"

#include "json.hpp"

#include <string>

namespace blaine {

// Schema violation; pointer() is a JSON pointer to the offending value.
class SchemaError : public ValidationError {
public:
    SchemaError(std::string pointer, const std::string& what)
        : ValidationError("SchemaError at " + (pointer.empty() ? std::string("/") : pointer) + ": " + what),
          pointer_(std::move(pointer)) {}
    const std::string& pointer() const noexcept { return pointer_; }

private:
    std::string pointer_;
};

nlohmann::json label_to_json(const FaceLabel& l);
FaceLabel label_from_json(const nlohmann::json& j, const std::string& pointer = "");

// Vertices and edges are written sorted by id; "cell_order" is always written.
nlohmann::json tree_to_json(const LabeledTree& tree);
LabeledTree tree_from_json(const nlohmann::json& j);

LabeledTree read_tree_file(const std::string& path);

}  // namespace blaine
