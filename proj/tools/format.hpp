#pragma once

#include "blaine/quadrature.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace blaine::cli {

enum class Format { json, csv, text };

// Rounds to 12 significant digits.
double sig12(double x);
std::string format_number(double x);
std::string format_complex(cplx z);  // a+bi
nlohmann::json complex_json(cplx z);  // {"re": .., "im": ..}

// "a+bi" without spaces; also "a", "bi", "i", "-i". InvalidParameters on junk.
cplx parse_complex(const std::string& s);
std::vector<double> parse_list(const std::string& s);
std::vector<cplx> parse_complex_list(const std::string& s);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<nlohmann::json>> rows;
};

struct Output {
    nlohmann::json doc = nlohmann::json::object();
    std::optional<Table> table;
};

std::string render(const Output& out, Format fmt);

// Writes through a temporary file in the same directory and renames it.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace blaine::cli
