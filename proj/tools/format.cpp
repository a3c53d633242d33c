#include "format.hpp"

#include "blaine/errors.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace blaine::cli {

using nlohmann::json;

double sig12(double x) {
    if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::stod(buf);
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
    return buf;
}

std::string format_complex(cplx z) {
    const double im = z.imag() == 0.0 ? 0.0 : z.imag();
    std::string s = format_number(z.real());
    s += (im < 0 || std::signbit(im)) ? "-" : "+";
    s += format_number(std::abs(im)) + "i";
    return s;
}

json complex_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

namespace {

double parse_real(const std::string& s, const std::string& whole) {
    if (s.empty()) throw InvalidParameters("cannot parse number '" + whole + "'");
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw InvalidParameters("cannot parse number '" + whole + "'");
    }
    if (used != s.size()) throw InvalidParameters("cannot parse number '" + whole + "'");
    return v;
}

}  // namespace

cplx parse_complex(const std::string& s) {
    if (s.empty()) throw InvalidParameters("empty complex number");
    if (s.back() != 'i') return {parse_real(s, s), 0.0};
    const std::string body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not the leading one or part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag_part = [&](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_real(t, s);
    };
    if (split == std::string::npos) return {0.0, imag_part(body)};
    return {parse_real(body.substr(0, split), s), imag_part(body.substr(split))};
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_real(item, s));
    return out;
}

std::vector<cplx> parse_complex_list(const std::string& s) {
    std::vector<cplx> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_complex(item));
    return out;
}

namespace {

json rounded(const json& j) {
    if (j.is_number_float()) return sig12(j.get<double>());
    if (j.is_array()) {
        json out = json::array();
        for (const auto& v : j) out.push_back(rounded(v));
        return out;
    }
    if (j.is_object()) {
        json out = json::object();
        for (const auto& [k, v] : j.items()) out[k] = rounded(v);
        return out;
    }
    return j;
}

std::string cell(const json& v) {
    if (v.is_number_float()) return format_number(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    if (v.is_object() && v.contains("re") && v.contains("im") && v.size() == 2)
        return format_complex({v["re"].get<double>(), v["im"].get<double>()});
    return rounded(v).dump();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

}  // namespace

std::string render(const Output& out, Format fmt) {
    std::ostringstream os;
    switch (fmt) {
        case Format::json: os << rounded(out.doc).dump(2) << "\n"; break;
        case Format::csv: {
            Table t;
            if (out.table) {
                t = *out.table;
            } else {
                std::vector<json> row;
                for (const auto& [k, v] : out.doc.items()) {
                    t.header.push_back(k);
                    row.push_back(v);
                }
                t.rows.push_back(row);
            }
            for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << csv_field(t.header[i]);
            os << "\n";
            for (const auto& r : t.rows) {
                for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(cell(r[i]));
                os << "\n";
            }
            break;
        }
        case Format::text:
            for (const auto& [k, v] : out.doc.items()) os << k << ": " << cell(v) << "\n";
            break;
    }
    return os.str();
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw InvalidParameters("cannot write " + tmp.string());
        f << content;
        if (!f.flush()) throw InvalidParameters("cannot write " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw InvalidParameters("cannot rename onto " + path + ": " + ec.message());
    }
}

}  // namespace blaine::cli
