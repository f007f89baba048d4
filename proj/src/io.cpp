#include "framepart/io.hpp"

#include <array>
#include <bit>
#include <cctype>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>

#include <openssl/evp.h>

namespace framepart {

using nlohmann::json;

VectorFormat format_for_path(const std::filesystem::path& path) {
    auto ext = path.extension().string();
    for (auto& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return ext == ".csv" ? VectorFormat::Csv : VectorFormat::Json;
}

json vectors_to_json(const UnitVectorSequence& seq) {
    json doc;
    doc["format"] = "frame-vectors";
    doc["version"] = 1;
    doc["dim"] = seq.dim();
    doc["field"] = to_string(seq.field());
    doc["count"] = seq.size();
    json vectors = json::array();
    const Matrix& f = seq.coordinates();
    for (Eigen::Index k = 0; k < f.cols(); ++k) {
        json v = json::array();
        for (Eigen::Index j = 0; j < f.rows(); ++j) {
            if (seq.field() == Field::Real) v.push_back(f(j, k).real());
            else v.push_back(json::array({f(j, k).real(), f(j, k).imag()}));
        }
        vectors.push_back(std::move(v));
    }
    doc["vectors"] = std::move(vectors);
    if (!seq.labels().empty()) doc["labels"] = seq.labels();
    return doc;
}

namespace {

double json_number(const json& v, const char* what) {
    if (!v.is_number()) throw FormatError(std::string(what) + " must be a number");
    return v.get<double>();
}

std::size_t json_size(const json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_number_unsigned())
        throw FormatError(std::string("\"") + key + "\" must be a nonnegative integer");
    return doc[key].get<std::size_t>();
}

// Strict full-token parse; accepts what strtod accepts, including exponents.
double parse_number(std::string_view token, std::size_t line) {
    auto trimmed = token;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.remove_prefix(1);
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.remove_suffix(1);
    std::string s(trimmed);
    if (s.empty()) throw FormatError("empty cell on line " + std::to_string(line));
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE)
        throw FormatError("cannot parse number '" + s + "' on line " + std::to_string(line));
    return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string format_double(double v) {
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.17g", v);
    return buf.data();
}

}  // namespace

UnitVectorSequence vectors_from_json(const json& doc, bool renormalize) {
    if (!doc.is_object()) throw FormatError("vector file must be a JSON object");
    if (doc.contains("format") && doc["format"] != "frame-vectors")
        throw FormatError("unexpected \"format\" in vector file");
    if (doc.contains("version") && doc["version"] != 1) throw FormatError("unsupported vector file version");
    const std::size_t dim = json_size(doc, "dim");
    if (!doc.contains("field") || !doc["field"].is_string()) throw FormatError("\"field\" must be a string");
    Field field;
    try {
        field = field_from_string(doc["field"].get<std::string>());
    } catch (const ArgumentError& e) {
        throw FormatError(e.what());
    }
    if (!doc.contains("vectors") || !doc["vectors"].is_array()) throw FormatError("\"vectors\" must be an array");
    const auto& vectors = doc["vectors"];
    if (doc.contains("count") && json_size(doc, "count") != vectors.size())
        throw FormatError("\"count\" does not match the number of vectors");

    std::vector<std::vector<Scalar>> rows;
    rows.reserve(vectors.size());
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        const auto& v = vectors[k];
        if (!v.is_array() || v.size() != dim)
            throw FormatError("vector " + std::to_string(k) + " must have " + std::to_string(dim) + " entries");
        std::vector<Scalar> row;
        row.reserve(dim);
        for (const auto& entry : v) {
            if (field == Field::Real) {
                row.emplace_back(json_number(entry, "real coordinate"), 0.0);
            } else {
                if (!entry.is_array() || entry.size() != 2)
                    throw FormatError("complex coordinates must be [re, im] pairs");
                row.emplace_back(json_number(entry[0], "real part"), json_number(entry[1], "imaginary part"));
            }
        }
        rows.push_back(std::move(row));
    }

    std::vector<std::string> labels;
    if (doc.contains("labels")) {
        if (!doc["labels"].is_array()) throw FormatError("\"labels\" must be an array of strings");
        for (const auto& l : doc["labels"]) {
            if (!l.is_string()) throw FormatError("\"labels\" must be an array of strings");
            labels.push_back(l.get<std::string>());
        }
    }

    try {
        return UnitVectorSequence(field, dim, std::move(rows), std::move(labels), renormalize);
    } catch (const DimensionError& e) {
        throw FormatError(e.what());
    } catch (const ArgumentError& e) {
        throw FormatError(e.what());
    }
}

std::string vectors_to_csv(const UnitVectorSequence& seq) {
    std::ostringstream os;
    os << "# dim=" << seq.dim() << " field=" << to_string(seq.field()) << " count=" << seq.size() << "\n";
    const Matrix& f = seq.coordinates();
    for (Eigen::Index k = 0; k < f.cols(); ++k) {
        for (Eigen::Index j = 0; j < f.rows(); ++j) {
            if (j > 0) os << ',';
            os << format_double(f(j, k).real());
            if (seq.field() == Field::Complex) os << ':' << format_double(f(j, k).imag());
        }
        os << '\n';
    }
    return os.str();
}

UnitVectorSequence vectors_from_csv(const std::string& text, bool renormalize) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;

    std::optional<std::size_t> dim, count;
    std::optional<Field> field;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        if (line.rfind('#', 0) != 0) throw FormatError("CSV vector file must start with a '# dim=... field=...' header");
        std::istringstream header(line.substr(1));
        std::string item;
        while (header >> item) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw FormatError("malformed CSV header item '" + item + "'");
            const auto key = item.substr(0, eq);
            const auto value = item.substr(eq + 1);
            try {
                if (key == "dim") dim = std::stoul(value);
                else if (key == "count") count = std::stoul(value);
                else if (key == "field") field = field_from_string(value);
            } catch (const std::exception&) {
                throw FormatError("malformed CSV header value '" + item + "'");
            }
        }
        break;
    }
    if (!dim || !field) throw FormatError("CSV header must declare dim and field");

    std::vector<std::vector<Scalar>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos || line.front() == '#') continue;
        const auto cells = split(line, ',');
        std::vector<Scalar> row;
        if (*field == Field::Real) {
            if (cells.size() != *dim)
                throw FormatError("line " + std::to_string(line_no) + " must have " + std::to_string(*dim) + " cells");
            for (auto c : cells) row.emplace_back(parse_number(c, line_no), 0.0);
        } else if (cells.size() == *dim) {
            for (auto c : cells) {
                const auto colon = c.find(':');
                if (colon == std::string_view::npos)
                    throw FormatError("complex cell on line " + std::to_string(line_no) + " must be re:im");
                row.emplace_back(parse_number(c.substr(0, colon), line_no), parse_number(c.substr(colon + 1), line_no));
            }
        } else if (cells.size() == 2 * *dim) {
            for (std::size_t j = 0; j < *dim; ++j)
                row.emplace_back(parse_number(cells[2 * j], line_no), parse_number(cells[2 * j + 1], line_no));
        } else {
            throw FormatError("line " + std::to_string(line_no) + " must have " + std::to_string(*dim) +
                              " re:im cells or " + std::to_string(2 * *dim) + " numbers");
        }
        rows.push_back(std::move(row));
    }
    if (count && *count != rows.size()) throw FormatError("CSV header count does not match the number of rows");

    try {
        return UnitVectorSequence(*field, *dim, std::move(rows), {}, renormalize);
    } catch (const DimensionError& e) {
        throw FormatError(e.what());
    } catch (const ArgumentError& e) {
        throw FormatError(e.what());
    }
}

std::string serialize_vectors(const UnitVectorSequence& seq, VectorFormat format) {
    return format == VectorFormat::Csv ? vectors_to_csv(seq) : vectors_to_json(seq).dump(2) + "\n";
}

UnitVectorSequence parse_vectors(const std::string& text, VectorFormat format, bool renormalize) {
    if (format == VectorFormat::Csv) return vectors_from_csv(text, renormalize);
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
    return vectors_from_json(doc, renormalize);
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream os;
    os << in.rdbuf();
    if (in.bad()) throw IoError("error reading '" + path.string() + "'");
    return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("error writing '" + path.string() + "'");
}

UnitVectorSequence read_vector_file(const std::filesystem::path& path, bool renormalize) {
    return parse_vectors(read_text_file(path), format_for_path(path), renormalize);
}

void write_vector_file(const std::filesystem::path& path, const UnitVectorSequence& seq) {
    write_vector_file(path, seq, format_for_path(path));
}

void write_vector_file(const std::filesystem::path& path, const UnitVectorSequence& seq, VectorFormat format) {
    write_text_file(path, serialize_vectors(seq, format));
}

std::string input_digest(const UnitVectorSequence& seq) {
    std::string bytes = "frame-vectors/1 " + to_string(seq.field()) + " " + std::to_string(seq.dim()) + " " +
                        std::to_string(seq.size()) + "\n";
    auto append = [&bytes](double v) {
        auto bits = std::bit_cast<std::uint64_t>(v);
        for (int b = 0; b < 8; ++b) bytes.push_back(static_cast<char>((bits >> (8 * b)) & 0xffu));
    };
    const Matrix& f = seq.coordinates();
    for (Eigen::Index k = 0; k < f.cols(); ++k) {
        for (Eigen::Index j = 0; j < f.rows(); ++j) {
            append(f(j, k).real());
            if (seq.field() == Field::Complex) append(f(j, k).imag());
        }
    }

    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 digest failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out = "sha256:";
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xf]);
    }
    return out;
}

}  // namespace framepart
