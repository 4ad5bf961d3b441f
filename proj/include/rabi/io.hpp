// io.hpp — deterministic CSV emission: '#'-prefixed key=value metadata block,
// one header row, data rows with 17-significant-digit floats (bit-faithful
// round trip), plus the metadata parser used to re-run a recorded config.

#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rabi {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

using MetadataBlock = std::vector<std::pair<std::string, std::string>>;

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : path_(path), out_(path) {
        if (!out_) throw IoError("cannot open output file: " + path);
    }

    void write_metadata(const MetadataBlock& meta) {
        for (const auto& [key, value] : meta) out_ << "# " << key << "=" << value << "\n";
        check();
    }

    void write_header(const std::vector<std::string>& columns) {
        write_strings(columns);
    }

    void write_row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out_ << ",";
            out_ << format_double(values[i]);
        }
        out_ << "\n";
        check();
    }

    void write_strings(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ",";
            out_ << cells[i];
        }
        out_ << "\n";
        check();
    }

    void close() {
        out_.close();
        if (out_.fail()) throw IoError("write failed: " + path_);
    }

private:
    void check() {
        if (out_.fail()) throw IoError("write failed: " + path_);
    }

    std::string path_;
    std::ofstream out_;
};

// Leading '# key=value' lines of an emitted file.
inline MetadataBlock parse_metadata(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path);
    MetadataBlock meta;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) != 0) break;
        const std::string body = line.substr(2);
        const auto eq = body.find('=');
        if (eq == std::string::npos) continue;
        meta.emplace_back(body.substr(0, eq), body.substr(eq + 1));
    }
    return meta;
}

inline std::string metadata_value(const MetadataBlock& meta, const std::string& key,
                                  const std::string& fallback = "") {
    for (const auto& [k, v] : meta)
        if (k == key) return v;
    return fallback;
}

// Clamp probabilities into [0, 1] at the reporting layer, counting how often
// clamping actually fired.
struct ClampStats {
    std::size_t events = 0;

    double operator()(double v) {
        if (v < 0.0) {
            ++events;
            return 0.0;
        }
        if (v > 1.0) {
            ++events;
            return 1.0;
        }
        return v;
    }
};

}  // namespace rabi
