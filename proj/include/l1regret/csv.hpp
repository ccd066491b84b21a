#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace l1regret {

/// Shortest text that round-trips the double exactly.
inline std::string csv_cell(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string csv_cell(long long v) { return std::to_string(v); }
inline std::string csv_cell(int v) { return std::to_string(v); }
inline std::string csv_cell(const std::string& v) { return v; }

/// Line-oriented CSV writer: UTF-8, '\n' endings, no trailing whitespace.
class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot open output file: " + path);
    }

    void header(const std::string& line) { out_ << line << '\n'; }

    template <class... Cells>
    void row(const Cells&... cells) {
        bool first = true;
        (
            [&] {
                if (!first) out_ << ',';
                first = false;
                out_ << csv_cell(cells);
            }(),
            ...);
        out_ << '\n';
    }

    void close() {
        out_.close();
        if (!out_) throw std::runtime_error("failed to flush CSV output");
    }

  private:
    std::ofstream out_;
};

}  // namespace l1regret
