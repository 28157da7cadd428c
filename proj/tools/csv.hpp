#pragma once

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace rydsim::harness {

// Floats are serialized with 17 significant digits so matched-seed runs
// produce byte-identical CSV bodies.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot open output file: " + path);
    }

    void raw_row(const std::string& line) { out_ << line << "\n"; }

    void begin_row() { first_ = true; }
    void field(const std::string& v) {
        if (!first_) out_ << ",";
        out_ << v;
        first_ = false;
    }
    void field(double v) { field(format_double(v)); }
    void field(std::uint64_t v) { field(std::to_string(v)); }
    void field(int v) { field(std::to_string(v)); }
    void end_row() { out_ << "\n"; }

  private:
    std::ofstream out_;
    bool first_ = true;
};

}  // namespace rydsim::harness
