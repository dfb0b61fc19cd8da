// cli_io.hpp - CSV and manifest output for the batch runner. Reals are
// written with 17 significant digits so CSV bodies round-trip doubles and
// re-runs are byte-identical; timestamps appear only in the manifest.
#pragma once

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace xxz::cli {

inline constexpr const char* kVersion = "0.1.0";

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string format_int(long long v) { return std::to_string(v); }

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& file, const std::vector<std::string>& header)
        : out_(file) {
        if (!out_) throw std::runtime_error("cannot open output file: " + file.string());
        row(header);
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

inline void write_manifest(const std::filesystem::path& dir, const std::string& command,
                           const std::vector<std::pair<std::string, std::string>>& entries) {
    std::ofstream out(dir / "manifest.txt");
    if (!out) throw std::runtime_error("cannot open manifest in " + dir.string());
    out << "artifact_version = " << kVersion << "\n";
    out << "command = " << command << "\n";
    for (const auto& [k, v] : entries) out << k << " = " << v << "\n";
    const auto now = std::chrono::system_clock::now();
    out << "written_at_unix = "
        << std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count()
        << "\n";
}

}  // namespace xxz::cli
