// SPDX-License-Identifier: MIT
#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace gclt {

/// Shortest round-trip decimal form ("%.17g"), '.' decimal separator.
std::string format_number(double v);

/// RFC-4180 CSV with LF line endings, written in one piece on save().
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);

    void row(const std::vector<std::string>& fields);
    std::string str() const { return buf_; }
    void save(const std::filesystem::path& path) const;

private:
    std::size_t width_;
    std::string buf_;
};

struct SvgSeries {
    std::string label;
    std::string colour;
    std::vector<double> x;
    std::vector<double> y;
    bool line = false;  ///< polyline instead of markers
};

/// Plain SVG chart; axes are log10-scaled when requested.
std::string render_svg_chart(const std::string& title, const std::vector<SvgSeries>& series, bool log_x,
                             bool log_y);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace gclt
