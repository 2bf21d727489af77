// SPDX-License-Identifier: MIT
#include "gclt/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "gclt/error.hpp"

namespace gclt {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) { row(header); }

void CsvWriter::row(const std::vector<std::string>& fields) {
    if (fields.size() != width_) throw Error(ErrorCode::InvalidArgument, "CSV row width mismatch");
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) buf_ += ',';
        buf_ += escape(fields[i]);
    }
    buf_ += '\n';
}

void CsvWriter::save(const std::filesystem::path& path) const { write_text(path, buf_); }

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    out << text;
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::string render_svg_chart(const std::string& title, const std::vector<SvgSeries>& series, bool log_x,
                             bool log_y) {
    constexpr double kW = 640, kH = 420, kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
    auto tx = [&](double v) { return log_x ? std::log10(v) : v; };
    auto ty = [&](double v) { return log_y ? std::log10(v) : v; };

    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if ((log_x && s.x[i] <= 0) || (log_y && s.y[i] <= 0)) continue;
            x0 = std::min(x0, tx(s.x[i]));
            x1 = std::max(x1, tx(s.x[i]));
            y0 = std::min(y0, ty(s.y[i]));
            y1 = std::max(y1, ty(s.y[i]));
        }
    }
    if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) y1 = y0 + 1;
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;
    auto px = [&](double v) { return kLeft + (tx(v) - x0) / (x1 - x0) * (kW - kLeft - kRight); };
    auto py = [&](double v) { return kH - kBottom - (ty(v) - y0) / (y1 - y0) * (kH - kTop - kBottom); };

    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" viewBox=\"0 0 %g %g\">\n",
                  kW, kH, kW, kH);
    out += buf;
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%g\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\">",
                  kW / 2);
    out += buf + title + "</text>\n";
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" stroke=\"#444\"/>\n", kLeft,
                  kTop, kW - kLeft - kRight, kH - kTop - kBottom);
    out += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"11\">%s%.4g .. %.4g</text>\n",
                  kLeft, kH - 15, log_x ? "log10 x: " : "x: ", x0, x1);
    out += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"11\">%s%.4g .. %.4g</text>\n",
                  kW / 2, kH - 15, log_y ? "log10 y: " : "y: ", y0, y1);
    out += buf;

    double legend_y = kTop + 16;
    for (const auto& s : series) {
        if (s.line) {
            out += "<polyline fill=\"none\" stroke=\"" + s.colour + "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if ((log_x && s.x[i] <= 0) || (log_y && s.y[i] <= 0)) continue;
                std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(s.x[i]), py(s.y[i]));
                out += buf;
            }
            out += "\"/>\n";
        } else {
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if ((log_x && s.x[i] <= 0) || (log_y && s.y[i] <= 0)) continue;
                std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3.5\" fill=\"%s\"/>\n",
                              px(s.x[i]), py(s.y[i]), s.colour.c_str());
                out += buf;
            }
        }
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" font-size=\"12\" fill=\"%s\">",
                      kLeft + 10, legend_y, s.colour.c_str());
        out += buf + s.label + "</text>\n";
        legend_y += 16;
    }
    out += "</svg>\n";
    return out;
}

}  // namespace gclt
