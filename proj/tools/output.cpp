#include "output.hpp"

#include <algorithm>
#include <cmath>

namespace iesim::tools {

std::string fmt(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, int precision)
    : file_(std::fopen(path.c_str(), "wb")), path_(path), precision_(precision) {
    if (!file_) throw IoError(path);
}

CsvWriter::~CsvWriter() {
    if (file_) std::fclose(file_);
}

void CsvWriter::header(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i)
        std::fprintf(file_, "%s%s", i ? "," : "", names[i].c_str());
    std::fputc('\n', file_);
}

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i)
        std::fprintf(file_, "%s%s", i ? "," : "", fmt(values[i], precision_).c_str());
    if (std::fputc('\n', file_) == EOF) throw IoError(path_);
}

void CsvWriter::named_row(const std::string& label, const std::vector<double>& values) {
    std::fprintf(file_, "%s", label.c_str());
    for (const double v : values) std::fprintf(file_, ",%s", fmt(v, precision_).c_str());
    if (std::fputc('\n', file_) == EOF) throw IoError(path_);
}

namespace {

constexpr int kW = 860;
constexpr int kH = 520;
constexpr int kMargin = 60;
constexpr const char* kPalette[6] = {"#1b6ca8", "#c0392b", "#27ae60",
                                     "#8e44ad", "#d68910", "#117a65"};

struct Range {
    double lo, hi;
    double map(double v, double px_lo, double px_hi) const {
        const double t = hi > lo ? (v - lo) / (hi - lo) : 0.5;
        return px_lo + t * (px_hi - px_lo);
    }
};

Range find_range(const std::vector<double>& v) {
    double lo = v.empty() ? 0.0 : v.front();
    double hi = lo;
    for (double x : v) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    if (hi == lo) hi = lo + 1.0;
    return {lo, hi};
}

std::FILE* open_svg(const std::string& path, const std::string& title) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw IoError(path);
    std::fprintf(f,
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                 "viewBox=\"0 0 %d %d\">\n<rect width=\"%d\" height=\"%d\" fill=\"white\"/>\n"
                 "<text x=\"%d\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">%s</text>\n",
                 kW, kH, kW, kH, kW, kH, kMargin, title.c_str());
    return f;
}

}  // namespace

void write_line_chart(const std::string& path, const std::string& title,
                      const std::vector<double>& x, const std::vector<Series>& series) {
    std::FILE* f = open_svg(path, title);
    const Range xr = find_range(x);
    std::vector<double> all;
    for (const auto& s : series) all.insert(all.end(), s.y.begin(), s.y.end());
    const Range yr = find_range(all);

    std::fprintf(f,
                 "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n"
                 "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n",
                 kMargin, kH - kMargin, kW - kMargin / 2, kH - kMargin, kMargin, kMargin / 2,
                 kMargin, kH - kMargin);
    std::fprintf(f,
                 "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" font-size=\"12\">%s</text>\n"
                 "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" font-size=\"12\">%s</text>\n"
                 "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" font-size=\"12\">%s</text>\n"
                 "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" font-size=\"12\">%s</text>\n",
                 kMargin, kH - kMargin + 16, fmt(xr.lo, 6).c_str(), kW - kMargin, kH - kMargin + 16,
                 fmt(xr.hi, 6).c_str(), 8, kH - kMargin, fmt(yr.lo, 6).c_str(), 8, kMargin / 2 + 8,
                 fmt(yr.hi, 6).c_str());

    for (std::size_t s = 0; s < series.size(); ++s) {
        std::fprintf(f, "<polyline fill=\"none\" stroke=\"%s\" stroke-width=\"1.5\" points=\"",
                     kPalette[s % 6]);
        for (std::size_t i = 0; i < x.size() && i < series[s].y.size(); ++i) {
            const double px = xr.map(x[i], kMargin, kW - kMargin / 2);
            const double py = yr.map(series[s].y[i], kH - kMargin, kMargin / 2);
            std::fprintf(f, "%s%s,%s", i ? " " : "", fmt(px, 8).c_str(), fmt(py, 8).c_str());
        }
        std::fprintf(f, "\"/>\n");
        std::fprintf(f,
                     "<text x=\"%d\" y=\"%zu\" font-family=\"sans-serif\" font-size=\"12\" "
                     "fill=\"%s\">%s</text>\n",
                     kW - kMargin * 3, kMargin / 2 + 16 * (s + 1), kPalette[s % 6],
                     series[s].name.c_str());
    }
    std::fprintf(f, "</svg>\n");
    std::fclose(f);
}

void write_heatmap_svg(const std::string& path, const std::string& title,
                       const std::vector<double>& x_axis, const std::vector<double>& y_axis,
                       const std::vector<double>& values) {
    std::FILE* f = open_svg(path, title);
    const Range vr = find_range(values);
    const double cell_w = static_cast<double>(kW - 2 * kMargin) / static_cast<double>(x_axis.size());
    const double cell_h = static_cast<double>(kH - 2 * kMargin) / static_cast<double>(y_axis.size());
    for (std::size_t i = 0; i < x_axis.size(); ++i) {
        for (std::size_t j = 0; j < y_axis.size(); ++j) {
            const double v = values[i * y_axis.size() + j];
            const double t = (v - vr.lo) / (vr.hi - vr.lo);
            // dark blue (#20123a) -> yellow (#f5d742), linear
            const int r = static_cast<int>(std::lround(0x20 + t * (0xf5 - 0x20)));
            const int g = static_cast<int>(std::lround(0x12 + t * (0xd7 - 0x12)));
            const int b = static_cast<int>(std::lround(0x3a + t * (0x42 - 0x3a)));
            const double px = kMargin + static_cast<double>(i) * cell_w;
            const double py = (kH - kMargin) - static_cast<double>(j + 1) * cell_h;
            std::fprintf(f,
                         "<rect x=\"%s\" y=\"%s\" width=\"%s\" height=\"%s\" "
                         "fill=\"#%02x%02x%02x\"/>\n",
                         fmt(px, 8).c_str(), fmt(py, 8).c_str(), fmt(cell_w + 0.5, 8).c_str(),
                         fmt(cell_h + 0.5, 8).c_str(), r, g, b);
        }
    }
    std::fprintf(f,
                 "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" font-size=\"12\">"
                 "t_bar %s..%s, u_prime %s..%s, value %s..%s</text>\n",
                 kMargin, kH - kMargin + 20, fmt(x_axis.front(), 6).c_str(),
                 fmt(x_axis.back(), 6).c_str(), fmt(y_axis.front(), 6).c_str(),
                 fmt(y_axis.back(), 6).c_str(), fmt(vr.lo, 6).c_str(), fmt(vr.hi, 6).c_str());
    std::fprintf(f, "</svg>\n");
    std::fclose(f);
}

std::string svg_path_for(const std::string& csv_path) {
    const auto dot = csv_path.find_last_of('.');
    const auto slash = csv_path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return csv_path + ".svg";
    return csv_path.substr(0, dot) + ".svg";
}

}  // namespace iesim::tools
