#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace iesim::tools {

// I/O problems map to exit code 3; the path rides along for the message.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& path)
        : std::runtime_error("cannot write output file: " + path) {}
};

// Fixed-format double -> text ('.' decimal separator, locale-independent).
std::string fmt(double v, int precision);

// Minimal CSV writer: one header line, comma delimiter, '\n' line ends.
class CsvWriter {
public:
    CsvWriter(const std::string& path, int precision);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void header(const std::vector<std::string>& names);
    void row(const std::vector<double>& values);
    void named_row(const std::string& label, const std::vector<double>& values);

private:
    std::FILE* file_;
    std::string path_;
    int precision_;
};

struct Series {
    std::string name;
    std::vector<double> y;
};

// Simple polyline chart; CSV stays the authoritative artifact.
void write_line_chart(const std::string& path, const std::string& title,
                      const std::vector<double>& x, const std::vector<Series>& series);

// Heat-map raster with a linear two-stop color ramp.
void write_heatmap_svg(const std::string& path, const std::string& title,
                       const std::vector<double>& x_axis, const std::vector<double>& y_axis,
                       const std::vector<double>& values /* x-major */);

// Replaces (or appends) the file extension with .svg.
std::string svg_path_for(const std::string& csv_path);

}  // namespace iesim::tools
