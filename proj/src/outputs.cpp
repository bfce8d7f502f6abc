#include "cbottle/outputs.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cbottle/errors.hpp"

namespace cbottle::io {

std::string format_double(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of negative zero
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
    std::string row;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) row += ',';
        row += cells[i];
    }
    rows_.push_back(std::move(row));
}

std::string CsvWriter::str() const {
    std::ostringstream os;
    os << "# " << kArtifactVersion << "\n";
    std::istringstream prov(provenance_);
    std::string line;
    while (std::getline(prov, line)) os << "# " << line << "\n";
    os << header_ << "\n";
    for (const auto& r : rows_) os << r << "\n";
    return os.str();
}

SvgCanvas::SvgCanvas(double x_lo, double x_hi, double y_lo, double y_hi,
                     int width, int height)
    : x_lo_(x_lo), x_hi_(x_hi), y_lo_(y_lo), y_hi_(y_hi),
      width_(width), height_(height) {}

double SvgCanvas::px(double x) const {
    return 40.0 + (x - x_lo_) / (x_hi_ - x_lo_) * (width_ - 80.0);
}

double SvgCanvas::py(double y) const {
    return height_ - 40.0 - (y - y_lo_) / (y_hi_ - y_lo_) * (height_ - 80.0);
}

void SvgCanvas::polyline(const std::vector<std::pair<double, double>>& pts,
                         const std::string& stroke, double width) {
    std::ostringstream os;
    os << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\""
       << width << "\" points=\"";
    for (const auto& [x, y] : pts) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px(x), py(y));
        os << buf;
    }
    os << "\"/>";
    body_.push_back(os.str());
}

void SvgCanvas::circle(double x, double y, double radius_px,
                       const std::string& fill) {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"%s\"/>",
                  px(x), py(y), radius_px, fill.c_str());
    body_.push_back(buf);
}

void SvgCanvas::parallelogram(double ax, double ay, double v1x, double v1y,
                              double v2x, double v2y,
                              const std::string& stroke) {
    polyline({{ax, ay},
              {ax + v1x, ay + v1y},
              {ax + v1x + v2x, ay + v1y + v2y},
              {ax + v2x, ay + v2y},
              {ax, ay}},
             stroke, 2.0);
}

void SvgCanvas::text(double x, double y, const std::string& s) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.2f\" y=\"%.2f\" font-size=\"14\" "
                  "font-family=\"sans-serif\">%s</text>",
                  px(x), py(y), s.c_str());
    body_.push_back(buf);
}

std::string SvgCanvas::str() const {
    std::ostringstream os;
    os << "<!--\n" << kArtifactVersion << "\n" << provenance_ << "-->\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_
       << "\" height=\"" << height_ << "\" viewBox=\"0 0 " << width_ << " "
       << height_ << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& el : body_) os << el << "\n";
    os << "</svg>\n";
    return os.str();
}

void write_file(const std::string& dir, const std::string& name,
                const std::string& content, bool force) {
    namespace fs = std::filesystem;
    const fs::path d(dir);
    if (!fs::is_directory(d))
        throw IoError("output directory does not exist: " + dir);
    const fs::path target = d / name;
    if (fs::exists(target) && !force)
        throw IoError("refusing to overwrite " + target.string() +
                      " (use --force)");
    std::ofstream out(target, std::ios::binary);
    if (!out) throw IoError("cannot open " + target.string() + " for writing");
    out << content;
    if (!out) throw IoError("short write to " + target.string());
}

}  // namespace cbottle::io
