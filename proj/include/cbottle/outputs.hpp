#pragma once

#include <string>
#include <vector>

namespace cbottle::io {

inline constexpr const char* kArtifactVersion = "cbottle 0.1.0";

/// "value" with 17 significant digits, locale-independent.
std::string format_double(double v);

// CSV file with a '#'-prefixed provenance block (artifact version plus the
// resolved config), one exact header line, then rows of 17-digit floats.
class CsvWriter {
  public:
    CsvWriter(std::string header, std::string provenance)
        : header_(std::move(header)), provenance_(std::move(provenance)) {}

    void add_row(const std::vector<std::string>& cells);
    std::string str() const;

  private:
    std::string header_;
    std::string provenance_;
    std::vector<std::string> rows_;
};

// Minimal self-contained SVG scatter/line canvas. Data coordinates are
// mapped to a fixed pixel viewport; y grows upward.
class SvgCanvas {
  public:
    SvgCanvas(double x_lo, double x_hi, double y_lo, double y_hi,
              int width = 900, int height = 700);

    void set_provenance(std::string provenance) {
        provenance_ = std::move(provenance);
    }
    void polyline(const std::vector<std::pair<double, double>>& pts,
                  const std::string& stroke, double width = 1.5);
    void circle(double x, double y, double radius_px,
                const std::string& fill);
    void parallelogram(double ax, double ay, double v1x, double v1y,
                       double v2x, double v2y, const std::string& stroke);
    void text(double x, double y, const std::string& s);
    std::string str() const;

  private:
    double px(double x) const;
    double py(double y) const;

    double x_lo_, x_hi_, y_lo_, y_hi_;
    int width_, height_;
    std::string provenance_;
    std::vector<std::string> body_;
};

/// Write content to dir/name. Throws IoError when the directory does not
/// exist, or when the file exists and force is false.
void write_file(const std::string& dir, const std::string& name,
                const std::string& content, bool force);

}  // namespace cbottle::io
