#ifndef SHOCKLAB_SVG_HPP
#define SHOCKLAB_SVG_HPP

#include <string>
#include <vector>

namespace shocklab {

// Tiny line-plot SVG writer; enough for the diagnostic figures and free of
// external dependencies. Axes are linear or log10 per dimension.
class SvgPlot {
public:
  SvgPlot(std::string title, std::string x_label, std::string y_label,
          bool log_x = false, bool log_y = false);

  void add_series(const std::string& name, const std::vector<double>& x,
                  const std::vector<double>& y);
  void add_comment(const std::string& text);  // embedded as an XML comment

  std::string str() const;
  void write(const std::string& path) const;

private:
  struct Series {
    std::string name;
    std::vector<double> x, y;
  };

  std::string title_, x_label_, y_label_;
  bool log_x_, log_y_;
  std::vector<Series> series_;
  std::vector<std::string> comments_;
};

}  // namespace shocklab

#endif
