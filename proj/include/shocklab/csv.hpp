#ifndef SHOCKLAB_CSV_HPP
#define SHOCKLAB_CSV_HPP

#include <string>
#include <vector>

namespace shocklab {

// Minimal CSV emitter. Numbers are written with %.17g so that files are
// byte-identical across runs and round-trip exactly.
class CsvWriter {
public:
  explicit CsvWriter(std::vector<std::string> columns);

  void add_row(const std::vector<double>& row);
  void add_text_row(const std::vector<std::string>& row);
  void add_comment(const std::string& text);  // emitted as "# text" lines

  std::string str() const;
  void write(const std::string& path) const;

  static std::string format(double value);

private:
  std::vector<std::string> columns_;
  std::vector<std::string> lines_;
};

}  // namespace shocklab

#endif
