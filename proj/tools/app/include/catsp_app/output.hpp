#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace catsp::app {

// Shortest round-trippable decimal text for a double; "nan"/"inf" spelled out.
std::string fmt(double v);

// Minimal CSV builder. Cells are quoted only when they need it.
class Csv {
 public:
  explicit Csv(std::vector<std::string> header);
  void add(std::vector<std::string> row);
  std::string str() const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct Stats {
  std::size_t count = 0;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 below two values
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
};

Stats describe(std::span<const double> values);

struct FrontPoint {
  double f1 = 0.0;
  double f2 = 0.0;
};

// Scatter plot of a bi-objective front with axes and min/max tick labels.
std::string front_svg(std::span<const FrontPoint> points, std::string_view title);

// File-name-safe form of an identifier (':' and '/' become '-').
std::string safe_name(std::string_view id);

}  // namespace catsp::app
