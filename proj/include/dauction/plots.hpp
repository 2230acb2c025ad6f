#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace dauction::plots {

struct Series {
    std::string name;
    std::vector<double> values;
};

/// Grouped bar chart: one group per category, one bar per series.
void write_bar_chart(const std::filesystem::path& path, const std::string& title, const std::string& y_label,
                     const std::vector<std::string>& categories, const std::vector<Series>& series);

/// Line chart of each series against shared x values.
void write_line_chart(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
                      const std::string& y_label, const std::vector<double>& xs, const std::vector<Series>& series);

} // namespace dauction::plots
