#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pttb::svg {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

void line_chart(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
                const std::string& y_label, const std::vector<Series>& series);

struct Heatmap {
    std::string title;
    std::vector<std::string> row_labels;
    std::vector<std::string> column_labels;
    std::vector<std::vector<double>> values;  // rows × columns, drawn in [0, 1]
    /// Drawn as a red polyline across rows, one value per row in [0.5, 1].
    std::optional<std::vector<double>> row_overlay;
    /// Marked with a red circle, in (column, row) cell coordinates.
    std::optional<std::pair<double, double>> marker;
};

void heatmap(const std::filesystem::path& path, const Heatmap& map);

}  // namespace pttb::svg
