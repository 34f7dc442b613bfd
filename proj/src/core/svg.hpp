#pragma once

#include <string>
#include <vector>

#include "core/distance_study.hpp"

namespace kinexam {

// Static display-only SVG, deterministic output.

// Scatter of 2D points colored by label (0 normal, 1 abnormal).
std::string svg_scatter(const std::vector<std::vector<double>>& points,
                        const std::vector<int>& labels,
                        const std::string& title);

// One box-plot triple (A-A, N-N, N-A) per feature.
std::string svg_distance_boxes(const DistanceReport& report,
                               std::size_t max_features = 12);

}  // namespace kinexam
