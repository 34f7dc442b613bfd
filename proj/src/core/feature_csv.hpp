#pragma once

#include <iosfwd>

#include "core/analysis.hpp"
#include "core/feature_vector.hpp"

namespace kinexam {

// Feature table schema: recording_id,subject_id,device,label, then feature
// columns by catalogue name. Absent features are empty cells (NaN on read).
void write_feature_csv(const std::vector<FeatureVector>& features,
                       const std::vector<const PoseRecording*>& recordings,
                       std::ostream& out);

FeatureMatrix read_feature_csv(std::istream& in);

// Matrix assembled in memory (column union in catalogue order).
FeatureMatrix to_feature_matrix(const std::vector<FeatureVector>& features,
                                const std::vector<const PoseRecording*>& recs);

}  // namespace kinexam
