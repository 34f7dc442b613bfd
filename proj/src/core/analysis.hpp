#pragma once

#include <string>
#include <vector>

#include "core/errors.hpp"

namespace kinexam {

// Row-major numeric matrix of named feature columns plus per-row metadata.
// Missing values are NaN until imputation.
struct FeatureMatrix {
  std::vector<std::string> column_names;
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;               // 0 normal, 1 abnormal
  std::vector<std::string> groups;       // subject ids
  std::vector<std::string> devices;
  std::vector<std::string> recording_ids;

  std::size_t n_rows() const { return rows.size(); }
  std::size_t n_cols() const { return column_names.size(); }
  void check_rectangular() const;

  FeatureMatrix select_rows(const std::vector<std::size_t>& idx) const;
};

// Column transform fitted on training rows only: median imputation for
// missing cells followed by z-scoring. Constant columns are dropped.
struct Standardizer {
  std::vector<std::size_t> kept_columns;
  std::vector<std::string> kept_names;
  std::vector<double> medians;
  std::vector<double> means;
  std::vector<double> stds;
  std::vector<std::string> dropped;  // names of constant columns

  static Standardizer fit(const FeatureMatrix& train);
  FeatureMatrix apply(const FeatureMatrix& m) const;
};

// Jacobi eigen-decomposition of a symmetric matrix (row-major n*n).
// Eigenvalues descending; eigenvectors[k] is the unit eigenvector of
// eigenvalues[k].
struct EigenResult {
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> eigenvectors;
};

EigenResult jacobi_eigen_symmetric(const std::vector<double>& a,
                                   std::size_t n, double tolerance = 1e-12,
                                   int max_sweeps = 100);

struct PcaResult {
  std::vector<std::vector<double>> components;   // k unit vectors of dim d
  std::vector<std::vector<double>> projections;  // n rows of dim k
  std::vector<double> explained_variance;        // ratios, descending
  std::vector<double> column_means;              // centering applied
};

// PCA of an already standardized matrix via the sample covariance.
PcaResult pca(const FeatureMatrix& m, std::size_t k);

}  // namespace kinexam
