#include "core/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "core/stats.hpp"

namespace kinexam {

void FeatureMatrix::check_rectangular() const {
  for (const auto& r : rows) {
    if (r.size() != column_names.size())
      throw ValueError("feature matrix is not rectangular");
  }
  if (labels.size() != rows.size() || groups.size() != rows.size() ||
      devices.size() != rows.size() || recording_ids.size() != rows.size())
    throw ValueError("feature matrix metadata length mismatch");
}

FeatureMatrix FeatureMatrix::select_rows(
    const std::vector<std::size_t>& idx) const {
  FeatureMatrix out;
  out.column_names = column_names;
  for (std::size_t i : idx) {
    out.rows.push_back(rows[i]);
    out.labels.push_back(labels[i]);
    out.groups.push_back(groups[i]);
    out.devices.push_back(devices[i]);
    out.recording_ids.push_back(recording_ids[i]);
  }
  return out;
}

Standardizer Standardizer::fit(const FeatureMatrix& train) {
  train.check_rectangular();
  if (train.n_rows() == 0) throw EmptyMatrixError("no training rows");

  Standardizer s;
  for (std::size_t c = 0; c < train.n_cols(); ++c) {
    std::vector<double> present;
    for (const auto& row : train.rows) {
      if (std::isfinite(row[c])) present.push_back(row[c]);
    }
    // A column nobody produced carries no information either way.
    if (present.empty()) {
      s.dropped.push_back(train.column_names[c]);
      continue;
    }
    const double med = median_of(present);
    std::vector<double> imputed;
    imputed.reserve(train.n_rows());
    for (const auto& row : train.rows)
      imputed.push_back(std::isfinite(row[c]) ? row[c] : med);
    const double m = mean_of(imputed);
    const double sd = std_of(imputed);
    if (sd < 1e-12) {
      s.dropped.push_back(train.column_names[c]);
      continue;
    }
    s.kept_columns.push_back(c);
    s.kept_names.push_back(train.column_names[c]);
    s.medians.push_back(med);
    s.means.push_back(m);
    s.stds.push_back(sd);
  }
  if (s.kept_columns.empty())
    throw EmptyMatrixError("all columns constant or empty");
  return s;
}

FeatureMatrix Standardizer::apply(const FeatureMatrix& m) const {
  m.check_rectangular();
  FeatureMatrix out;
  out.column_names = kept_names;
  out.labels = m.labels;
  out.groups = m.groups;
  out.devices = m.devices;
  out.recording_ids = m.recording_ids;
  out.rows.reserve(m.n_rows());
  for (const auto& row : m.rows) {
    std::vector<double> r(kept_columns.size());
    for (std::size_t j = 0; j < kept_columns.size(); ++j) {
      const double raw = row[kept_columns[j]];
      const double v = std::isfinite(raw) ? raw : medians[j];
      r[j] = (v - means[j]) / stds[j];
    }
    out.rows.push_back(std::move(r));
  }
  return out;
}

EigenResult jacobi_eigen_symmetric(const std::vector<double>& a_in,
                                   std::size_t n, double tolerance,
                                   int max_sweeps) {
  if (a_in.size() != n * n) throw ValueError("matrix shape mismatch");
  std::vector<double> a = a_in;
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  auto off_norm = [&]() {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) s += a[p * n + q] * a[p * n + q];
    return std::sqrt(2.0 * s);
  };

  double frob = 0.0;
  for (double x : a) frob += x * x;
  frob = std::sqrt(frob);
  const double stop = tolerance * std::max(1.0, frob);

  bool converged = off_norm() <= stop;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (std::abs(apq) <= stop / static_cast<double>(n * n)) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k];
          const double aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p];
          const double vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
    converged = off_norm() <= stop;
  }
  if (!converged)
    throw ConvergenceError("Jacobi sweeps exhausted before reaching tolerance");

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a[x * n + x] > a[y * n + y];
  });

  EigenResult res;
  for (std::size_t oi = 0; oi < n; ++oi) {
    const std::size_t col = order[oi];
    res.eigenvalues.push_back(a[col * n + col]);
    std::vector<double> vec(n);
    for (std::size_t k = 0; k < n; ++k) vec[k] = v[k * n + col];
    // Deterministic sign: largest-magnitude entry positive.
    std::size_t big = 0;
    for (std::size_t k = 1; k < n; ++k)
      if (std::abs(vec[k]) > std::abs(vec[big])) big = k;
    if (vec[big] < 0.0)
      for (double& x : vec) x = -x;
    res.eigenvectors.push_back(std::move(vec));
  }
  return res;
}

PcaResult pca(const FeatureMatrix& m, std::size_t k) {
  m.check_rectangular();
  const std::size_t n = m.n_rows();
  const std::size_t d = m.n_cols();
  if (n < 2) throw EmptyMatrixError("PCA needs at least 2 rows");
  if (k < 1 || k > d) throw ValueError("PCA component count out of range");

  PcaResult res;
  res.column_means.assign(d, 0.0);
  for (const auto& row : m.rows)
    for (std::size_t c = 0; c < d; ++c) res.column_means[c] += row[c];
  for (double& v : res.column_means) v /= static_cast<double>(n);

  std::vector<double> cov(d * d, 0.0);
  for (const auto& row : m.rows) {
    for (std::size_t i = 0; i < d; ++i) {
      const double a = row[i] - res.column_means[i];
      for (std::size_t j = i; j < d; ++j) {
        cov[i * d + j] += a * (row[j] - res.column_means[j]);
      }
    }
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      cov[i * d + j] /= static_cast<double>(n - 1);
      cov[j * d + i] = cov[i * d + j];
    }

  const EigenResult eig = jacobi_eigen_symmetric(cov, d, 1e-12, 100);
  double total = 0.0;
  for (double ev : eig.eigenvalues) total += std::max(ev, 0.0);

  for (std::size_t c = 0; c < k; ++c) {
    res.components.push_back(eig.eigenvectors[c]);
    res.explained_variance.push_back(
        total > 0.0 ? std::max(eig.eigenvalues[c], 0.0) / total : 0.0);
  }
  for (const auto& row : m.rows) {
    std::vector<double> proj(k, 0.0);
    for (std::size_t c = 0; c < k; ++c) {
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j)
        s += (row[j] - res.column_means[j]) * res.components[c][j];
      proj[c] = s;
    }
    res.projections.push_back(std::move(proj));
  }
  return res;
}

}  // namespace kinexam
