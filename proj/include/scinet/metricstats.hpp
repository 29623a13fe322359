// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scinet contributors
#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "scinet/metrics.hpp"

namespace scinet {

enum class CellStatus { Ok, InsufficientOverlap, UndefinedCorrelation };

const char* to_string(CellStatus s);

struct SpearmanOutcome {
    double value = 0.0;
    CellStatus status = CellStatus::Ok;
    std::size_t common_n = 0;
};

/// Spearman rank-order correlation: Pearson correlation of the two
/// average-rank vectors restricted to the journals both rankings cover.
/// journals_* must be sorted ascending with ranks parallel to them.
SpearmanOutcome spearman_ranks(std::span<const std::string> journals_a,
                               std::span<const double> ranks_a,
                               std::span<const std::string> journals_b,
                               std::span<const double> ranks_b);

struct CorrelationMatrix {
    std::vector<std::string> labels;
    std::vector<double> values;      // row-major, symmetric, unit diagonal
    std::vector<CellStatus> statuses;
    std::size_t common_n = 0; // journals shared by every ranking

    std::size_t size() const { return labels.size(); }
    double at(std::size_t i, std::size_t j) const { return values[i * labels.size() + j]; }
    CellStatus status_at(std::size_t i, std::size_t j) const {
        return statuses[i * labels.size() + j];
    }
    bool symmetric(double tol = 0.0) const;
};

/// Pairwise Spearman over the per-pair journal intersection. Undefined
/// cells are set to 0 and flagged; the matrix is always produced.
CorrelationMatrix correlation_matrix(std::span<const MetricRanking> rankings);

struct PcaProjection {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> coordinates; // one k-vector per metric
    std::vector<double> eigenvalues;              // all, descending, raw
    std::vector<double> explained;                // per component, clamped fractions
};

/// Eigendecomposition of the correlation matrix; coordinates are
/// eigenvector entries scaled by the square root of the (non-negative
/// part of the) eigenvalue. Sign convention: the largest-magnitude entry
/// of every eigenvector is positive.
PcaProjection pca(const CorrelationMatrix& c, std::size_t k);

struct EigenDecomposition {
    std::vector<double> values;               // descending
    std::vector<std::vector<double>> vectors; // vectors[m][i], orthonormal
};

/// Cyclic Jacobi on a dense symmetric matrix (row-major, n x n).
EigenDecomposition symmetric_eigen(std::span<const double> matrix, std::size_t n);

void write_correlation_csv(std::ostream& out, const CorrelationMatrix& c);
CorrelationMatrix read_correlation_csv(std::istream& in);

/// metric,x,y rows followed by one explained-variance row.
void write_pca_csv(std::ostream& out, const PcaProjection& p);

/// 2-D scatter of the first two components, labels per metric.
std::string pca_scatter_svg(const PcaProjection& p, double width = 1000.0);

} // namespace scinet
