// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scinet contributors
#include "scinet/metricstats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>

#include "scinet/csv.hpp"
#include "scinet/graph_io.hpp"

namespace scinet {

const char* to_string(CellStatus s) {
    switch (s) {
    case CellStatus::Ok: return "ok";
    case CellStatus::InsufficientOverlap: return "insufficient_overlap";
    case CellStatus::UndefinedCorrelation: return "undefined_correlation";
    }
    return "ok";
}

SpearmanOutcome spearman_ranks(std::span<const std::string> journals_a,
                               std::span<const double> ranks_a,
                               std::span<const std::string> journals_b,
                               std::span<const double> ranks_b) {
    SpearmanOutcome out;
    std::vector<double> xs, ys;
    std::size_t i = 0, j = 0;
    while (i < journals_a.size() && j < journals_b.size()) {
        const int cmp = journals_a[i].compare(journals_b[j]);
        if (cmp < 0) {
            ++i;
        } else if (cmp > 0) {
            ++j;
        } else {
            xs.push_back(ranks_a[i]);
            ys.push_back(ranks_b[j]);
            ++i;
            ++j;
        }
    }
    out.common_n = xs.size();
    if (xs.size() < 3) {
        out.status = CellStatus::InsufficientOverlap;
        return out;
    }
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double dx = xs[k] - mx;
        const double dy = ys[k] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) {
        out.status = CellStatus::UndefinedCorrelation;
        return out;
    }
    out.value = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    return out;
}

CorrelationMatrix correlation_matrix(std::span<const MetricRanking> rankings) {
    if (rankings.size() < 2)
        throw ConfigError("correlation matrix needs at least two rankings");
    const std::size_t m = rankings.size();
    CorrelationMatrix c;
    c.labels.reserve(m);
    for (const auto& r : rankings) c.labels.push_back(r.spec.label());
    c.values.assign(m * m, 0.0);
    c.statuses.assign(m * m, CellStatus::Ok);
    for (std::size_t i = 0; i < m; ++i) c.values[i * m + i] = 1.0;

    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const auto r = spearman_ranks(rankings[i].journals, rankings[i].ranks,
                                          rankings[j].journals, rankings[j].ranks);
            const double v = r.status == CellStatus::Ok ? r.value : 0.0;
            c.values[i * m + j] = v;
            c.values[j * m + i] = v;
            c.statuses[i * m + j] = r.status;
            c.statuses[j * m + i] = r.status;
        }
    }

    // Journals shared by the whole catalog.
    std::vector<std::string> common = rankings[0].journals;
    for (std::size_t i = 1; i < m && !common.empty(); ++i) {
        std::vector<std::string> next;
        std::set_intersection(common.begin(), common.end(), rankings[i].journals.begin(),
                              rankings[i].journals.end(), std::back_inserter(next));
        common.swap(next);
    }
    c.common_n = common.size();
    return c;
}

bool CorrelationMatrix::symmetric(double tol) const {
    const std::size_t m = labels.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (std::abs(at(i, j) - at(j, i)) > tol) return false;
    return true;
}

EigenDecomposition symmetric_eigen(std::span<const double> matrix, std::size_t n) {
    std::vector<double> a(matrix.begin(), matrix.end());
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += a[i * n + j] * a[i * n + j];
        return s;
    };
    double scale = 0.0;
    for (std::size_t i = 0; i < n * n; ++i) scale = std::max(scale, std::abs(a[i]));
    const double stop = (scale > 0.0 ? scale * scale : 1.0) * 1e-30 *
                        static_cast<double>(n * n);

    for (int sweep = 0; sweep < 100 && off_norm() > stop; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double app = a[p * n + p];
                const double aqq = a[q * n + q];
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double cos = 1.0 / std::sqrt(t * t + 1.0);
                const double sin = t * cos;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k * n + p];
                    const double akq = a[k * n + q];
                    a[k * n + p] = cos * akp - sin * akq;
                    a[k * n + q] = sin * akp + cos * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p * n + k];
                    const double aqk = a[q * n + k];
                    a[p * n + k] = cos * apk - sin * aqk;
                    a[q * n + k] = sin * apk + cos * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k * n + p];
                    const double vkq = v[k * n + q];
                    v[k * n + p] = cos * vkp - sin * vkq;
                    v[k * n + q] = sin * vkp + cos * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return a[x * n + x] > a[y * n + y];
    });

    EigenDecomposition dec;
    dec.values.reserve(n);
    dec.vectors.reserve(n);
    for (const std::size_t col : order) {
        dec.values.push_back(a[col * n + col]);
        std::vector<double> vec(n);
        for (std::size_t k = 0; k < n; ++k) vec[k] = v[k * n + col];
        // Deterministic sign: largest-magnitude entry positive.
        std::size_t arg = 0;
        for (std::size_t k = 1; k < n; ++k)
            if (std::abs(vec[k]) > std::abs(vec[arg])) arg = k;
        if (vec[arg] < 0.0)
            for (auto& x : vec) x = -x;
        dec.vectors.push_back(std::move(vec));
    }
    return dec;
}

PcaProjection pca(const CorrelationMatrix& c, std::size_t k) {
    const std::size_t n = c.size();
    if (k > n) throw ConfigError("requested more components than the matrix dimension");
    if (n == 0) throw ConfigError("empty correlation matrix");
    const auto dec = symmetric_eigen(c.values, n);

    PcaProjection p;
    p.labels = c.labels;
    p.eigenvalues = dec.values;
    double positive_sum = 0.0;
    for (const double ev : dec.values) positive_sum += std::max(ev, 0.0);
    p.explained.reserve(n);
    for (const double ev : dec.values)
        p.explained.push_back(positive_sum > 0.0 ? std::max(ev, 0.0) / positive_sum : 0.0);

    p.coordinates.assign(n, std::vector<double>(k, 0.0));
    for (std::size_t m = 0; m < k; ++m) {
        const double s = std::sqrt(std::max(dec.values[m], 0.0));
        for (std::size_t i = 0; i < n; ++i) p.coordinates[i][m] = dec.vectors[m][i] * s;
    }
    return p;
}

void write_correlation_csv(std::ostream& out, const CorrelationMatrix& c) {
    out << "metric";
    for (const auto& l : c.labels) out << ',' << csv_quote(l);
    out << '\n';
    const std::size_t m = c.size();
    for (std::size_t i = 0; i < m; ++i) {
        out << csv_quote(c.labels[i]);
        for (std::size_t j = 0; j < m; ++j) out << ',' << format_double(c.at(i, j));
        out << '\n';
    }
}

CorrelationMatrix read_correlation_csv(std::istream& in) {
    if (in.fail()) throw IoError("unreadable correlation stream");
    CorrelationMatrix c;
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty correlation file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = csv_split(line);
    if (!header || header->size() < 2 || (*header)[0] != "metric")
        throw ConfigError("bad correlation header");
    c.labels.assign(header->begin() + 1, header->end());
    const std::size_t m = c.labels.size();
    c.values.assign(m * m, 0.0);
    c.statuses.assign(m * m, CellStatus::Ok);
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (row >= m) throw ConfigError("correlation file has too many rows");
        const auto fields = csv_split(line);
        if (!fields || fields->size() != m + 1)
            throw ConfigError("correlation row " + std::to_string(row) + ": bad field count");
        if ((*fields)[0] != c.labels[row])
            throw ConfigError("correlation row label mismatch: " + (*fields)[0]);
        for (std::size_t j = 0; j < m; ++j) {
            const auto& s = (*fields)[j + 1];
            double v = 0.0;
            const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
            if (res.ec != std::errc() || res.ptr != s.data() + s.size())
                throw ConfigError("correlation cell parse failure: " + s);
            c.values[row * m + j] = v;
        }
        ++row;
    }
    if (row != m) throw ConfigError("correlation file is missing rows");
    return c;
}

void write_pca_csv(std::ostream& out, const PcaProjection& p) {
    const std::size_t k = p.coordinates.empty() ? 0 : p.coordinates[0].size();
    out << "metric";
    for (std::size_t m = 0; m < k; ++m) out << ",pca" << (m + 1);
    out << '\n';
    for (std::size_t i = 0; i < p.labels.size(); ++i) {
        out << csv_quote(p.labels[i]);
        for (std::size_t m = 0; m < k; ++m) out << ',' << format_double(p.coordinates[i][m]);
        out << '\n';
    }
    out << "explained";
    for (std::size_t m = 0; m < k; ++m) out << ',' << format_double(p.explained[m]);
    out << '\n';
}

std::string pca_scatter_svg(const PcaProjection& p, double width) {
    double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
    for (const auto& c : p.coordinates) {
        if (c.size() < 2) continue;
        min_x = std::min(min_x, c[0]);
        max_x = std::max(max_x, c[0]);
        min_y = std::min(min_y, c[1]);
        max_y = std::max(max_y, c[1]);
    }
    const double span_x = std::max(max_x - min_x, 1e-9);
    const double span_y = std::max(max_y - min_y, 1e-9);
    const double margin = width * 0.08;
    const double inner = width - 2.0 * margin;
    auto sx = [&](double x) { return margin + (x - min_x) / span_x * inner; };
    auto sy = [&](double y) { return width - margin - (y - min_y) / span_y * inner; };

    std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_fixed(width, 0) +
           "\" height=\"" + format_fixed(width, 0) + "\" viewBox=\"0 0 " +
           format_fixed(width, 0) + " " + format_fixed(width, 0) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + format_fixed(width / 2.0, 1) + "\" y=\"" +
           format_fixed(width - margin / 3.0, 1) +
           "\" text-anchor=\"middle\" font-size=\"14\">PCA1</text>\n";
    svg += "<text x=\"" + format_fixed(margin / 3.0, 1) + "\" y=\"" +
           format_fixed(width / 2.0, 1) +
           "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 " +
           format_fixed(margin / 3.0, 1) + " " + format_fixed(width / 2.0, 1) +
           ")\">PCA2</text>\n";
    for (std::size_t i = 0; i < p.labels.size(); ++i) {
        if (p.coordinates[i].size() < 2) continue;
        const double x = sx(p.coordinates[i][0]);
        const double y = sy(p.coordinates[i][1]);
        svg += "<circle cx=\"" + format_fixed(x, 2) + "\" cy=\"" + format_fixed(y, 2) +
               "\" r=\"4\" fill=\"steelblue\"/>\n";
        svg += "<text x=\"" + format_fixed(x + 6.0, 2) + "\" y=\"" + format_fixed(y - 4.0, 2) +
               "\" font-size=\"10\">" + xml_escape(p.labels[i]) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace scinet
