#include "litsynth/topics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>

namespace litsynth {

namespace {

double sq_norm(const SparseVector& v) {
    double s = 0;
    for (const auto& [i, w] : v) s += w * w;
    return s;
}

double sq_norm(const DenseVector& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return s;
}

double dot_dense(const SparseVector& x, const DenseVector& c) {
    double s = 0;
    for (const auto& [i, w] : x) s += w * c[i];
    return s;
}

// Squared distances via norms and a dot product; clamped at zero against
// rounding.
double sq_dist(const SparseVector& x, double x_norm, const DenseVector& c, double c_norm) {
    return std::max(0.0, x_norm + c_norm - 2.0 * dot_dense(x, c));
}

double sq_dist(const SparseVector& a, double a_norm, const SparseVector& b, double b_norm) {
    return std::max(0.0, a_norm + b_norm - 2.0 * dot(a, b));
}

double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct Points {
    const std::vector<SparseVector>& v;
    std::vector<double> norms;
    std::size_t dim;
};

std::vector<std::size_t> seed_plus_plus(const Points& p, std::size_t k, std::mt19937_64& rng) {
    const std::size_t n = p.v.size();
    const auto draw_index = [&] { return std::min(n - 1, static_cast<std::size_t>(uniform(rng) * static_cast<double>(n))); };
    std::vector<std::size_t> centers{draw_index()};
    std::vector<double> d2(n, std::numeric_limits<double>::infinity());
    while (centers.size() < k) {
        const std::size_t last = centers.back();
        double total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], sq_dist(p.v[i], p.norms[i], p.v[last], p.norms[last]));
            total += d2[i];
        }
        std::size_t pick = n - 1;
        if (total <= 0) {
            pick = draw_index();
        } else {
            const double target = uniform(rng) * total;
            double acc = 0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc > target) {
                    pick = i;
                    break;
                }
            }
        }
        centers.push_back(pick);
    }
    return centers;
}

double assign(const Points& p, const std::vector<DenseVector>& centers, std::vector<std::size_t>& assignment) {
    std::vector<double> c_norm;
    for (const auto& c : centers) c_norm.push_back(sq_norm(c));
    double objective = 0;
    for (std::size_t i = 0; i < p.v.size(); ++i) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < centers.size(); ++c) {
            const double d = sq_dist(p.v[i], p.norms[i], centers[c], c_norm[c]);
            if (d < best_d) {
                best_d = d;
                best = c;
            }
        }
        assignment[i] = best;
        objective += best_d;
    }
    return objective;
}

KMeansResult lloyd(const Points& p, std::vector<DenseVector> centers, const KMeansOptions& opts) {
    const std::size_t n = p.v.size(), k = centers.size();
    KMeansResult r;
    r.assignment.assign(n, 0);
    for (int it = 0; it < opts.max_iterations; ++it) {
        r.objective = assign(p, centers, r.assignment);
        r.objective_history.push_back(r.objective);
        r.iterations = it + 1;

        std::vector<DenseVector> next(k, DenseVector(p.dim, 0.0));
        std::vector<std::size_t> count(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            ++count[r.assignment[i]];
            for (const auto& [d, w] : p.v[i]) next[r.assignment[i]][d] += w;
        }
        for (std::size_t c = 0; c < k; ++c)
            if (count[c] != 0)
                for (auto& x : next[c]) x /= static_cast<double>(count[c]);
        // An empty cluster takes the point farthest from its own centroid.
        for (std::size_t c = 0; c < k; ++c) {
            if (count[c] != 0) continue;
            std::size_t far = 0;
            double far_d = -1;
            for (std::size_t i = 0; i < n; ++i) {
                const auto& own = next[r.assignment[i]];
                const double d = sq_dist(p.v[i], p.norms[i], own, sq_norm(own));
                if (d > far_d) {
                    far_d = d;
                    far = i;
                }
            }
            next[c] = to_dense(p.v[far], p.dim);
            --count[r.assignment[far]];
            r.assignment[far] = c;
            count[c] = 1;
        }
        double moved = 0;
        for (std::size_t c = 0; c < k; ++c) {
            double s = 0;
            for (std::size_t d = 0; d < p.dim; ++d) s += (centers[c][d] - next[c][d]) * (centers[c][d] - next[c][d]);
            moved = std::max(moved, std::sqrt(s));
        }
        centers = std::move(next);
        if (moved <= opts.tolerance) break;
    }
    r.objective = assign(p, centers, r.assignment);
    if (r.objective < r.objective_history.back()) r.objective_history.push_back(r.objective);
    r.centroids = std::move(centers);
    return r;
}

std::vector<std::vector<std::string>> centroid_labels(const TfidfIndex& index, const std::vector<DenseVector>& centroids,
                                                      std::size_t n) {
    std::vector<std::vector<std::string>> labels;
    for (const auto& c : centroids) {
        std::vector<std::size_t> order(c.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return c[a] > c[b]; });
        std::vector<std::string> terms;
        for (std::size_t i = 0; i < order.size() && terms.size() < n; ++i)
            if (c[order[i]] > 0) terms.push_back(index.token(order[i]));
        labels.push_back(std::move(terms));
    }
    return labels;
}

}  // namespace

DenseVector to_dense(const SparseVector& v, std::size_t dimension) {
    DenseVector out(dimension, 0.0);
    for (const auto& [i, w] : v) out.at(i) = w;
    return out;
}

SparseVector to_sparse(const DenseVector& v) {
    SparseVector out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) out.emplace_back(i, v[i]);
    return out;
}

KMeansResult kmeans(const std::vector<SparseVector>& points, std::size_t dimension, std::size_t k, std::uint64_t seed,
                    const KMeansOptions& opts) {
    if (k == 0 || k > points.size()) throw ClusteringError("k must be in [1, number of points]");
    Points p{points, {}, dimension};
    for (const auto& v : points) p.norms.push_back(sq_norm(v));
    std::mt19937_64 rng(seed);
    std::optional<KMeansResult> best;
    for (int r = 0; r < std::max(1, opts.restarts); ++r) {
        std::vector<DenseVector> centers;
        for (std::size_t i : seed_plus_plus(p, k, rng)) centers.push_back(to_dense(points[i], dimension));
        auto result = lloyd(p, std::move(centers), opts);
        if (!best || result.objective < best->objective) best = std::move(result);
    }
    return *best;
}

double silhouette(const std::vector<SparseVector>& points, const std::vector<std::size_t>& assignment) {
    const std::size_t n = points.size();
    if (n == 0) return 0;
    const std::size_t k = *std::max_element(assignment.begin(), assignment.end()) + 1;
    std::vector<std::size_t> size(k, 0);
    for (auto a : assignment) ++size[a];
    std::vector<double> norms;
    for (const auto& v : points) norms.push_back(sq_norm(v));
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (size[assignment[i]] <= 1) continue;
        std::vector<double> sum(k, 0.0);
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) sum[assignment[j]] += std::sqrt(sq_dist(points[i], norms[i], points[j], norms[j]));
        const double a = sum[assignment[i]] / static_cast<double>(size[assignment[i]] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c)
            if (c != assignment[i] && size[c] > 0) b = std::min(b, sum[c] / static_cast<double>(size[c]));
        if (!std::isfinite(b)) continue;
        const double m = std::max(a, b);
        total += m > 0 ? (b - a) / m : 0.0;
    }
    return total / static_cast<double>(n);
}

std::size_t default_k_max(std::size_t documents) { return documents < 2 ? 1 : std::min<std::size_t>(10, documents - 1); }

TopicModel cluster_topics(const TfidfIndex& index, std::size_t k_min, std::size_t k_max, std::uint64_t seed,
                          std::size_t label_terms) {
    TopicModel model;
    std::vector<SparseVector> pts;
    for (const auto& [id, v] : index.doc_vectors) {
        model.doc_ids.push_back(id);
        pts.push_back(v);
    }
    const std::size_t d = pts.size();
    if (d < 3) throw ClusteringError("clustering needs at least 3 documents, got " + std::to_string(d));
    if (k_min < 2 || k_max > d - 1 || k_min > k_max)
        throw ClusteringError("k range [" + std::to_string(k_min) + ", " + std::to_string(k_max) + "] outside [2, " +
                              std::to_string(d - 1) + "]");

    std::optional<KMeansResult> best;
    for (std::size_t k = k_min; k <= k_max; ++k) {
        auto r = kmeans(pts, index.dimension(), k, seed);
        const double s = silhouette(pts, r.assignment);
        model.silhouette_by_k[k] = s;
        if (!best || s > model.silhouette) {
            model.silhouette = s;
            model.k = k;
            best = std::move(r);
        }
    }
    model.centroids = best->centroids;
    for (std::size_t i = 0; i < d; ++i) model.assignment[model.doc_ids[i]] = best->assignment[i];
    model.labels = centroid_labels(index, model.centroids, label_terms);
    return model;
}

TopicModel single_topic(const TfidfIndex& index, std::size_t label_terms) {
    TopicModel model;
    model.k = 1;
    DenseVector c(index.dimension(), 0.0);
    const double n = static_cast<double>(std::max<std::size_t>(1, index.doc_vectors.size()));
    for (const auto& [id, v] : index.doc_vectors) {
        model.doc_ids.push_back(id);
        model.assignment[id] = 0;
        for (const auto& [i, w] : v) c[i] += w / n;
    }
    model.centroids.push_back(std::move(c));
    model.labels = centroid_labels(index, model.centroids, label_terms);
    return model;
}

}  // namespace litsynth
