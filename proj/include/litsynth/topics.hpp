#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "litsynth/tfidf.hpp"

namespace litsynth {

using DenseVector = std::vector<double>;

struct KMeansOptions {
    int max_iterations = 300;
    double tolerance = 1e-6;  // max centroid movement
    int restarts = 10;        // best objective wins; each restart reseeds from the stream
};

struct KMeansResult {
    std::vector<DenseVector> centroids;
    std::vector<std::size_t> assignment;
    /// Objective after each assignment step of the winning restart; non-increasing.
    std::vector<double> objective_history;
    double objective = 0;
    int iterations = 0;
};

/// Lloyd's algorithm with k-means++ seeding over sparse points of the given
/// dimension. Draws come from a std::mt19937_64 seeded with `seed`, using the
/// top 53 bits of each output, so results are identical across platforms.
/// Ties go to the lowest index.
KMeansResult kmeans(const std::vector<SparseVector>& points, std::size_t dimension, std::size_t k, std::uint64_t seed,
                    const KMeansOptions& opts = {});

/// Mean silhouette with Euclidean distance; points in singleton clusters score 0.
double silhouette(const std::vector<SparseVector>& points, const std::vector<std::size_t>& assignment);

class ClusteringError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TopicModel {
    std::size_t k = 0;
    std::vector<std::string> doc_ids;  // order used by `centroids` rows and assignment
    std::vector<DenseVector> centroids;
    std::map<std::string, std::size_t> assignment;
    double silhouette = 0;
    std::map<std::size_t, double> silhouette_by_k;
    std::vector<std::vector<std::string>> labels;  // top-weight centroid terms
    friend bool operator==(const TopicModel&, const TopicModel&) = default;
};

/// min(10, D - 1).
std::size_t default_k_max(std::size_t documents);

/// Runs k-means for every k in [k_min, k_max] and keeps the k with the
/// highest mean silhouette (ties: smallest k). Throws ClusteringError when
/// there are fewer than 3 documents or the range is outside [2, D-1].
TopicModel cluster_topics(const TfidfIndex& index, std::size_t k_min, std::size_t k_max, std::uint64_t seed,
                          std::size_t label_terms = 5);

/// All documents in one cluster; used when there are too few documents to
/// cluster. Silhouette is reported as 0.
TopicModel single_topic(const TfidfIndex& index, std::size_t label_terms = 5);

DenseVector to_dense(const SparseVector& v, std::size_t dimension);
SparseVector to_sparse(const DenseVector& v);

}  // namespace litsynth
