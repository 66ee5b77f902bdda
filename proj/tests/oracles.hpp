#pragma once

// Independent reference implementations used to check the library.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace oracle {

struct Prf {
    double p = 0, r = 0, f1 = 0;
};

// Counts the intersection by nested loops rather than set algorithms.
inline Prf prf(const std::vector<std::string>& extracted, const std::vector<std::string>& gold) {
    std::size_t tp = 0;
    for (const auto& e : extracted)
        for (const auto& g : gold)
            if (e == g) ++tp;
    Prf out;
    out.p = extracted.empty() ? 0.0 : double(tp) / double(extracted.size());
    out.r = gold.empty() ? 0.0 : double(tp) / double(gold.size());
    out.f1 = out.p + out.r == 0 ? 0.0 : 2 * out.p * out.r / (out.p + out.r);
    return out;
}

// TF-IDF over whitespace-separated lowercase words: count * ln(D/df), then
// unit length. Returns token -> weight per document; zero documents are empty.
inline std::vector<std::map<std::string, double>> tfidf(const std::vector<std::string>& docs) {
    std::vector<std::map<std::string, double>> counts(docs.size());
    std::map<std::string, int> df;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        std::istringstream in(docs[i]);
        std::string w;
        while (in >> w) counts[i][w] += 1;
        for (const auto& [t, c] : counts[i]) ++df[t];
    }
    const double d = double(docs.size());
    for (auto& doc : counts) {
        double sq = 0;
        for (auto& [t, c] : doc) {
            c *= std::log(d / df[t]);
            sq += c * c;
        }
        for (auto it = doc.begin(); it != doc.end();) {
            if (sq == 0 || it->second == 0) it = doc.erase(it);
            else {
                it->second /= std::sqrt(sq);
                ++it;
            }
        }
    }
    return counts;
}

// Mean silhouette by the textbook definition over dense points.
inline double silhouette(const std::vector<std::vector<double>>& pts, const std::vector<std::size_t>& label) {
    const auto dist = [&](std::size_t i, std::size_t j) {
        double s = 0;
        for (std::size_t d = 0; d < pts[i].size(); ++d) s += (pts[i][d] - pts[j][d]) * (pts[i][d] - pts[j][d]);
        return std::sqrt(s);
    };
    std::set<std::size_t> clusters(label.begin(), label.end());
    double total = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::map<std::size_t, std::pair<double, int>> acc;
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (j != i) {
                acc[label[j]].first += dist(i, j);
                acc[label[j]].second += 1;
            }
        if (acc[label[i]].second == 0) continue;  // singleton scores 0
        const double a = acc[label[i]].first / acc[label[i]].second;
        double b = INFINITY;
        for (std::size_t c : clusters)
            if (c != label[i] && acc[c].second > 0) b = std::min(b, acc[c].first / acc[c].second);
        const double m = std::max(a, b);
        total += m > 0 ? (b - a) / m : 0;
    }
    return total / double(pts.size());
}

}  // namespace oracle
