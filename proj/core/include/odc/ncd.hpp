#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "odc/bytes.hpp"
#include "odc/codec.hpp"

namespace odc {

inline constexpr double kSelfDistanceEpsilon = 0.1;  // expected ncd(x,x) ceiling on real text
inline constexpr double kNcdCap = 1.5;               // compressor-imperfection ceiling

// Normalized compression distance. `codec` = nullopt means ensemble-best
// sizes. C(xy) is the min over both concatenation orders, so the result is
// exactly symmetric; clamped to [0, kNcdCap].
double ncd(const ByteObject& x, const ByteObject& y,
           std::optional<CodecId> codec = CodecId::Lz);

struct DistanceMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> values;  // symmetric, diagonal fixed at 0
};

DistanceMatrix distance_matrix(const std::vector<ByteObject>& objects,
                               std::optional<CodecId> codec = CodecId::Lz);

// Merge tree: leaves are 0..n-1 in label order of the input matrix; internal
// node i (counting from 0) gets id n+i. Heights are merge distances.
struct Merge {
    int left = 0;
    int right = 0;
    double height = 0;
};

struct Dendrogram {
    std::vector<std::string> labels;
    std::vector<Merge> merges;  // size = labels.size() - 1, heights non-decreasing
};

// Average linkage; tie on minimum distance broken by the lexicographically
// smallest (label, label) pair, so results are input-order invariant.
Dendrogram cluster(const DistanceMatrix& m);

// Partition from removing the top k-1 merges. Clusters and their members are
// sorted lexicographically.
std::vector<std::vector<std::string>> cut_clusters(const Dendrogram& d, std::size_t k);

// Fraction of leaves whose cluster's majority family matches their own.
// `truth` must cover every leaf label.
double purity(const Dendrogram& d, std::size_t k,
              const std::map<std::string, std::string>& truth);

std::string to_newick(const Dendrogram& d);

} // namespace odc
