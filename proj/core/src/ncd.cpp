#include "odc/ncd.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <set>

#include "odc/errors.hpp"

namespace odc {

namespace {

std::uint64_t csize(const Bytes& data, std::optional<CodecId> codec) {
    if (codec) return compress(data, *codec).size();
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (CodecId id : codec_list()) best = std::min<std::uint64_t>(best, compress(data, id).size());
    return best;
}

Bytes concat(const Bytes& a, const Bytes& b) {
    Bytes out;
    out.reserve(a.size() + b.size());
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

} // namespace

double ncd(const ByteObject& x, const ByteObject& y, std::optional<CodecId> codec) {
    if (x.empty() || y.empty()) throw error("ncd requires non-empty objects");
    std::uint64_t cx = csize(x.bytes, codec);
    std::uint64_t cy = csize(y.bytes, codec);
    std::uint64_t cxy =
        std::min(csize(concat(x.bytes, y.bytes), codec), csize(concat(y.bytes, x.bytes), codec));
    double v = (double(cxy) - double(std::min(cx, cy))) / double(std::max(cx, cy));
    return std::clamp(v, 0.0, kNcdCap);
}

DistanceMatrix distance_matrix(const std::vector<ByteObject>& objects,
                               std::optional<CodecId> codec) {
    if (objects.size() < 2) throw error("distance matrix needs at least 2 objects");
    std::set<std::string> seen;
    for (auto& o : objects)
        if (!seen.insert(o.label).second) throw error("duplicate label: " + o.label);

    DistanceMatrix m;
    for (auto& o : objects) m.labels.push_back(o.label);
    const std::size_t n = objects.size();
    m.values.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            m.values[i][j] = m.values[j][i] = ncd(objects[i], objects[j], codec);
    return m;
}

Dendrogram cluster(const DistanceMatrix& m) {
    const std::size_t n = m.labels.size();
    if (n < 2) throw error("clustering needs at least 2 objects");

    struct Cl {
        int node;                 // dendrogram node id
        std::size_t size;         // member count, for the weighted average
        std::string min_label;    // tie-break key
    };
    std::vector<Cl> active;
    std::vector<std::vector<double>> dist = m.values;
    for (std::size_t i = 0; i < n; ++i) active.push_back({int(i), 1, m.labels[i]});

    Dendrogram d;
    d.labels = m.labels;
    int next_node = int(n);
    while (active.size() > 1) {
        std::size_t bi = 0, bj = 1;
        for (std::size_t i = 0; i < active.size(); ++i) {
            for (std::size_t j = i + 1; j < active.size(); ++j) {
                double cur = dist[i][j], best = dist[bi][bj];
                if (cur > best) continue;
                if (cur < best) {
                    bi = i;
                    bj = j;
                    continue;
                }
                auto key = [&](std::size_t a, std::size_t b) {
                    return std::minmax(active[a].min_label, active[b].min_label);
                };
                if (key(i, j) < key(bi, bj)) {
                    bi = i;
                    bj = j;
                }
            }
        }
        // left child = lexicographically smaller side, for canonical trees
        std::size_t lo = bi, hi = bj;
        if (active[hi].min_label < active[lo].min_label) std::swap(lo, hi);
        d.merges.push_back({active[lo].node, active[hi].node, dist[bi][bj]});

        Cl merged{next_node++, active[bi].size + active[bj].size,
                  std::min(active[bi].min_label, active[bj].min_label)};
        std::vector<double> row(active.size(), 0.0);
        for (std::size_t t = 0; t < active.size(); ++t) {
            if (t == bi || t == bj) continue;
            row[t] = (double(active[bi].size) * dist[bi][t] + double(active[bj].size) * dist[bj][t]) /
                     double(merged.size);
        }
        // drop bj first (bj > bi) so bi's index stays valid
        auto drop = [&](std::size_t at) {
            active.erase(active.begin() + long(at));
            row.erase(row.begin() + long(at));
            dist.erase(dist.begin() + long(at));
            for (auto& r : dist) r.erase(r.begin() + long(at));
        };
        drop(bj);
        drop(bi);
        active.push_back(merged);
        row.push_back(0.0);
        for (std::size_t t = 0; t + 1 < active.size(); ++t) dist[t].push_back(row[t]);
        dist.push_back(std::move(row));
    }
    return d;
}

std::vector<std::vector<std::string>> cut_clusters(const Dendrogram& d, std::size_t k) {
    const std::size_t n = d.labels.size();
    if (k < 1 || k > n) throw error("cluster cut count must be in [1, leaf count]");

    std::map<int, std::vector<std::string>> comp;
    for (std::size_t i = 0; i < n; ++i) comp[int(i)] = {d.labels[i]};
    for (std::size_t i = 0; i + k < n; ++i) {  // replay all but the top k-1 merges
        auto& merge = d.merges[i];
        std::vector<std::string> joined = std::move(comp.at(merge.left));
        auto& right = comp.at(merge.right);
        joined.insert(joined.end(), right.begin(), right.end());
        comp.erase(merge.left);
        comp.erase(merge.right);
        comp[int(n + i)] = std::move(joined);
    }
    std::vector<std::vector<std::string>> out;
    for (auto& [node, members] : comp) {
        std::sort(members.begin(), members.end());
        out.push_back(members);
    }
    std::sort(out.begin(), out.end());
    return out;
}

double purity(const Dendrogram& d, std::size_t k,
              const std::map<std::string, std::string>& truth) {
    auto clusters = cut_clusters(d, k);
    std::size_t majority_total = 0, total = 0;
    for (auto& members : clusters) {
        std::map<std::string, std::size_t> families;
        for (auto& label : members) {
            auto it = truth.find(label);
            if (it == truth.end()) throw error("no family for label: " + label);
            ++families[it->second];
        }
        std::size_t best = 0;
        for (auto& [fam, count] : families) best = std::max(best, count);
        majority_total += best;
        total += members.size();
    }
    return double(majority_total) / double(total);
}

namespace {

std::string fmt_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string newick_label(const std::string& label) {
    if (label.find_first_of("(),:;' \t") == std::string::npos) return label;
    std::string quoted = "'";
    for (char c : label) {
        quoted += c;
        if (c == '\'') quoted += c;
    }
    return quoted + "'";
}

} // namespace

std::string to_newick(const Dendrogram& d) {
    const int n = int(d.labels.size());
    auto height_of = [&](int node) {
        return node < n ? 0.0 : d.merges[std::size_t(node - n)].height;
    };
    // recursive descent via explicit lambda; branch length = parent - child height
    auto render = [&](auto&& self, int node, double parent_height) -> std::string {
        std::string body;
        if (node < n) {
            body = newick_label(d.labels[std::size_t(node)]);
        } else {
            auto& merge = d.merges[std::size_t(node - n)];
            double h = merge.height;
            body = "(" + self(self, merge.left, h) + "," + self(self, merge.right, h) + ")";
        }
        if (parent_height < 0) return body;  // root carries no branch length
        return body + ":" + fmt_double(std::max(0.0, parent_height - height_of(node)));
    };
    return render(render, n + int(d.merges.size()) - 1, -1.0) + ";";
}

} // namespace odc
