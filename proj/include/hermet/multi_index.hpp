#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hermet/errors.hpp"

namespace hermet {

/// Strictly increasing list of chart-axis labels in 1..n. An empty index is
/// the label of a 0-degree block.
using MultiIndex = std::vector<int>;

inline std::string to_string(const MultiIndex& mi) {
    std::string s = "(";
    for (std::size_t i = 0; i < mi.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(mi[i]);
    }
    return s + ")";
}

inline void validate_multi_index(const MultiIndex& mi, int n) {
    int prev = 0;
    for (int v : mi) {
        if (v < 1 || v > n)
            throw InvalidInput("multi-index entry " + std::to_string(v) + " outside 1.." + std::to_string(n));
        if (v <= prev)
            throw InvalidInput("multi-index " + to_string(mi) + " not strictly increasing");
        prev = v;
    }
}

/// Signature of the permutation that sorts `v` ascending, or 0 on repeats.
/// Counting inversions directly; sizes here never exceed the complex dimension.
inline int sort_with_sign(std::vector<int>& v) {
    int sign = 1;
    for (std::size_t i = 1; i < v.size(); ++i) {
        for (std::size_t j = i; j > 0 && v[j] < v[j - 1]; --j) {
            std::swap(v[j], v[j - 1]);
            sign = -sign;
        }
    }
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] == v[i - 1]) return 0;
    return sign;
}

/// Sign of merging ascending blocks A and B into one ascending block, i.e.
/// the signature of the shuffle moving each b past every larger a. Returns 0
/// if the blocks intersect.
inline int merge_sign(const MultiIndex& a, const MultiIndex& b) {
    int inversions = 0;
    for (int x : a)
        for (int y : b) {
            if (x == y) return 0;
            if (x > y) ++inversions;
        }
    return (inversions % 2 == 0) ? 1 : -1;
}

inline MultiIndex merged(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

/// Insert label j into ascending block I; the sign is the number of existing
/// labels smaller than j (dz_j starts on the left and moves into place).
/// Returns nullopt when j already occurs.
inline std::optional<std::pair<MultiIndex, int>> insert_index(const MultiIndex& I, int j) {
    int below = 0;
    for (int v : I) {
        if (v == j) return std::nullopt;
        if (v < j) ++below;
    }
    MultiIndex out = I;
    out.insert(out.begin() + below, j);
    return std::pair{std::move(out), below % 2 == 0 ? 1 : -1};
}

inline MultiIndex complement_of(const MultiIndex& mi, int n) {
    MultiIndex out;
    out.reserve(static_cast<std::size_t>(n) - mi.size());
    std::size_t pos = 0;
    for (int v = 1; v <= n; ++v) {
        if (pos < mi.size() && mi[pos] == v) { ++pos; continue; }
        out.push_back(v);
    }
    return out;
}

/// Holomorphic / antiholomorphic degree of a form.
struct Bidegree {
    int p = 0;
    int q = 0;
    friend bool operator==(const Bidegree&, const Bidegree&) = default;
    int total() const { return p + q; }
};

inline std::string to_string(const Bidegree& d) {
    return "(" + std::to_string(d.p) + "," + std::to_string(d.q) + ")";
}

} // namespace hermet
