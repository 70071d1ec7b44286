#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "frobforge/error.hpp"
#include "frobforge/exact/matrix.hpp"
#include "frobforge/monodromy/stokes.hpp"

namespace frobforge::mono {

namespace detail {
inline void check_generator(const RationalMatrix& S, int i) {
    if (!S.square() || S.rows() < 2) throw ValidationError("braid: S must be square of size >= 2");
    if (i < 1 || static_cast<std::size_t>(i) >= S.rows()) {
        throw ValidationError("braid: generator index " + std::to_string(i) + " outside 1.." + std::to_string(S.rows() - 1));
    }
}
}  // namespace detail

/// K^{(i)}(S) for sigma_i (1-based i): identity off the (i, i+1) block, block [[-s, 1], [1, 0]] with
/// s = s_{i,i+1}.
inline RationalMatrix braid_matrix(const RationalMatrix& S, int i) {
    detail::check_generator(S, i);
    const std::size_t a = static_cast<std::size_t>(i - 1), b = a + 1;
    RationalMatrix K = RationalMatrix::identity(S.rows());
    K(a, a) = -S(a, b);
    K(a, b) = 1;
    K(b, a) = 1;
    K(b, b) = 0;
    return K;
}

/// Matrix for sigma_i^{-1} read off the moved S: block [[0, 1], [1, -s']] with s' = s_{i,i+1} of
/// the argument (inverse of braid_matrix taken at the preimage, whose entry is -s').
inline RationalMatrix braid_matrix_inverse(const RationalMatrix& S, int i) {
    detail::check_generator(S, i);
    const std::size_t a = static_cast<std::size_t>(i - 1), b = a + 1;
    RationalMatrix K = RationalMatrix::identity(S.rows());
    K(a, a) = 0;
    K(a, b) = 1;
    K(b, a) = 1;
    K(b, b) = -S(a, b);
    return K;
}

/// Generator word entry: +i for sigma_i, -i for sigma_i^{-1}.
inline RationalMatrix move_matrix(const RationalMatrix& S, int g) {
    if (g == 0) throw ValidationError("braid: generator 0 does not exist");
    return g > 0 ? braid_matrix(S, g) : braid_matrix_inverse(S, -g);
}

/// S -> K S K.
inline RationalMatrix braid_act(const RationalMatrix& S, int g) {
    const RationalMatrix K = move_matrix(S, g);
    return K * S * K;
}

/// (S, C) -> (K S K, C K) for any matrix type of C holding the same entries as rationals.
template <class CM, class Embed>
std::pair<RationalMatrix, CM> braid_act(const RationalMatrix& S, const CM& C, int g, Embed embed) {
    const RationalMatrix K = move_matrix(S, g);
    return {K * S * K, C * embed(K)};
}

inline std::vector<int> parse_word(const std::string& text) {
    std::vector<int> word;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        int g = 0;
        try {
            g = std::stoi(item, &pos);
        } catch (const std::exception&) {
            throw ParseError("braid word: '" + item + "' is not an integer");
        }
        while (pos < item.size() && item[pos] == ' ') ++pos;
        if (pos != item.size() || g == 0) throw ParseError("braid word: bad generator '" + item + "'");
        word.push_back(g);
    }
    return word;
}

inline RationalMatrix apply_word(RationalMatrix S, const std::vector<int>& word) {
    for (int g : word) S = braid_act(S, g);
    return S;
}

/// Sign diagonal D (entries +-1) bringing S to its canonical representative D S D.
/// In each connected component of the graph {i ~ j : s_ij != 0}, d = +1 at the smallest vertex and
/// the breadth-first tree from it (neighbours in increasing order) makes every tree edge positive.
/// The tree depends only on the zero pattern, which D S D does not change, so the result is a class
/// invariant. (Fixing signs column by column against the first nonzero entry is not: two roots
/// joined only through a later column keep an arbitrary relative sign.)
inline std::vector<int> canonical_signs(const RationalMatrix& S) {
    const std::size_t n = S.rows();
    std::vector<int> d(n, 0);
    for (std::size_t root = 0; root < n; ++root) {
        if (d[root] != 0) continue;
        d[root] = 1;
        std::deque<std::size_t> queue{root};
        while (!queue.empty()) {
            const std::size_t v = queue.front();
            queue.pop_front();
            for (std::size_t w = 0; w < n; ++w) {
                if (w == v || d[w] != 0) continue;
                const Rational& s = v < w ? S(v, w) : S(w, v);
                if (sgn(s) == 0) continue;
                d[w] = sgn(s) * d[v];
                queue.push_back(w);
            }
        }
    }
    return d;
}

inline RationalMatrix sign_conjugate(const RationalMatrix& S, const std::vector<int>& d) {
    RationalMatrix out = S;
    for (std::size_t i = 0; i < S.rows(); ++i)
        for (std::size_t j = 0; j < S.cols(); ++j)
            if (d[i] * d[j] < 0) out(i, j) = -S(i, j);
    return out;
}

inline RationalMatrix canonical_stokes(const RationalMatrix& S) { return sign_conjugate(S, canonical_signs(S)); }

inline bool equal_mod_signs(const RationalMatrix& A, const RationalMatrix& B) { return canonical_stokes(A) == canonical_stokes(B); }

inline std::string matrix_key(const RationalMatrix& S) {
    std::string key;
    for (std::size_t i = 0; i < S.rows(); ++i)
        for (std::size_t j = 0; j < S.cols(); ++j) key += S(i, j).get_str() + (j + 1 == S.cols() ? ";" : ",");
    return key;
}

struct OrbitEntry {
    RationalMatrix S;      // canonical representative
    std::vector<int> word; // a shortest word reaching it from the start
};

struct Orbit {
    std::vector<OrbitEntry> entries;
    bool truncated = false;
    int depth = 0;
};

/// Breadth-first closure of the Stokes matrix under sigma_i^{+-1}, deduplicated modulo sign diagonals.
/// Deterministic: generators are tried in the order 1, -1, 2, -2, ...
inline Orbit braid_orbit(const RationalMatrix& S0, int depth, std::size_t cap) {
    if (depth < 0) throw ValidationError("braid_orbit: negative depth");
    if (!is_unit_upper_triangular(S0)) throw ValidationError("braid_orbit: S must be unit upper triangular");
    Orbit orbit;
    orbit.depth = depth;
    std::map<std::string, std::size_t> seen;
    std::deque<std::pair<std::size_t, int>> queue;  // entry index, its depth
    const RationalMatrix c0 = canonical_stokes(S0);
    seen.emplace(matrix_key(c0), 0);
    orbit.entries.push_back({c0, {}});
    queue.emplace_back(0, 0);
    const int n = static_cast<int>(S0.rows());
    while (!queue.empty()) {
        const auto [idx, lvl] = queue.front();
        queue.pop_front();
        if (lvl >= depth) continue;
        for (int i = 1; i < n; ++i)
            for (int g : {i, -i}) {
                const RationalMatrix next = canonical_stokes(braid_act(orbit.entries[idx].S, g));
                const std::string key = matrix_key(next);
                if (seen.count(key)) continue;
                if (orbit.entries.size() >= cap) {
                    orbit.truncated = true;
                    return orbit;
                }
                std::vector<int> word = orbit.entries[idx].word;
                word.push_back(g);
                seen.emplace(key, orbit.entries.size());
                orbit.entries.push_back({next, std::move(word)});
                queue.emplace_back(orbit.entries.size() - 1, lvl + 1);
            }
    }
    return orbit;
}

/// Characteristic polynomial of S^{-T} S (the monodromy invariant), lowest coefficient first.
inline std::vector<Rational> monodromy_invariant(const RationalMatrix& S) {
    return characteristic_polynomial(inverse(S.transpose()) * S);
}

}  // namespace frobforge::mono
