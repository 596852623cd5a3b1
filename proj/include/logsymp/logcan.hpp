#pragma once

#include "logsymp/linalg.hpp"
#include "logsymp/multivec.hpp"

#include <map>
#include <string>
#include <vector>

namespace logsymp {

/// Log-canonical Poisson structure {x_j, x_k} = lambda_{jk} x_j x_k on
/// affine n-space, together with the weights of a torus action: column j
/// of beta is the torus weight of x_j.
struct LogCanonicalStructure {
    std::size_t n = 0;
    RatMatrix lambda; // n x n, skew
    RatMatrix beta;   // r x n
};

/// Shape checks: lambda skew n x n, beta has n columns. Throws
/// ValidationError naming the offending entry.
void validate(const LogCanonicalStructure& structure);

/// The bivector sum of lambda_{jk} x_j x_k d/dx_j ^ d/dx_k over j < k.
Multivector log_canonical_bivector(const LogCanonicalStructure& structure);

/// True iff lambda w = 0, beta w = 0 only for w = 0.
bool is_t_log_symplectic(const LogCanonicalStructure& structure);

/// An integer weight theta with theta_j = theta_k = -1 on its border pair
/// j < k, nonnegative elsewhere, beta theta = 0, and
/// lambda theta = a (e_j - e_k) with a != 0. Border indices are 0-based.
struct SmoothableWeight {
    Weight theta;
    std::size_t j = 0;
    std::size_t k = 0;
    Rational a;

    bool operator==(const SmoothableWeight&) const = default;
};

/// All smoothable weights, sorted by border pair. At most one weight per
/// pair exists. Requires a T-log-symplectic structure.
std::vector<SmoothableWeight> smoothable_weights(const LogCanonicalStructure& structure);

/// Independent oracle: enumerates every w in {-1..box}^n with exactly two
/// -1 entries, lambda w supported on them with zero sum, and beta w = 0.
/// Sorted lexicographically.
std::vector<Weight> brute_force_smoothable(const LogCanonicalStructure& structure, long box = 8);

struct DiagramEdge {
    std::size_t j = 0;
    std::size_t k = 0;
    SmoothableWeight theta;
    std::map<std::size_t, long> arcs; // vertex -> positive theta entry
};

/// Complete graph on n vertices with the smoothable pairs as decorated
/// edges. Every vertex lies on at most two edges.
struct SmoothingDiagram {
    std::size_t n = 0;
    std::vector<DiagramEdge> edges;
};

SmoothingDiagram smoothing_diagram(const LogCanonicalStructure& structure);

/// DOT export, byte-stable for a fixed structure. Vertices are 1-based.
std::string to_dot(const SmoothingDiagram& diagram);

/// Rank test on the theta columns, cross-checked against acyclicity of
/// the border-edge graph. Empty input counts as independent.
bool is_linearly_independent(const std::vector<SmoothableWeight>& weights);

/// Bounded emptiness searches over sums of two or more subset elements.
/// check_w1 looks for sums with at most one -1 entry; check_w2 certifies
/// that sums eventually leave the bivector weight range. Both throw
/// CapExceeded when the search frontier survives to the cap.
bool check_w1(const std::vector<SmoothableWeight>& subset, std::size_t level_cap = 64);
bool check_w2(const std::vector<SmoothableWeight>& subset, std::size_t level_cap = 64);

} // namespace logsymp
