#pragma once

#include "logsymp/logcan.hpp"
#include "logsymp/multivec.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace logsymp {

/// Sums of subset weights, organized by how many summands they use.
/// A weight is kept when it stays in the polyvector weight range
/// (entries >= -1) with at most degree_cap entries equal to -1.
struct TailWeightSet {
    /// level m >= 2 -> (weight, multiplicity vector over the subset)
    std::map<std::size_t, std::vector<std::pair<Weight, std::vector<long>>>> by_level;
    bool exhausted = false;   // frontier emptied before the cap
    std::size_t max_level = 0; // highest level holding a recorded weight
};

TailWeightSet enumerate_tail_weights(const std::vector<SmoothableWeight>& subset,
                                     int degree_cap, std::size_t level_cap);

/// The bivector (prod_{i != j,k} x_i^{theta_i}) d/dx_j ^ d/dx_k.
Multivector v_theta(const SmoothableWeight& theta, std::size_t n);

/// Differential of the log-canonical structure on a weight component,
/// computed as v_w ^ V with v_w built from lambda w. Agrees with the
/// direct Schouten bracket against the structure bivector.
Multivector d_pi0_on_weight(const LogCanonicalStructure& structure, const Weight& w,
                            const Multivector& v);

/// Solves v_w ^ V = rhs for V on a non-contributing weight w, by
/// contraction with dx_i / a_i followed by exact division by x_i, where i
/// is the smallest index outside the -1 positions with (lambda w)_i != 0.
/// Throws NoValidIndex when no such index exists and NonDivisible when
/// rhs is not closed.
Multivector homotopy_solve(const LogCanonicalStructure& structure, const Weight& w,
                           const Multivector& rhs);

struct DeformOptions {
    std::size_t level_cap = 64;
    /// Permutes the order in which independent per-weight solves run.
    /// The result is identical for every seed.
    unsigned schedule_seed = 0;
};

/// A solved torus-invariant Poisson deformation of a log-canonical base.
struct Deformation {
    LogCanonicalStructure base;
    std::vector<SmoothableWeight> subset; // sorted by border pair
    std::vector<Rational> coefficients;   // aligned with subset, all nonzero
    std::vector<Multivector> orders;      // orders[m] is the order-m term
    Multivector total;

    Deformation() : total(0, 0) {}
};

/// Order-by-order solver. Given an independent subset of smoothable
/// weights satisfying the uniqueness condition, produces the unique
/// Poisson deformation whose first-order term is sum c_theta V_theta.
/// The result always satisfies an exact final Jacobi check.
Deformation deform(const LogCanonicalStructure& structure,
                   std::vector<SmoothableWeight> subset, std::vector<Rational> coefficients,
                   const DeformOptions& options = {});

/// Exact test [pi, pi] = 0.
bool verify_jacobi(const Multivector& pi);

/// Top multivector pi^r ^ u_1 ^ ... ^ u_{n-2r} with 2r = rank(lambda) and
/// the u's drawn from the rows of beta, normalized so the base structure
/// itself maps to x_1...x_n d/dx_1^...^d/dx_n.
Multivector t_pfaffian(const LogCanonicalStructure& structure, const Multivector& pi);

/// A coordinate rescaling carrying the deformation with coefficients c to
/// the one with coefficients c_prime, when one with rational entries is
/// found; nullopt otherwise. Complete on subsets whose integer span is a
/// saturated sublattice.
std::optional<RatVector> rescaling_witness(const LogCanonicalStructure& structure,
                                           const std::vector<SmoothableWeight>& subset,
                                           const std::vector<Rational>& c,
                                           const std::vector<Rational>& c_prime,
                                           const DeformOptions& options = {});

/// Projection of the full-subset deformation onto the weights generated
/// by a sub-subset (selected by index); equals the directly computed
/// sub-subset deformation.
Multivector maximality_projection(const LogCanonicalStructure& structure,
                                  const std::vector<SmoothableWeight>& full_subset,
                                  const std::vector<Rational>& c_prime,
                                  const std::vector<std::size_t>& sub_indices,
                                  const DeformOptions& options = {});

} // namespace logsymp
