#pragma once

#include "logsymp/actiondata.hpp"
#include "logsymp/deform.hpp"

#include <map>
#include <string>
#include <vector>

namespace logsymp {

/// Generalized Cartan matrix: integer square matrix with diagonal 2,
/// nonpositive off-diagonal entries, admitting a positive integer
/// symmetrizer.
struct GCM {
    std::size_t size = 0;
    std::vector<std::vector<long>> entries;
};

struct GcmDiagnostics {
    bool valid = false;
    std::vector<std::string> problems;
};

GcmDiagnostics validate_gcm(const GCM& a);

/// Minimal positive integer symmetrizer: d_i a_{ij} = d_j a_{ji}, with
/// gcd 1 per connected component of the nonzero-entry graph. Throws
/// NotSymmetrizable on inconsistent ratios.
std::vector<long> find_symmetrizer(const GCM& a);

/// A Cartan matrix, a symmetrizer, a word of simple-root indices, and
/// optional deformation coefficients keyed by the repetition index j.
struct CartanJob {
    GCM cartan_matrix;
    std::vector<long> symmetrizer;       // positive, d_i a_ij = d_j a_ji
    std::vector<std::size_t> word;       // 0-based indices into [0, size)
    std::map<std::size_t, Rational> c;   // 0-based j in the J set; empty = preset
};

void validate(const CartanJob& job);

/// Root-coordinate model: the form is d_i a_{ij} on the simple-root
/// basis, and the characters are the reflected simple roots along the
/// word. The analysis of the result recovers the word's simple roots as
/// its gamma sequence.
ActionDatum build_datum(const CartanJob& job);

/// The preset c_j = -<alpha_{i_j}, alpha_{i_j}> = -2 d_{i_j} over the
/// repetition set J.
std::map<std::size_t, Rational> bott_samelson_c(const CartanJob& job);

/// The deformation of the word's structure along all smoothable
/// directions, with the job's coefficients (or the preset).
Deformation pi_i_c(const CartanJob& job, const DeformOptions& options = {});

struct CglFailure {
    int condition = 0; // 1, 2, or 3
    std::string witness;
};

/// Outcome of the symmetric CGL extension check.
struct CGLReport {
    bool passes = false;
    std::vector<RatVector> weights;   // torus weight of each coordinate
    std::vector<RatVector> h_vectors; // Gram vectors realizing condition 2
    std::vector<CglFailure> failures;
};

/// Checks that a bivector makes the coordinate ring a strongly symmetric
/// Poisson CGL extension for the datum's torus action: torus invariance,
/// the Gram conditions, and for each j < k a bracket tail supported on
/// the variables strictly between j and k.
CGLReport check_cgl(const ActionDatum& datum, const Multivector& pi);

} // namespace logsymp
