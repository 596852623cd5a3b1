#pragma once

#include "logsymp/linalg.hpp"
#include "logsymp/logcan.hpp"

#include <map>
#include <optional>
#include <vector>

namespace logsymp {

/// A symmetric bilinear form on the character space together with a
/// sequence of integer characters, column j of betas being the weight of
/// x_j. Every character must have nonzero self-pairing.
struct ActionDatum {
    std::size_t torus_rank = 0;
    RatMatrix form;  // r x r symmetric
    RatMatrix betas; // r x n, integer entries
};

void validate(const ActionDatum& datum);

Rational form_pair(const RatMatrix& form, const RatVector& a, const RatVector& b);

/// 2<beta, xi>/<beta, beta>. Throws IsotropicVector when <beta,beta> = 0.
Rational cartan_number(const RatMatrix& form, const RatVector& beta, const RatVector& xi);

/// xi - cartan_number(beta, xi) * beta; an involution preserving the form.
RatVector reflect(const RatMatrix& form, const RatVector& beta, const RatVector& xi);

constexpr std::size_t kNoSuccessor = static_cast<std::size_t>(-1);

/// Everything derived from one action datum: the reflected character
/// sequence, the change-of-basis matrices and their inverses, successor
/// maps, and the candidate smoothable columns.
struct DatumAnalysis {
    ActionDatum datum;
    std::vector<RatVector> gammas; // gamma_j in character coordinates
    RatMatrix q, q_inv;            // gamma = beta Q, beta = gamma Q^{-1}
    RatMatrix e, e_inv;
    RatMatrix d;  // diagonal of self-pairings
    RatMatrix nu; // D Q^{-1}, upper triangular
    RatMatrix qe; // columns are the theta vectors
    std::vector<std::size_t> jplus;  // next index with equal gamma, or kNoSuccessor
    std::vector<std::size_t> jminus; // previous such index, or kNoSuccessor
    std::vector<std::vector<std::size_t>> level_sets; // grouped by gamma value
    std::vector<std::size_t> j_set;     // j with jplus[j] in range
    std::vector<std::size_t> j_int_set; // j_set entries with integral interior
    std::vector<RatVector> support;     // distinct gammas, by first appearance
};

DatumAnalysis analyze(const ActionDatum& datum);

struct DatumPredicates {
    bool distinguished = false;
    bool integral = false;
    bool strongly_integral = false;
};

DatumPredicates predicates(const DatumAnalysis& analysis);

/// The induced log-canonical structure: lambda_{jk} = -<beta_j, beta_k>
/// for j < k, with the datum's characters as the torus weights.
LogCanonicalStructure induced_structure(const ActionDatum& datum);

/// The smoothable weights read off the gamma sequence: the theta columns
/// over the integral index set, with border (j, j+). Must agree with
/// smoothable_weights on the induced structure.
std::vector<SmoothableWeight> smoothable_weights_via_gamma(const DatumAnalysis& analysis);

/// Unique solution w of lambda w = a, beta w = xi when consistent.
std::optional<RatVector> solve_weight_equation(const DatumAnalysis& analysis,
                                               const RatVector& a, const RatVector& xi);

/// Basis of ker beta given by the theta columns over j_set. Requires a
/// distinguished datum.
std::vector<RatVector> ker_beta_basis(const DatumAnalysis& analysis);

/// Runs the reflection recursion along a border vector f (entries -1 at
/// j < k, zero outside [j, k]) and, when it closes up, returns for each
/// l in [j, k-1] the gamma_l-coefficient of the running character; these
/// reconstruct f as a combination of theta columns. Requires a
/// distinguished datum.
std::optional<std::map<std::size_t, Rational>> eta_decompose(const DatumAnalysis& analysis,
                                                             const RatVector& f);

} // namespace logsymp
