#pragma once

#include "logsymp/linalg.hpp"
#include "logsymp/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace logsymp {

/// Rescaling-torus weight of a term: exponent vector minus the indicator
/// of the derivative index set. Entries are >= -1 for polynomial terms.
using Weight = std::vector<long>;

/// Identifies one term of a multivector: a monomial exponent vector of
/// length n (entries >= 0) and a strictly increasing set of 0-based
/// derivative indices. Ordered lexicographically by (vars, exps); this is
/// the canonical term order used everywhere (printing, maps, JSON).
struct TermKey {
    std::vector<long> exps;
    std::vector<std::size_t> vars;

    auto operator<=>(const TermKey&) const = default;
};

/// Polynomial p-vector field on affine n-space with exact rational
/// coefficients. Immutable in spirit: operations return new values.
/// The zero multivector of any degree is the empty term map.
class Multivector {
public:
    Multivector(std::size_t dim, int degree);

    static Multivector zero(std::size_t dim, int degree) { return Multivector(dim, degree); }
    /// Degree-0 constant c.
    static Multivector constant(std::size_t dim, const Rational& c);
    /// Single term c * x^exps * d/dx_{vars}.
    static Multivector term(std::size_t dim, std::vector<long> exps,
                            std::vector<std::size_t> vars, const Rational& c);

    std::size_t dim() const { return dim_; }
    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<TermKey, Rational>& terms() const { return terms_; }

    /// Adds c * x^exps * d/dx_{vars}, merging with an existing term and
    /// dropping the entry if the coefficient cancels to zero.
    void add_term(const TermKey& key, const Rational& c);

    bool operator==(const Multivector& other) const;

    Multivector operator+(const Multivector& other) const;
    Multivector operator-(const Multivector& other) const;
    Multivector operator*(const Rational& scalar) const;
    Multivector operator-() const;

private:
    std::size_t dim_;
    int degree_;
    std::map<TermKey, Rational> terms_;
};

Weight term_weight(const TermKey& key, std::size_t dim);

/// Exterior product. Both factors must live on the same space.
Multivector wedge(const Multivector& u, const Multivector& v);

/// Schouten bracket; degree |u|+|v|-1, the Lie bracket on vector fields.
Multivector schouten(const Multivector& u, const Multivector& v);

/// Splits into rescaling-weight components; summing them returns the input.
std::map<Weight, Multivector> weight_decompose(const Multivector& v);

/// True when every term has the same weight; reports it when so.
std::optional<Weight> homogeneous_weight(const Multivector& v);

/// Interior product with the 1-form c * dx_i (i is 0-based).
Multivector contract_coordinate(std::size_t i, const Rational& c, const Multivector& v);

/// Exact division by x_i. Throws NonDivisible when some term lacks the
/// factor; the message names the offending term.
Multivector divide_by_coordinate(std::size_t i, const Multivector& v);

/// Coordinate rescaling x -> t.x: the weight-w component picks up t^w.
/// All entries of t must be nonzero.
Multivector rescale(const RatVector& t, const Multivector& v);

/// Fixed text grammar, canonically ordered terms:
///   c * x1^a1*...*xn^an * d/dx1^d/dx2
/// Zero-exponent factors are omitted, ^1 is dropped, and a zero
/// multivector renders as "0". Variable indices are 1-based.
std::string render(const Multivector& v);
std::string render(const TermKey& key, const Rational& coeff);

} // namespace logsymp
