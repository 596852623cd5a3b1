#include "logsymp/multivec.hpp"

#include "logsymp/errors.hpp"

#include <algorithm>
#include <sstream>

namespace logsymp {

Multivector::Multivector(std::size_t dim, int degree) : dim_(dim), degree_(degree) {
    if (degree < 0 || static_cast<std::size_t>(degree) > dim)
        throw ValidationError("multivector degree out of range");
}

Multivector Multivector::constant(std::size_t dim, const Rational& c) {
    Multivector m(dim, 0);
    if (c != 0) m.terms_.emplace(TermKey{std::vector<long>(dim, 0), {}}, c);
    return m;
}

Multivector Multivector::term(std::size_t dim, std::vector<long> exps,
                              std::vector<std::size_t> vars, const Rational& c) {
    if (exps.size() != dim) throw ValidationError("exponent vector length mismatch");
    for (long e : exps)
        if (e < 0) throw ValidationError("negative exponent");
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i] >= dim) throw ValidationError("derivative index out of range");
        if (i > 0 && vars[i] <= vars[i - 1]) throw ValidationError("derivative indices not increasing");
    }
    Multivector m(dim, static_cast<int>(vars.size()));
    if (c != 0) m.terms_.emplace(TermKey{std::move(exps), std::move(vars)}, c);
    return m;
}

void Multivector::add_term(const TermKey& key, const Rational& c) {
    if (key.exps.size() != dim_ || key.vars.size() != static_cast<std::size_t>(degree_))
        throw InternalError("term shape does not match multivector");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

bool Multivector::operator==(const Multivector& other) const {
    // Zero multivectors of different degrees on the same space compare equal.
    if (dim_ != other.dim_) return false;
    if (terms_.empty() && other.terms_.empty()) return true;
    return degree_ == other.degree_ && terms_ == other.terms_;
}

Multivector Multivector::operator+(const Multivector& other) const {
    if (dim_ != other.dim_) throw DimensionMismatch("adding multivectors on different spaces");
    if (is_zero()) return other;
    if (other.is_zero()) return *this;
    if (degree_ != other.degree_) throw DimensionMismatch("adding multivectors of different degrees");
    Multivector out = *this;
    for (const auto& [key, c] : other.terms_) out.add_term(key, c);
    return out;
}

Multivector Multivector::operator-(const Multivector& other) const { return *this + (-other); }

Multivector Multivector::operator*(const Rational& scalar) const {
    Multivector out(dim_, degree_);
    if (scalar == 0) return out;
    for (const auto& [key, c] : terms_) out.terms_.emplace(key, c * scalar);
    return out;
}

Multivector Multivector::operator-() const { return *this * Rational(-1); }

Weight term_weight(const TermKey& key, std::size_t dim) {
    Weight w(key.exps.begin(), key.exps.end());
    (void)dim;
    for (std::size_t v : key.vars) w[v] -= 1;
    return w;
}

namespace {

// Merges two strictly increasing index sets; sign is the parity of the
// permutation sorting their concatenation. Nullopt on a shared index.
std::optional<std::pair<std::vector<std::size_t>, int>>
merge_vars(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::vector<std::size_t> out;
    out.reserve(a.size() + b.size());
    int sign = 1;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return std::nullopt;
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            // b[j] jumps over the remaining entries of a
            if ((a.size() - i) % 2 == 1) sign = -sign;
            out.push_back(b[j++]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return std::make_pair(std::move(out), sign);
}

std::vector<long> add_exps(const std::vector<long>& a, const std::vector<long>& b) {
    std::vector<long> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

} // namespace

Multivector wedge(const Multivector& u, const Multivector& v) {
    if (u.dim() != v.dim()) throw DimensionMismatch("wedge on different spaces");
    const std::size_t n = u.dim();
    const int deg = std::min<int>(u.degree() + v.degree(), static_cast<int>(n));
    Multivector out(n, deg);
    if (u.degree() + v.degree() > static_cast<int>(n)) return out;
    for (const auto& [ku, cu] : u.terms())
        for (const auto& [kv, cv] : v.terms()) {
            auto merged = merge_vars(ku.vars, kv.vars);
            if (!merged) continue;
            out.add_term(TermKey{add_exps(ku.exps, kv.exps), std::move(merged->first)},
                         cu * cv * merged->second);
        }
    return out;
}

Multivector schouten(const Multivector& u, const Multivector& v) {
    if (u.dim() != v.dim()) throw DimensionMismatch("schouten on different spaces");
    const std::size_t n = u.dim();
    const int p = u.degree(), q = v.degree();
    const int deg = std::max(0, std::min(p + q - 1, static_cast<int>(n)));
    Multivector out(n, deg);
    if (p + q - 1 < 0 || p + q - 1 > static_cast<int>(n)) return out;

    // Odd-coordinate expansion with left derivatives in the odd directions:
    //   [u, v] = (-1)^{p-1}    sum_i du/dxi_i ^ dv/dx_i
    //          - (-1)^{p(q-1)} sum_i dv/dxi_i ^ du/dx_i.
    // The degree signs make vector fields bracket as Lie fields and match
    // the graded antisymmetry convention used throughout.
    const int forward_sign = p % 2 == 1 ? 1 : -1;
    const int reverse_sign = (p * (q + 1)) % 2 == 0 ? -1 : 1;

    auto accumulate = [&out](const TermKey& ka, const Rational& ca, const TermKey& kb,
                             const Rational& cb, int outer_sign) {
        // d(a-term)/dxi_i wedge d(b-term)/dx_i summed over i in ka.vars
        for (std::size_t pos = 0; pos < ka.vars.size(); ++pos) {
            const std::size_t i = ka.vars[pos];
            if (kb.exps[i] == 0) continue;
            std::vector<std::size_t> rest;
            rest.reserve(ka.vars.size() - 1);
            for (std::size_t t = 0; t < ka.vars.size(); ++t)
                if (t != pos) rest.push_back(ka.vars[t]);
            auto merged = merge_vars(rest, kb.vars);
            if (!merged) continue;
            const int left_sign = pos % 2 == 0 ? 1 : -1;
            std::vector<long> exps = add_exps(ka.exps, kb.exps);
            exps[i] -= 1;
            out.add_term(TermKey{std::move(exps), std::move(merged->first)},
                         ca * cb * Rational(kb.exps[i]) * left_sign * merged->second * outer_sign);
        }
    };

    for (const auto& [ku, cu] : u.terms())
        for (const auto& [kv, cv] : v.terms()) {
            accumulate(ku, cu, kv, cv, forward_sign);
            accumulate(kv, cv, ku, cu, reverse_sign);
        }
    return out;
}

std::map<Weight, Multivector> weight_decompose(const Multivector& v) {
    std::map<Weight, Multivector> parts;
    for (const auto& [key, c] : v.terms()) {
        Weight w = term_weight(key, v.dim());
        auto it = parts.find(w);
        if (it == parts.end())
            it = parts.emplace(std::move(w), Multivector(v.dim(), v.degree())).first;
        it->second.add_term(key, c);
    }
    return parts;
}

std::optional<Weight> homogeneous_weight(const Multivector& v) {
    std::optional<Weight> w;
    for (const auto& [key, c] : v.terms()) {
        Weight tw = term_weight(key, v.dim());
        if (!w)
            w = std::move(tw);
        else if (*w != tw)
            return std::nullopt;
    }
    return w;
}

Multivector contract_coordinate(std::size_t i, const Rational& c, const Multivector& v) {
    if (i >= v.dim()) throw ValidationError("contraction index out of range");
    Multivector out(v.dim(), std::max(0, v.degree() - 1));
    if (v.degree() == 0) return out;
    for (const auto& [key, coeff] : v.terms()) {
        auto it = std::find(key.vars.begin(), key.vars.end(), i);
        if (it == key.vars.end()) continue;
        const std::size_t pos = static_cast<std::size_t>(it - key.vars.begin());
        std::vector<std::size_t> rest;
        rest.reserve(key.vars.size() - 1);
        for (std::size_t t = 0; t < key.vars.size(); ++t)
            if (t != pos) rest.push_back(key.vars[t]);
        out.add_term(TermKey{key.exps, std::move(rest)},
                     coeff * c * (pos % 2 == 0 ? 1 : -1));
    }
    return out;
}

Multivector divide_by_coordinate(std::size_t i, const Multivector& v) {
    if (i >= v.dim()) throw ValidationError("division index out of range");
    Multivector out(v.dim(), v.degree());
    for (const auto& [key, coeff] : v.terms()) {
        if (key.exps[i] < 1)
            throw NonDivisible("term " + render(key, coeff) + " not divisible by x" +
                               std::to_string(i + 1));
        TermKey shifted = key;
        shifted.exps[i] -= 1;
        out.add_term(shifted, coeff);
    }
    return out;
}

Multivector rescale(const RatVector& t, const Multivector& v) {
    if (t.size() != v.dim()) throw DimensionMismatch("rescale vector length mismatch");
    for (const auto& ti : t)
        if (ti == 0) throw ValidationError("rescale by zero factor");
    Multivector out(v.dim(), v.degree());
    for (const auto& [key, coeff] : v.terms()) {
        const Weight w = term_weight(key, v.dim());
        Rational factor(1);
        for (std::size_t idx = 0; idx < t.size(); ++idx)
            if (w[idx] != 0) factor *= pow_rational(t[idx], w[idx]);
        out.add_term(key, coeff * factor);
    }
    return out;
}

std::string render(const TermKey& key, const Rational& coeff) {
    std::ostringstream os;
    os << to_string(coeff);
    bool monomial = false;
    for (std::size_t i = 0; i < key.exps.size(); ++i) {
        if (key.exps[i] == 0) continue;
        os << (monomial ? "*" : " * ");
        monomial = true;
        os << "x" << (i + 1);
        if (key.exps[i] != 1) os << "^" << key.exps[i];
    }
    bool first_var = true;
    for (std::size_t v : key.vars) {
        os << (first_var ? " * " : "^");
        first_var = false;
        os << "d/dx" << (v + 1);
    }
    return os.str();
}

std::string render(const Multivector& v) {
    if (v.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, coeff] : v.terms()) {
        if (!first) os << " + ";
        first = false;
        os << render(key, coeff);
    }
    return os.str();
}

} // namespace logsymp
