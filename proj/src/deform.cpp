#include "logsymp/deform.hpp"

#include "logsymp/errors.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace logsymp {

namespace {

constexpr std::size_t kFrontierLimit = 500000;

Weight weight_of(const std::vector<SmoothableWeight>& subset, const std::vector<long>& b,
                 std::size_t n) {
    Weight w(n, 0);
    for (std::size_t t = 0; t < subset.size(); ++t)
        if (b[t] != 0)
            for (std::size_t i = 0; i < n; ++i) w[i] += b[t] * subset[t].theta[i];
    return w;
}

std::size_t count_borders(const Weight& w) {
    std::size_t c = 0;
    for (long wi : w)
        if (wi == -1) ++c;
    return c;
}

// True when lambda w is supported on the -1 positions of w, i.e. the
// weight carries cohomology and the homotopy has nothing to divide by.
bool is_contributing(const LogCanonicalStructure& s, const Weight& w) {
    RatVector wr(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) wr[i] = Rational(w[i]);
    const RatVector lw = matvec(s.lambda, wr);
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] != -1 && lw[i] != 0) return false;
    return true;
}

Multivector log_vector_field(const RatVector& coefficients, std::size_t n) {
    Multivector v(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (coefficients[i] == 0) continue;
        std::vector<long> exps(n, 0);
        exps[i] = 1;
        v.add_term(TermKey{std::move(exps), {i}}, coefficients[i]);
    }
    return v;
}

} // namespace

TailWeightSet enumerate_tail_weights(const std::vector<SmoothableWeight>& subset,
                                     int degree_cap, std::size_t level_cap) {
    if (degree_cap < 1 || degree_cap > 3) throw ValidationError("degree cap must be 1, 2, or 3");
    if (!is_linearly_independent(subset))
        throw ValidationError("tail enumeration requires an independent subset");

    TailWeightSet tail;
    if (subset.empty()) {
        tail.exhausted = true;
        return tail;
    }
    const std::size_t n = subset.front().theta.size();
    const std::size_t s = subset.size();

    std::vector<bool> recoverable(n, false);
    for (const auto& theta : subset)
        for (std::size_t i = 0; i < n; ++i)
            if (theta.theta[i] > 0) recoverable[i] = true;

    std::set<std::vector<long>> frontier;
    for (std::size_t t = 0; t < s; ++t) {
        std::vector<long> b(s, 0);
        b[t] = 1;
        frontier.insert(std::move(b));
    }

    for (std::size_t level = 2; level <= level_cap; ++level) {
        std::set<std::vector<long>> next;
        for (const auto& b : frontier)
            for (std::size_t t = 0; t < s; ++t) {
                std::vector<long> nb = b;
                ++nb[t];
                if (next.count(nb)) continue;
                const Weight w = weight_of(subset, nb, n);
                bool dead = false, in_range = true;
                for (std::size_t i = 0; i < n; ++i) {
                    if (w[i] < -1) {
                        in_range = false;
                        if (!recoverable[i]) {
                            dead = true;
                            break;
                        }
                    }
                }
                if (dead) continue;
                if (in_range && count_borders(w) <= static_cast<std::size_t>(degree_cap)) {
                    tail.by_level[level].emplace_back(w, nb);
                    tail.max_level = level;
                }
                next.insert(std::move(nb));
            }
        frontier = std::move(next);
        if (frontier.empty()) {
            tail.exhausted = true;
            break;
        }
        if (frontier.size() > kFrontierLimit) break;
    }
    for (auto& [level, entries] : tail.by_level) std::sort(entries.begin(), entries.end());
    return tail;
}

Multivector v_theta(const SmoothableWeight& theta, std::size_t n) {
    if (theta.theta.size() != n) throw DimensionMismatch("weight length mismatch");
    std::vector<long> exps(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        if (i != theta.j && i != theta.k) exps[i] = theta.theta[i];
    return Multivector::term(n, std::move(exps), {theta.j, theta.k}, Rational(1));
}

Multivector d_pi0_on_weight(const LogCanonicalStructure& s, const Weight& w,
                            const Multivector& v) {
    if (w.size() != s.n || v.dim() != s.n) throw DimensionMismatch("weight length mismatch");
    if (auto hw = homogeneous_weight(v); hw && *hw != w)
        throw ValidationError("multivector is not homogeneous of the stated weight");
    RatVector wr(s.n);
    for (std::size_t i = 0; i < s.n; ++i) wr[i] = Rational(w[i]);
    return wedge(log_vector_field(matvec(s.lambda, wr), s.n), v);
}

Multivector homotopy_solve(const LogCanonicalStructure& s, const Weight& w,
                           const Multivector& rhs) {
    if (w.size() != s.n || rhs.dim() != s.n) throw DimensionMismatch("weight length mismatch");
    if (rhs.is_zero()) return Multivector::zero(s.n, std::max(0, rhs.degree() - 1));

    RatVector wr(s.n);
    for (std::size_t i = 0; i < s.n; ++i) wr[i] = Rational(w[i]);
    const RatVector lw = matvec(s.lambda, wr);

    std::size_t index = s.n;
    for (std::size_t i = 0; i < s.n; ++i)
        if (w[i] != -1 && lw[i] != 0) {
            index = i;
            break;
        }
    if (index == s.n) throw NoValidIndex("weight carries cohomology; no contraction index");

    const Multivector solution =
        divide_by_coordinate(index, contract_coordinate(index, 1 / lw[index], rhs));
    if (wedge(log_vector_field(lw, s.n), solution) != rhs)
        throw InternalError("homotopy output fails the wedge identity");
    return solution;
}

bool verify_jacobi(const Multivector& pi) {
    if (pi.degree() != 2 && !pi.is_zero()) throw ValidationError("Jacobi test expects a bivector");
    return schouten(pi, pi).is_zero();
}

Deformation deform(const LogCanonicalStructure& structure,
                   std::vector<SmoothableWeight> subset, std::vector<Rational> coefficients,
                   const DeformOptions& options) {
    if (subset.size() != coefficients.size())
        throw ValidationError("subset and coefficient counts differ");
    if (!is_t_log_symplectic(structure))
        throw ValidationError("structure is not T-log-symplectic");
    for (const auto& c : coefficients)
        if (c == 0) throw ValidationError("deformation coefficients must be nonzero");

    // Canonical processing order, independent of the caller's ordering.
    {
        std::vector<std::size_t> perm(subset.size());
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::sort(perm.begin(), perm.end(), [&subset](std::size_t a, std::size_t b) {
            return std::pair(subset[a].j, subset[a].k) < std::pair(subset[b].j, subset[b].k);
        });
        std::vector<SmoothableWeight> sorted_subset;
        std::vector<Rational> sorted_coeffs;
        for (std::size_t p : perm) {
            sorted_subset.push_back(subset[p]);
            sorted_coeffs.push_back(coefficients[p]);
        }
        subset = std::move(sorted_subset);
        coefficients = std::move(sorted_coeffs);
    }
    for (std::size_t t = 1; t < subset.size(); ++t)
        if (subset[t - 1].j == subset[t].j && subset[t - 1].k == subset[t].k)
            throw ValidationError("duplicate border pair in subset");

    const auto all = smoothable_weights(structure);
    for (const auto& theta : subset)
        if (std::find(all.begin(), all.end(), theta) == all.end())
            throw ValidationError("subset element is not a smoothable weight of the structure");

    if (!check_w1(subset, options.level_cap))
        throw W1Violated("subset fails the uniqueness condition");

    const std::size_t n = structure.n;
    Deformation result;
    result.base = structure;
    result.subset = subset;
    result.coefficients = coefficients;
    result.orders.push_back(log_canonical_bivector(structure));

    if (!subset.empty()) {
        Multivector pi1(n, 2);
        for (std::size_t t = 0; t < subset.size(); ++t)
            pi1 = pi1 + v_theta(subset[t], n) * coefficients[t];
        result.orders.push_back(std::move(pi1));

        const TailWeightSet tail = enumerate_tail_weights(subset, 2, options.level_cap);
        if (!tail.exhausted)
            throw CapExceeded("tail enumeration undecided at level cap " +
                              std::to_string(options.level_cap));

        std::mt19937 schedule(options.schedule_seed);
        for (std::size_t m = 2; m <= tail.max_level; ++m) {
            Multivector obstruction(n, 3);
            for (std::size_t k = 1; k < m; ++k) {
                if (k >= result.orders.size() || m - k >= result.orders.size()) continue;
                obstruction = obstruction + schouten(result.orders[k], result.orders[m - k]);
            }
            auto parts = weight_decompose(obstruction);
            std::vector<std::pair<Weight, Multivector>> work(parts.begin(), parts.end());
            if (options.schedule_seed != 0) std::shuffle(work.begin(), work.end(), schedule);

            Multivector pi_m(n, 2);
            for (const auto& [w, component] : work) {
                if (count_borders(w) > 2 || is_contributing(structure, w))
                    throw JacobiResidue("obstruction at order " + std::to_string(m) +
                                        " has an unabsorbable weight component");
                pi_m = pi_m + homotopy_solve(structure, w, component * rat(-1, 2));
            }
            result.orders.push_back(std::move(pi_m));
        }
        while (result.orders.size() > 2 && result.orders.back().is_zero())
            result.orders.pop_back();
        if (result.orders.size() == 2 && result.orders.back().is_zero()) result.orders.pop_back();
    }

    result.total = Multivector(n, 2);
    for (const auto& order : result.orders) result.total = result.total + order;
    if (!verify_jacobi(result.total))
        throw JacobiResidue("final Jacobi check failed");
    return result;
}

Multivector t_pfaffian(const LogCanonicalStructure& structure, const Multivector& pi) {
    if (pi.dim() != structure.n) throw DimensionMismatch("bivector lives on the wrong space");
    const std::size_t n = structure.n;
    const std::size_t lambda_rank = rank(structure.lambda);
    if (lambda_rank % 2 != 0) throw InternalError("skew matrix with odd rank");
    const std::size_t r = lambda_rank / 2;

    // Extend the column space of lambda to full space by rows of beta.
    RatMatrix span(n, 0);
    std::size_t span_rank = 0;
    auto try_add = [&span, &span_rank](const RatVector& v) {
        RatMatrix candidate(span.rows(), span.cols() + 1);
        for (std::size_t i = 0; i < span.rows(); ++i) {
            for (std::size_t j = 0; j < span.cols(); ++j) candidate.at(i, j) = span.at(i, j);
            candidate.at(i, span.cols()) = v[i];
        }
        if (rank(candidate) == span_rank + 1) {
            span = std::move(candidate);
            ++span_rank;
            return true;
        }
        return false;
    };
    for (std::size_t j = 0; j < n; ++j) try_add(structure.lambda.col(j));
    if (span_rank != lambda_rank) throw InternalError("lambda column space rank mismatch");

    std::vector<RatVector> generators;
    for (std::size_t i = 0; i < structure.beta.rows() && span_rank < n; ++i) {
        const RatVector row = structure.beta.row(i);
        if (try_add(row)) generators.push_back(row);
    }
    if (span_rank != n)
        throw NotFullRank("beta rows cannot complete the lambda column space");

    auto top = [&](const Multivector& sigma) {
        Multivector power = Multivector::constant(n, Rational(1));
        for (std::size_t t = 0; t < r; ++t) power = wedge(power, sigma);
        for (const auto& g : generators) power = wedge(power, log_vector_field(g, n));
        return power;
    };

    const Multivector base_top = top(log_canonical_bivector(structure));
    if (base_top.terms().size() != 1) throw InternalError("base Pfaffian is not a single term");
    const Rational scale = base_top.terms().begin()->second;
    if (scale == 0) throw InternalError("degenerate base Pfaffian");
    return top(pi) * (1 / scale);
}

namespace {

// Integer diagonalization U A V = D with unimodular U, V. Solvability of
// A x = e over the integers reduces to exact division by the diagonal.
struct SmithForm {
    std::vector<std::vector<Integer>> d, u, v;
};

SmithForm smith_form(std::vector<std::vector<Integer>> a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a.front().size();
    SmithForm f;
    f.d = std::move(a);
    f.u.assign(rows, std::vector<Integer>(rows, 0));
    f.v.assign(cols, std::vector<Integer>(cols, 0));
    for (std::size_t i = 0; i < rows; ++i) f.u[i][i] = 1;
    for (std::size_t j = 0; j < cols; ++j) f.v[j][j] = 1;

    auto swap_rows = [&f, cols](std::size_t a_, std::size_t b_) {
        if (a_ == b_) return;
        for (std::size_t j = 0; j < cols; ++j) std::swap(f.d[a_][j], f.d[b_][j]);
        std::swap(f.u[a_], f.u[b_]);
    };
    auto swap_cols = [&f, rows](std::size_t a_, std::size_t b_) {
        if (a_ == b_) return;
        for (std::size_t i = 0; i < rows; ++i) std::swap(f.d[i][a_], f.d[i][b_]);
        std::swap(f.v[a_], f.v[b_]);
    };
    auto add_row = [&f, cols](std::size_t dst, std::size_t src, const Integer& factor) {
        for (std::size_t j = 0; j < cols; ++j) f.d[dst][j] += factor * f.d[src][j];
        for (std::size_t j = 0; j < f.u[dst].size(); ++j) f.u[dst][j] += factor * f.u[src][j];
    };
    auto add_col = [&f, rows](std::size_t dst, std::size_t src, const Integer& factor) {
        for (std::size_t i = 0; i < rows; ++i) f.d[i][dst] += factor * f.d[i][src];
        for (std::size_t i = 0; i < f.v[dst].size(); ++i) f.v[dst][i] += factor * f.v[src][i];
    };

    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        while (true) {
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j) {
                    if (f.d[i][j] == 0) continue;
                    if (pi == rows || cmp(abs(f.d[i][j]), abs(f.d[pi][pj])) < 0) {
                        pi = i;
                        pj = j;
                    }
                }
            if (pi == rows) return f; // remainder is zero
            swap_rows(t, pi);
            swap_cols(t, pj);
            bool reduced = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (f.d[i][t] == 0) continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), f.d[i][t].get_mpz_t(), f.d[t][t].get_mpz_t());
                add_row(i, t, -q);
                if (f.d[i][t] != 0) reduced = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (f.d[t][j] == 0) continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), f.d[t][j].get_mpz_t(), f.d[t][t].get_mpz_t());
                add_col(j, t, -q);
                if (f.d[t][j] != 0) reduced = false;
            }
            if (reduced) break;
        }
    }
    return f;
}

} // namespace

std::optional<RatVector> rescaling_witness(const LogCanonicalStructure& structure,
                                           const std::vector<SmoothableWeight>& subset,
                                           const std::vector<Rational>& c,
                                           const std::vector<Rational>& c_prime,
                                           const DeformOptions& options) {
    if (c.size() != subset.size() || c_prime.size() != subset.size())
        throw ValidationError("coefficient counts do not match the subset");
    for (std::size_t t = 0; t < subset.size(); ++t)
        if (c[t] == 0 || c_prime[t] == 0)
            throw ValidationError("rescaling coefficients must be nonzero");

    const std::size_t n = structure.n;
    if (subset.empty()) return RatVector(n, Rational(1));
    if (!check_w1(subset, options.level_cap))
        throw W1Violated("subset fails the uniqueness condition");

    // Integer dual basis: rows xi with xi . theta' = delta. Exists exactly
    // when the integer span of the subset is saturated.
    const std::size_t s = subset.size();
    std::vector<std::vector<Integer>> theta_rows(s, std::vector<Integer>(n));
    for (std::size_t t = 0; t < s; ++t)
        for (std::size_t i = 0; i < n; ++i) theta_rows[t][i] = subset[t].theta[i];
    const SmithForm f = smith_form(theta_rows);

    std::vector<std::vector<Integer>> xi(s, std::vector<Integer>(n, 0));
    for (std::size_t t = 0; t < s; ++t) {
        // Solve (theta rows) x = e_t: diagonal system in transformed coordinates.
        std::vector<Integer> y(n, 0);
        for (std::size_t i = 0; i < s; ++i) {
            const Integer& rhs = f.u[i][t];
            if (i < std::min(s, n) && f.d[i][i] != 0) {
                Integer q, rem;
                mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), rhs.get_mpz_t(),
                            f.d[i][i].get_mpz_t());
                if (rem != 0) return std::nullopt; // no integer dual vector
                y[i] = q;
            } else if (rhs != 0) {
                return std::nullopt; // inconsistent over the integers
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) xi[t][i] += f.v[i][j] * y[j];
    }

    RatVector t_vec(n, Rational(1));
    for (std::size_t t = 0; t < s; ++t) {
        const Rational ratio = c_prime[t] / c[t];
        for (std::size_t i = 0; i < n; ++i) {
            if (xi[t][i] == 0) continue;
            if (!xi[t][i].fits_slong_p()) throw InternalError("dual basis exponent overflow");
            t_vec[i] *= pow_rational(ratio, xi[t][i].get_si());
        }
    }

    const Deformation from = deform(structure, subset, c, options);
    const Deformation to = deform(structure, subset, c_prime, options);
    if (rescale(t_vec, from.total) != to.total)
        throw InternalError("rescaling witness fails verification");
    return t_vec;
}

Multivector maximality_projection(const LogCanonicalStructure& structure,
                                  const std::vector<SmoothableWeight>& full_subset,
                                  const std::vector<Rational>& c_prime,
                                  const std::vector<std::size_t>& sub_indices,
                                  const DeformOptions& options) {
    for (std::size_t idx : sub_indices)
        if (idx >= full_subset.size()) throw ValidationError("sub-subset index out of range");
    const Deformation full = deform(structure, full_subset, c_prime, options);

    const std::size_t n = structure.n;
    std::vector<bool> selected(full.subset.size(), false);
    // deform() sorts the subset; translate indices through border pairs.
    for (std::size_t idx : sub_indices) {
        const auto& chosen = full_subset[idx];
        bool found = false;
        for (std::size_t t = 0; t < full.subset.size(); ++t)
            if (full.subset[t].j == chosen.j && full.subset[t].k == chosen.k) {
                selected[t] = true;
                found = true;
            }
        if (!found) throw InternalError("sub-subset element lost in canonical ordering");
    }

    RatMatrix theta_matrix(n, full.subset.size());
    for (std::size_t t = 0; t < full.subset.size(); ++t)
        for (std::size_t i = 0; i < n; ++i) theta_matrix.at(i, t) = Rational(full.subset[t].theta[i]);

    Multivector projection(n, 2);
    for (const auto& [w, component] : weight_decompose(full.total)) {
        RatVector wr(n);
        for (std::size_t i = 0; i < n; ++i) wr[i] = Rational(w[i]);
        if (is_zero(wr)) {
            projection = projection + component;
            continue;
        }
        const auto b = solve_affine(theta_matrix, wr);
        if (!b) throw InternalError("deformation weight outside the subset span");
        bool keep = true;
        for (std::size_t t = 0; t < b->size() && keep; ++t) {
            const Rational& bt = (*b)[t];
            if (bt == 0) continue;
            if (!selected[t] || !is_integer(bt) || bt < 0) keep = false;
        }
        if (keep) projection = projection + component;
    }
    return projection;
}

} // namespace logsymp
