#pragma once

#include "logsymp/actiondata.hpp"
#include "logsymp/cartan.hpp"
#include "logsymp/logcan.hpp"
#include "logsymp/multivec.hpp"

#include <random>
#include <vector>

namespace testdata {

using namespace logsymp;

/// Rank-one datum with characters (p, 1, -1, -p) and unit form.
inline ActionDatum beta2p(long p) {
    ActionDatum d;
    d.torus_rank = 1;
    d.form = RatMatrix(1, 1);
    d.form.at(0, 0) = 1;
    d.betas = RatMatrix(1, 4);
    d.betas.at(0, 0) = p;
    d.betas.at(0, 1) = 1;
    d.betas.at(0, 2) = -1;
    d.betas.at(0, 3) = -p;
    return d;
}

inline GCM make_gcm(std::vector<std::vector<long>> entries) {
    GCM g;
    g.size = entries.size();
    g.entries = std::move(entries);
    return g;
}

inline GCM gcm_a1() { return make_gcm({{2}}); }
inline GCM gcm_a2() { return make_gcm({{2, -1}, {-1, 2}}); }
inline GCM gcm_b2() { return make_gcm({{2, -2}, {-1, 2}}); }
inline GCM gcm_g2() { return make_gcm({{2, -3}, {-1, 2}}); }
inline GCM gcm_affine2() { return make_gcm({{2, -2}, {-2, 2}}); }

/// word entries are 1-based, as in job files.
inline CartanJob make_job(GCM gcm, std::vector<long> word,
                          std::map<std::size_t, Rational> c = {}) {
    CartanJob job;
    job.cartan_matrix = std::move(gcm);
    job.symmetrizer = find_symmetrizer(job.cartan_matrix);
    for (long w : word) job.word.push_back(static_cast<std::size_t>(w - 1));
    job.c = std::move(c);
    return job;
}

inline Rational random_rational(std::mt19937& rng, long max_abs = 3, bool nonzero = false) {
    std::uniform_int_distribution<long> num(-max_abs, max_abs);
    std::uniform_int_distribution<long> den(1, 3);
    Rational q;
    do {
        q = rat(num(rng), den(rng));
    } while (nonzero && q == 0);
    return q;
}

inline Multivector random_multivector(std::mt19937& rng, std::size_t n, int degree,
                                      std::size_t max_terms = 6, long max_exp = 2) {
    std::uniform_int_distribution<std::size_t> term_count(1, max_terms);
    std::uniform_int_distribution<long> exp(0, max_exp);
    Multivector v(n, degree);
    const std::size_t terms = term_count(rng);
    for (std::size_t t = 0; t < terms; ++t) {
        std::vector<long> exps(n);
        for (auto& e : exps) e = exp(rng);
        std::vector<std::size_t> pool(n);
        for (std::size_t i = 0; i < n; ++i) pool[i] = i;
        std::shuffle(pool.begin(), pool.end(), rng);
        std::vector<std::size_t> vars(pool.begin(), pool.begin() + degree);
        std::sort(vars.begin(), vars.end());
        v.add_term(TermKey{std::move(exps), std::move(vars)}, random_rational(rng, 4, true));
    }
    return v;
}

/// Random skew matrix with small integer entries.
inline RatMatrix random_skew(std::mt19937& rng, std::size_t n, long max_abs = 3) {
    std::uniform_int_distribution<long> entry(-max_abs, max_abs);
    RatMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
            const long v = entry(rng);
            m.at(j, k) = v;
            m.at(k, j) = -v;
        }
    return m;
}

/// Random T-log-symplectic structure (resampled until the kernel dies).
inline LogCanonicalStructure random_structure(std::mt19937& rng, std::size_t n, std::size_t r,
                                              long max_abs = 3) {
    std::uniform_int_distribution<long> entry(-max_abs, max_abs);
    while (true) {
        LogCanonicalStructure s;
        s.n = n;
        s.lambda = random_skew(rng, n, max_abs);
        s.beta = RatMatrix(r, n);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < n; ++j) s.beta.at(i, j) = entry(rng);
        if (is_t_log_symplectic(s)) return s;
    }
}

/// Random valid action datum: symmetric integer form, integer characters,
/// no isotropic character.
inline ActionDatum random_datum(std::mt19937& rng, std::size_t n, std::size_t r,
                                long max_abs = 3) {
    std::uniform_int_distribution<long> entry(-max_abs, max_abs);
    while (true) {
        ActionDatum d;
        d.torus_rank = r;
        d.form = RatMatrix(r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = i; j < r; ++j) {
                const long v = entry(rng);
                d.form.at(i, j) = v;
                d.form.at(j, i) = v;
            }
        d.betas = RatMatrix(r, n);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < n; ++j) d.betas.at(i, j) = entry(rng);
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) {
            const RatVector beta = d.betas.col(j);
            ok = form_pair(d.form, beta, beta) != 0;
        }
        if (ok) return d;
    }
}

inline std::vector<Rational> ones(std::size_t count) {
    return std::vector<Rational>(count, Rational(1));
}

} // namespace testdata
