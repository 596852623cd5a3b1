#include "logsymp/cartan.hpp"

#include "logsymp/errors.hpp"

#include <numeric>
#include <sstream>

namespace logsymp {

GcmDiagnostics validate_gcm(const GCM& a) {
    GcmDiagnostics d;
    const std::size_t r = a.size;
    if (a.entries.size() != r) {
        d.problems.push_back("entry rows do not match the declared size");
        return d;
    }
    for (const auto& row : a.entries)
        if (row.size() != r) {
            d.problems.push_back("entry columns do not match the declared size");
            return d;
        }
    for (std::size_t i = 0; i < r; ++i) {
        if (a.entries[i][i] != 2)
            d.problems.push_back("diagonal entry (" + std::to_string(i + 1) + "," +
                                 std::to_string(i + 1) + ") is not 2");
        for (std::size_t j = 0; j < r; ++j) {
            if (i == j) continue;
            if (a.entries[i][j] > 0)
                d.problems.push_back("off-diagonal entry (" + std::to_string(i + 1) + "," +
                                     std::to_string(j + 1) + ") is positive");
        }
    }
    if (d.problems.empty()) {
        try {
            find_symmetrizer(a);
        } catch (const NotSymmetrizable& e) {
            d.problems.push_back(e.what());
        }
    }
    d.valid = d.problems.empty();
    return d;
}

std::vector<long> find_symmetrizer(const GCM& a) {
    const std::size_t r = a.size;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            if ((a.entries[i][j] == 0) != (a.entries[j][i] == 0))
                throw NotSymmetrizable("entries (" + std::to_string(i + 1) + "," +
                                       std::to_string(j + 1) + ") and its mirror disagree on zero");

    std::vector<Rational> ratio(r, Rational(0));
    std::vector<int> component(r, -1);
    std::vector<long> result(r, 0);
    int comp_id = 0;
    for (std::size_t root = 0; root < r; ++root) {
        if (component[root] != -1) continue;
        std::vector<std::size_t> members;
        std::vector<std::size_t> queue{root};
        component[root] = comp_id;
        ratio[root] = 1;
        while (!queue.empty()) {
            const std::size_t i = queue.back();
            queue.pop_back();
            members.push_back(i);
            for (std::size_t j = 0; j < r; ++j) {
                if (i == j || a.entries[i][j] == 0) continue;
                const Rational implied = ratio[i] * Rational(a.entries[i][j], a.entries[j][i]);
                if (component[j] == -1) {
                    component[j] = comp_id;
                    ratio[j] = implied;
                    queue.push_back(j);
                } else if (ratio[j] != implied) {
                    throw NotSymmetrizable("symmetrizer ratios are inconsistent around index " +
                                           std::to_string(j + 1));
                }
            }
        }
        // clear denominators and reduce to gcd 1 within the component
        Integer common_den(1), common_num(0);
        for (std::size_t m : members) {
            if (ratio[m] <= 0) throw NotSymmetrizable("nonpositive symmetrizer ratio");
            mpz_lcm(common_den.get_mpz_t(), common_den.get_mpz_t(),
                    ratio[m].get_den().get_mpz_t());
        }
        std::vector<Integer> scaled;
        for (std::size_t m : members) {
            Integer v = ratio[m].get_num() * (common_den / ratio[m].get_den());
            mpz_gcd(common_num.get_mpz_t(), common_num.get_mpz_t(), v.get_mpz_t());
            scaled.push_back(std::move(v));
        }
        for (std::size_t t = 0; t < members.size(); ++t) {
            const Integer v = scaled[t] / common_num;
            if (!v.fits_slong_p()) throw InternalError("symmetrizer entry overflow");
            result[members[t]] = v.get_si();
        }
        ++comp_id;
    }
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            if (result[i] * a.entries[i][j] != result[j] * a.entries[j][i])
                throw NotSymmetrizable("computed symmetrizer fails the defining identity");
    return result;
}

void validate(const CartanJob& job) {
    const GcmDiagnostics d = validate_gcm(job.cartan_matrix);
    if (!d.valid) {
        std::string msg = "invalid Cartan matrix";
        for (const auto& p : d.problems) msg += "; " + p;
        throw ValidationError(msg);
    }
    const std::size_t r = job.cartan_matrix.size;
    if (job.symmetrizer.size() != r) throw ValidationError("symmetrizer length mismatch");
    for (long di : job.symmetrizer)
        if (di < 1) throw ValidationError("symmetrizer entries must be positive");
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            if (job.symmetrizer[i] * job.cartan_matrix.entries[i][j] !=
                job.symmetrizer[j] * job.cartan_matrix.entries[j][i])
                throw ValidationError("symmetrizer does not symmetrize the Cartan matrix");
    if (job.word.empty()) throw ValidationError("empty word");
    for (std::size_t idx : job.word)
        if (idx >= r) throw ValidationError("word index out of range");
}

ActionDatum build_datum(const CartanJob& job) {
    validate(job);
    const std::size_t r = job.cartan_matrix.size;
    const std::size_t n = job.word.size();

    ActionDatum datum;
    datum.torus_rank = r;
    datum.form = RatMatrix(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            datum.form.at(i, j) = Rational(job.symmetrizer[i] * job.cartan_matrix.entries[i][j]);

    datum.betas = RatMatrix(r, n);
    for (std::size_t j = 0; j < n; ++j) {
        RatVector beta(r, Rational(0));
        beta[job.word[j]] = 1;
        for (std::size_t t = j; t-- > 0;) {
            RatVector alpha(r, Rational(0));
            alpha[job.word[t]] = 1;
            beta = reflect(datum.form, alpha, beta);
        }
        for (std::size_t i = 0; i < r; ++i) datum.betas.at(i, j) = beta[i];
    }

    const DatumAnalysis analysis = analyze(datum);
    for (std::size_t j = 0; j < n; ++j) {
        RatVector alpha(r, Rational(0));
        alpha[job.word[j]] = 1;
        if (analysis.gammas[j] != alpha)
            throw InternalError("gamma sequence does not recover the word's simple roots");
    }
    return datum;
}

std::map<std::size_t, Rational> bott_samelson_c(const CartanJob& job) {
    validate(job);
    const ActionDatum datum = build_datum(job);
    const DatumAnalysis analysis = analyze(datum);
    std::map<std::size_t, Rational> c;
    for (std::size_t j : analysis.j_set) c[j] = Rational(-2 * job.symmetrizer[job.word[j]]);
    return c;
}

Deformation pi_i_c(const CartanJob& job, const DeformOptions& options) {
    validate(job);
    const ActionDatum datum = build_datum(job);
    const DatumAnalysis analysis = analyze(datum);
    const std::vector<SmoothableWeight> subset = smoothable_weights_via_gamma(analysis);
    if (analysis.j_int_set != analysis.j_set)
        throw InternalError("Cartan datum with non-integral repetition index");

    std::map<std::size_t, Rational> c = job.c;
    if (c.empty()) c = bott_samelson_c(job);
    std::vector<Rational> coefficients;
    for (const auto& theta : subset) {
        auto it = c.find(theta.j);
        if (it == c.end())
            throw ValidationError("missing coefficient for repetition index " +
                                  std::to_string(theta.j + 1));
        coefficients.push_back(it->second);
    }
    if (c.size() != subset.size()) throw ValidationError("coefficient for an index outside J");
    return deform(induced_structure(datum), subset, coefficients, options);
}

namespace {

std::string render_monomial(const std::vector<long>& exps) {
    std::ostringstream os;
    bool any = false;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] == 0) continue;
        if (any) os << "*";
        any = true;
        os << "x" << (i + 1);
        if (exps[i] != 1) os << "^" << exps[i];
    }
    return any ? os.str() : "1";
}

} // namespace

CGLReport check_cgl(const ActionDatum& datum, const Multivector& pi) {
    validate(datum);
    const std::size_t n = datum.betas.cols();
    if (pi.dim() != n) throw DimensionMismatch("bivector lives on the wrong space");
    if (pi.degree() != 2 && !pi.is_zero()) throw ValidationError("CGL check expects a bivector");

    CGLReport report;
    for (std::size_t j = 0; j < n; ++j) report.weights.push_back(datum.betas.col(j));
    for (std::size_t k = 0; k < n; ++k)
        report.h_vectors.push_back(matvec(datum.form, datum.betas.col(k)));

    // 1) torus invariance: every term weight lies in ker beta
    for (const auto& [key, coeff] : pi.terms()) {
        const Weight w = term_weight(key, n);
        RatVector wr(n);
        for (std::size_t i = 0; i < n; ++i) wr[i] = Rational(w[i]);
        if (!is_zero(matvec(datum.betas, wr)))
            report.failures.push_back(
                {1, "term " + render(key, coeff) + " is not torus-invariant"});
    }

    // 2) Gram conditions on the characters
    for (std::size_t j = 0; j < n; ++j)
        if (form_pair(datum.form, datum.betas.col(j), datum.betas.col(j)) == 0)
            report.failures.push_back({2, "character " + std::to_string(j + 1) + " is isotropic"});

    // 3) bracket tails confined to the intermediate variables
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
            const Rational leading =
                -form_pair(datum.form, datum.betas.col(j), datum.betas.col(k));
            std::map<std::vector<long>, Rational> tail;
            for (const auto& [key, coeff] : pi.terms())
                if (key.vars == std::vector<std::size_t>{j, k}) tail[key.exps] = coeff;
            {
                std::vector<long> log_exps(n, 0);
                log_exps[j] = 1;
                log_exps[k] = 1;
                auto it = tail.find(log_exps);
                if (it == tail.end()) {
                    if (leading != 0) tail[log_exps] = -leading;
                } else {
                    it->second -= leading;
                    if (it->second == 0) tail.erase(it);
                }
            }
            for (const auto& [exps, coeff] : tail)
                for (std::size_t i = 0; i < n; ++i)
                    if (exps[i] != 0 && (i <= j || i >= k)) {
                        report.failures.push_back(
                            {3, "(" + std::to_string(j + 1) + "," + std::to_string(k + 1) +
                                    "): tail monomial " + render_monomial(exps) +
                                    " involves x" + std::to_string(i + 1)});
                        break;
                    }
        }

    report.passes = report.failures.empty();
    return report;
}

} // namespace logsymp
