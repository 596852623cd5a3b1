#include "logsymp/actiondata.hpp"

#include "logsymp/errors.hpp"

#include <algorithm>

namespace logsymp {

void validate(const ActionDatum& datum) {
    const std::size_t r = datum.torus_rank;
    if (datum.form.rows() != r || datum.form.cols() != r)
        throw ValidationError("form must be " + std::to_string(r) + "x" + std::to_string(r));
    if (datum.betas.rows() != r) throw ValidationError("betas must have torus_rank rows");
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            if (datum.form.at(i, j) != datum.form.at(j, i))
                throw ValidationError("form is not symmetric");
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < datum.betas.cols(); ++j)
            if (!is_integer(datum.betas.at(i, j)))
                throw ValidationError("character entries must be integers");
    for (std::size_t j = 0; j < datum.betas.cols(); ++j) {
        const RatVector beta = datum.betas.col(j);
        if (form_pair(datum.form, beta, beta) == 0)
            throw IsotropicVector("character " + std::to_string(j + 1) + " is isotropic");
    }
}

Rational form_pair(const RatMatrix& form, const RatVector& a, const RatVector& b) {
    return dot(a, matvec(form, b));
}

Rational cartan_number(const RatMatrix& form, const RatVector& beta, const RatVector& xi) {
    const Rational self = form_pair(form, beta, beta);
    if (self == 0) throw IsotropicVector("Cartan number against an isotropic vector");
    return 2 * form_pair(form, beta, xi) / self;
}

RatVector reflect(const RatMatrix& form, const RatVector& beta, const RatVector& xi) {
    const Rational a = cartan_number(form, beta, xi);
    RatVector out = xi;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= a * beta[i];
    return out;
}

DatumAnalysis analyze(const ActionDatum& datum) {
    validate(datum);
    const std::size_t n = datum.betas.cols();

    DatumAnalysis a;
    a.datum = datum;

    for (std::size_t j = 0; j < n; ++j) {
        RatVector gamma = datum.betas.col(j);
        for (std::size_t t = j; t-- > 0;) gamma = reflect(datum.form, datum.betas.col(t), gamma);
        a.gammas.push_back(std::move(gamma));
    }

    a.q = RatMatrix::identity(n);
    a.q_inv = RatMatrix::identity(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
            a.q.at(j, k) = cartan_number(datum.form, a.gammas[j], a.gammas[k]);
            a.q_inv.at(j, k) = cartan_number(datum.form, datum.betas.col(j), datum.betas.col(k));
        }
    if (matmul(a.q, a.q_inv) != RatMatrix::identity(n))
        throw InternalError("Q and its inverse fail to multiply to the identity");
    for (std::size_t k = 0; k < n; ++k) {
        // gamma_k must equal sum_j Q_{jk} beta_j
        RatVector recovered(datum.torus_rank, Rational(0));
        for (std::size_t j = 0; j <= k; ++j)
            for (std::size_t i = 0; i < datum.torus_rank; ++i)
                recovered[i] += a.q.at(j, k) * datum.betas.at(i, j);
        if (recovered != a.gammas[k]) throw InternalError("gamma = beta Q identity fails");
    }

    a.d = RatMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const RatVector beta = datum.betas.col(j);
        a.d.at(j, j) = form_pair(datum.form, beta, beta);
        if (form_pair(datum.form, a.gammas[j], a.gammas[j]) != a.d.at(j, j))
            throw InternalError("reflections failed to preserve the form");
    }
    a.nu = matmul(a.d, a.q_inv);

    a.jplus.assign(n, kNoSuccessor);
    a.jminus.assign(n, kNoSuccessor);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k)
            if (a.gammas[k] == a.gammas[j]) {
                a.jplus[j] = k;
                a.jminus[k] = j;
                break;
            }

    for (std::size_t j = 0; j < n; ++j) {
        auto it = std::find(a.support.begin(), a.support.end(), a.gammas[j]);
        if (it == a.support.end()) {
            a.support.push_back(a.gammas[j]);
            a.level_sets.push_back({j});
        } else {
            a.level_sets[static_cast<std::size_t>(it - a.support.begin())].push_back(j);
        }
    }

    a.e = RatMatrix::identity(n);
    a.e_inv = RatMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        if (a.jplus[j] != kNoSuccessor) a.e.at(a.jplus[j], j) = -1;
        for (std::size_t k = j; k < n; ++k)
            if (a.gammas[k] == a.gammas[j]) a.e_inv.at(k, j) = 1;
    }
    if (matmul(a.e, a.e_inv) != RatMatrix::identity(n))
        throw InternalError("E and its inverse fail to multiply to the identity");

    a.qe = matmul(a.q, a.e);

    for (std::size_t j = 0; j < n; ++j) {
        if (a.jplus[j] == kNoSuccessor) continue;
        a.j_set.push_back(j);
        bool integral_interior = true;
        for (std::size_t k = j + 1; k < a.jplus[j] && integral_interior; ++k) {
            const Rational ck = cartan_number(datum.form, a.gammas[k], a.gammas[j]);
            if (!is_integer(ck) || ck > 0) integral_interior = false;
        }
        if (integral_interior) a.j_int_set.push_back(j);
    }
    return a;
}

DatumPredicates predicates(const DatumAnalysis& analysis) {
    DatumPredicates p;
    const std::size_t r = analysis.datum.torus_rank;

    RatMatrix support(r, analysis.support.size());
    for (std::size_t c = 0; c < analysis.support.size(); ++c)
        for (std::size_t i = 0; i < r; ++i) support.at(i, c) = analysis.support[c][i];
    p.distinguished = rank(support) == analysis.support.size();

    p.integral = analysis.j_int_set == analysis.j_set;

    p.strongly_integral = true;
    for (std::size_t s = 0; s < analysis.support.size() && p.strongly_integral; ++s)
        for (std::size_t t = 0; t < analysis.support.size() && p.strongly_integral; ++t) {
            if (s == t) continue;
            const Rational c =
                cartan_number(analysis.datum.form, analysis.support[s], analysis.support[t]);
            if (!is_integer(c) || c > 0) p.strongly_integral = false;
        }
    return p;
}

LogCanonicalStructure induced_structure(const ActionDatum& datum) {
    validate(datum);
    const std::size_t n = datum.betas.cols();
    LogCanonicalStructure s;
    s.n = n;
    s.lambda = RatMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
            const Rational pairing = form_pair(datum.form, datum.betas.col(j), datum.betas.col(k));
            s.lambda.at(j, k) = -pairing;
            s.lambda.at(k, j) = pairing;
        }
    s.beta = datum.betas;
    return s;
}

std::vector<SmoothableWeight> smoothable_weights_via_gamma(const DatumAnalysis& analysis) {
    const std::size_t n = analysis.datum.betas.cols();
    std::vector<SmoothableWeight> out;
    for (std::size_t j : analysis.j_int_set) {
        const std::size_t k = analysis.jplus[j];
        SmoothableWeight w;
        w.j = j;
        w.k = k;
        w.a = -analysis.d.at(j, j);
        w.theta.assign(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const Rational qe = analysis.qe.at(i, j);
            if (!is_integer(qe)) throw InternalError("integral theta column with fractional entry");
            const Integer value = integer_part(qe);
            if (!value.fits_slong_p()) throw InternalError("theta entry overflow");
            w.theta[i] = value.get_si();
            // cross-check against the direct formula
            Rational expected(0);
            if (i == j || i == k)
                expected = -1;
            else if (j < i && i < k)
                expected = -cartan_number(analysis.datum.form, analysis.gammas[i],
                                          analysis.gammas[j]);
            if (qe != expected) throw InternalError("theta column disagrees with its formula");
        }
        out.push_back(std::move(w));
    }
    return out; // j_int_set is increasing, so borders are sorted
}

std::optional<RatVector> solve_weight_equation(const DatumAnalysis& analysis,
                                               const RatVector& a, const RatVector& xi) {
    const std::size_t n = analysis.datum.betas.cols();
    const std::size_t r = analysis.datum.torus_rank;
    if (a.size() != n || xi.size() != r) throw DimensionMismatch("weight equation shape mismatch");

    RatVector v(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Rational xi_j = form_pair(analysis.datum.form, xi, analysis.datum.betas.col(j));
        v[j] = (xi_j - a[j]) / analysis.d.at(j, j);
    }
    RatVector recovered(r, Rational(0));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < r; ++i) recovered[i] += v[j] * analysis.gammas[j][i];
    if (recovered != xi) return std::nullopt;

    RatVector w(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) w[i] += analysis.q.at(i, j) * v[j];
    return w;
}

std::vector<RatVector> ker_beta_basis(const DatumAnalysis& analysis) {
    if (!predicates(analysis).distinguished)
        throw NotDistinguished("kernel basis requires a distinguished datum");
    std::vector<RatVector> basis;
    for (std::size_t j : analysis.j_set) basis.push_back(analysis.qe.col(j));
    return basis;
}

std::optional<std::map<std::size_t, Rational>> eta_decompose(const DatumAnalysis& analysis,
                                                             const RatVector& f) {
    const std::size_t n = analysis.datum.betas.cols();
    if (f.size() != n) throw DimensionMismatch("border vector length mismatch");
    if (!predicates(analysis).distinguished)
        throw NotDistinguished("eta decomposition requires a distinguished datum");

    std::size_t j = n, k = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (f[i] == -1) {
            if (j == n)
                j = i;
            else if (k == n)
                k = i;
            else
                throw ValidationError("border vector has more than two -1 entries");
        }
    }
    if (k == n) throw ValidationError("border vector needs two -1 entries");
    for (std::size_t i = 0; i < n; ++i)
        if ((i < j || i > k) && f[i] != 0)
            throw ValidationError("border vector must vanish outside its border");

    const std::size_t r = analysis.datum.torus_rank;
    RatMatrix support(r, analysis.support.size());
    for (std::size_t c = 0; c < analysis.support.size(); ++c)
        for (std::size_t i = 0; i < r; ++i) support.at(i, c) = analysis.support[c][i];
    auto gamma_coefficient = [&](const RatVector& eta, const RatVector& gamma) {
        const auto coords = solve_affine(support, eta);
        if (!coords) throw InternalError("character outside the gamma support span");
        for (std::size_t c = 0; c < analysis.support.size(); ++c)
            if (analysis.support[c] == gamma) return (*coords)[c];
        throw InternalError("gamma value missing from the support");
    };

    std::map<std::size_t, Rational> coefficients;
    RatVector eta = analysis.gammas[j];
    coefficients[j] = gamma_coefficient(eta, analysis.gammas[j]);
    for (std::size_t l = j + 1; l < k; ++l) {
        eta = reflect(analysis.datum.form, analysis.gammas[l], eta);
        for (std::size_t i = 0; i < r; ++i) eta[i] -= f[l] * analysis.gammas[l][i];
        coefficients[l] = gamma_coefficient(eta, analysis.gammas[l]);
    }
    if (eta != analysis.gammas[k]) return std::nullopt;
    return coefficients;
}

} // namespace logsymp
