#include "logsymp/logcan.hpp"

#include "logsymp/deform.hpp"
#include "logsymp/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace logsymp {

void validate(const LogCanonicalStructure& s) {
    if (s.lambda.rows() != s.n || s.lambda.cols() != s.n)
        throw ValidationError("lambda must be " + std::to_string(s.n) + "x" + std::to_string(s.n));
    if (s.beta.cols() != s.n)
        throw ValidationError("beta must have " + std::to_string(s.n) + " columns");
    for (std::size_t i = 0; i < s.n; ++i)
        for (std::size_t j = 0; j < s.n; ++j)
            if (s.lambda.at(i, j) != -s.lambda.at(j, i))
                throw ValidationError("lambda not skew-symmetric at entry (" +
                                      std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
}

Multivector log_canonical_bivector(const LogCanonicalStructure& s) {
    validate(s);
    Multivector pi(s.n, 2);
    for (std::size_t j = 0; j < s.n; ++j)
        for (std::size_t k = j + 1; k < s.n; ++k) {
            if (s.lambda.at(j, k) == 0) continue;
            std::vector<long> exps(s.n, 0);
            exps[j] = 1;
            exps[k] = 1;
            pi.add_term(TermKey{std::move(exps), {j, k}}, s.lambda.at(j, k));
        }
    return pi;
}

bool is_t_log_symplectic(const LogCanonicalStructure& s) {
    validate(s);
    return kernel(vstack(s.lambda, s.beta)).empty();
}

std::vector<SmoothableWeight> smoothable_weights(const LogCanonicalStructure& s) {
    if (!is_t_log_symplectic(s)) throw ValidationError("structure is not T-log-symplectic");
    const std::size_t n = s.n, r = s.beta.rows();

    std::vector<SmoothableWeight> out;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
            // Unknowns (theta_1..theta_n, a); equations lambda theta = a (e_j - e_k),
            // beta theta = 0, theta_j = -1. Any solution is the only one.
            RatMatrix m(n + r + 1, n + 1);
            RatVector b(n + r + 1, Rational(0));
            for (std::size_t row = 0; row < n; ++row) {
                for (std::size_t col = 0; col < n; ++col) m.at(row, col) = s.lambda.at(row, col);
                if (row == j) m.at(row, n) = -1;
                if (row == k) m.at(row, n) = 1;
            }
            for (std::size_t row = 0; row < r; ++row)
                for (std::size_t col = 0; col < n; ++col) m.at(n + row, col) = s.beta.at(row, col);
            m.at(n + r, j) = 1;
            b[n + r] = -1;

            auto sol = solve_affine(m, b);
            if (!sol) continue;
            const Rational a = (*sol)[n];
            if (a == 0) continue;
            if ((*sol)[k] != -1) continue;

            Weight theta(n, 0);
            bool good = true;
            for (std::size_t i = 0; i < n && good; ++i) {
                const Rational& ti = (*sol)[i];
                if (i == j || i == k) {
                    theta[i] = -1;
                    continue;
                }
                if (!is_integer(ti) || ti < 0) {
                    good = false;
                    break;
                }
                const Integer value = integer_part(ti);
                if (!value.fits_slong_p()) throw InternalError("smoothable weight entry overflow");
                theta[i] = value.get_si();
            }
            if (!good) continue;
            out.push_back(SmoothableWeight{std::move(theta), j, k, a});
        }
    return out; // loop order is already (j, k)-sorted
}

std::vector<Weight> brute_force_smoothable(const LogCanonicalStructure& s, long box) {
    validate(s);
    if (box < 0) throw ValidationError("negative search box");
    const std::size_t n = s.n;
    std::vector<Weight> found;
    Weight w(n, -1);
    while (true) {
        int negatives = 0;
        for (long wi : w)
            if (wi == -1) ++negatives;
        if (negatives == 2) {
            RatVector wr(n);
            for (std::size_t i = 0; i < n; ++i) wr[i] = Rational(w[i]);
            const RatVector lw = matvec(s.lambda, wr);
            bool ok = true;
            Rational border_sum(0);
            for (std::size_t i = 0; i < n && ok; ++i) {
                if (w[i] == -1)
                    border_sum += lw[i];
                else if (lw[i] != 0)
                    ok = false;
            }
            if (ok && border_sum == 0 && is_zero(matvec(s.beta, wr))) found.push_back(w);
        }
        // odometer over {-1..box}^n
        std::size_t pos = 0;
        while (pos < n && w[pos] == box) w[pos++] = -1;
        if (pos == n) break;
        ++w[pos];
    }
    std::sort(found.begin(), found.end());
    return found;
}

SmoothingDiagram smoothing_diagram(const LogCanonicalStructure& s) {
    SmoothingDiagram d;
    d.n = s.n;
    std::vector<int> degree(s.n, 0);
    for (const auto& theta : smoothable_weights(s)) {
        DiagramEdge edge;
        edge.j = theta.j;
        edge.k = theta.k;
        edge.theta = theta;
        for (std::size_t i = 0; i < s.n; ++i)
            if (theta.theta[i] > 0) edge.arcs[i] = theta.theta[i];
        ++degree[edge.j];
        ++degree[edge.k];
        d.edges.push_back(std::move(edge));
    }
    for (std::size_t i = 0; i < s.n; ++i)
        if (degree[i] > 2)
            throw InternalError("smoothing diagram vertex " + std::to_string(i + 1) +
                                " has degree " + std::to_string(degree[i]));
    return d;
}

std::string to_dot(const SmoothingDiagram& d) {
    std::ostringstream os;
    os << "graph smoothing {\n";
    os << "  layout=circo;\n";
    for (std::size_t i = 1; i <= d.n; ++i) os << "  " << i << ";\n";
    for (const auto& edge : d.edges) {
        os << "  " << (edge.j + 1) << " -- " << (edge.k + 1) << " [style=solid";
        if (!edge.arcs.empty()) {
            os << ", label=\"";
            bool first = true;
            for (const auto& [vertex, count] : edge.arcs) {
                if (!first) os << " ";
                first = false;
                os << "arcs@" << (vertex + 1) << "=" << count;
            }
            os << "\"";
        }
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

bool is_linearly_independent(const std::vector<SmoothableWeight>& weights) {
    if (weights.empty()) return true;
    const std::size_t n = weights.front().theta.size();
    RatMatrix m(n, weights.size());
    for (std::size_t c = 0; c < weights.size(); ++c)
        for (std::size_t i = 0; i < n; ++i) m.at(i, c) = Rational(weights[c].theta[i]);
    const bool by_rank = rank(m) == weights.size();

    // Cross-check: the border edges form no cycle.
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&parent](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    bool acyclic = true;
    for (const auto& w : weights) {
        const std::size_t a = find(w.j), b = find(w.k);
        if (a == b) {
            acyclic = false;
            break;
        }
        parent[a] = b;
    }
    if (by_rank != acyclic)
        throw InternalError("independence rank test disagrees with the edge-cycle test");
    return by_rank;
}

bool check_w1(const std::vector<SmoothableWeight>& subset, std::size_t level_cap) {
    const TailWeightSet tail = enumerate_tail_weights(subset, 1, level_cap);
    for (const auto& [level, entries] : tail.by_level)
        if (!entries.empty()) return false;
    if (!tail.exhausted)
        throw CapExceeded("condition W1 undecided at level cap " + std::to_string(level_cap));
    return true;
}

bool check_w2(const std::vector<SmoothableWeight>& subset, std::size_t level_cap) {
    const TailWeightSet tail = enumerate_tail_weights(subset, 2, level_cap);
    if (!tail.exhausted)
        throw CapExceeded("condition W2 undecided at level cap " + std::to_string(level_cap));
    return true;
}

} // namespace logsymp
