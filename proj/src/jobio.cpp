#include "logsymp/jobio.hpp"

#include "logsymp/errors.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace logsymp {

namespace {

using nlohmann::json;

std::string border_key(std::size_t j, std::size_t k) {
    return std::to_string(j + 1) + ":" + std::to_string(k + 1);
}

std::pair<std::size_t, std::size_t> parse_border(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ValidationError("border '" + text + "' needs j:k");
    try {
        const long j = std::stol(text.substr(0, colon));
        const long k = std::stol(text.substr(colon + 1));
        if (j < 1 || k <= j) throw ValidationError("border '" + text + "' must have 1 <= j < k");
        return {static_cast<std::size_t>(j - 1), static_cast<std::size_t>(k - 1)};
    } catch (const std::logic_error&) {
        throw ValidationError("border '" + text + "' is not a pair of integers");
    }
}

Rational rational_field(const json& value, const std::string& where) {
    if (value.is_number_integer()) return Rational(value.get<long>());
    if (value.is_string()) {
        if (auto q = parse_rational(value.get<std::string>())) return *q;
        throw ValidationError(where + ": malformed rational '" + value.get<std::string>() + "'");
    }
    throw ValidationError(where + ": expected a rational as a string or integer");
}

RatMatrix matrix_field(const json& rows, const std::string& where) {
    if (!rows.is_array() || rows.empty()) throw ValidationError(where + ": expected a matrix");
    const std::size_t ncols = rows.front().is_array() ? rows.front().size() : 0;
    RatMatrix m(rows.size(), ncols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].is_array() || rows[i].size() != ncols)
            throw ValidationError(where + ": ragged rows");
        for (std::size_t j = 0; j < ncols; ++j)
            m.at(i, j) = rational_field(rows[i][j], where + "[" + std::to_string(i + 1) + "][" +
                                                        std::to_string(j + 1) + "]");
    }
    return m;
}

json matrix_json(const RatMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json weight_json(const Weight& w) {
    json out = json::array();
    for (long wi : w) out.push_back(wi);
    return out;
}

} // namespace

JobFile parse_job(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("job file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string())
        throw ValidationError("job file needs a string field 'kind'");

    JobFile job;
    const std::string kind = doc["kind"].get<std::string>();
    if (kind == "action_datum") {
        job.kind = JobFile::Kind::ActionDatum;
        if (!doc.contains("form") || !doc.contains("betas"))
            throw ValidationError("action_datum jobs need 'form' and 'betas'");
        job.datum.form = matrix_field(doc["form"], "form");
        job.datum.betas = matrix_field(doc["betas"], "betas");
        job.datum.torus_rank = job.datum.form.rows();
        validate(job.datum);
    } else if (kind == "cartan") {
        job.kind = JobFile::Kind::Cartan;
        if (!doc.contains("cartan_matrix") || !doc.contains("word"))
            throw ValidationError("cartan jobs need 'cartan_matrix' and 'word'");
        const json& cm = doc["cartan_matrix"];
        if (!cm.is_array() || cm.empty()) throw ValidationError("cartan_matrix must be a matrix");
        job.cartan.cartan_matrix.size = cm.size();
        for (const auto& row : cm) {
            if (!row.is_array() || row.size() != cm.size())
                throw ValidationError("cartan_matrix must be square");
            std::vector<long> r;
            for (const auto& v : row) {
                if (!v.is_number_integer()) throw ValidationError("cartan_matrix entries must be integers");
                r.push_back(v.get<long>());
            }
            job.cartan.cartan_matrix.entries.push_back(std::move(r));
        }
        if (doc.contains("symmetrizer")) {
            for (const auto& v : doc["symmetrizer"]) {
                if (!v.is_number_integer()) throw ValidationError("symmetrizer entries must be integers");
                job.cartan.symmetrizer.push_back(v.get<long>());
            }
        } else {
            job.cartan.symmetrizer = find_symmetrizer(job.cartan.cartan_matrix);
        }
        for (const auto& v : doc["word"]) {
            if (!v.is_number_integer() || v.get<long>() < 1)
                throw ValidationError("word entries must be positive integers");
            job.cartan.word.push_back(static_cast<std::size_t>(v.get<long>() - 1));
        }
        if (doc.contains("c")) {
            for (const auto& [key, value] : doc["c"].items()) {
                long j = 0;
                try {
                    j = std::stol(key);
                } catch (const std::logic_error&) {
                    throw ValidationError("cartan c keys must be repetition indices, got '" + key + "'");
                }
                if (j < 1) throw ValidationError("cartan c keys must be positive");
                job.cartan.c[static_cast<std::size_t>(j - 1)] = rational_field(value, "c." + key);
            }
        }
        validate(job.cartan);
    } else {
        throw ValidationError("unknown job kind '" + kind + "'");
    }

    if (doc.contains("options")) {
        const json& opts = doc["options"];
        if (opts.contains("subset")) {
            std::vector<std::pair<std::size_t, std::size_t>> subset;
            for (const auto& b : opts["subset"]) subset.push_back(parse_border(b.get<std::string>()));
            std::sort(subset.begin(), subset.end());
            job.options.subset = std::move(subset);
        }
        if (opts.contains("c"))
            for (const auto& [key, value] : opts["c"].items())
                job.options.c_overrides.emplace_back(key, rational_field(value, "options.c." + key));
        if (opts.contains("level_cap")) job.options.level_cap = opts["level_cap"].get<std::size_t>();
        if (opts.contains("oracle_box")) job.options.oracle_box = opts["oracle_box"].get<long>();
    }
    return job;
}

JobFile load_job(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open job file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_job(buffer.str());
}

nlohmann::json canonical_job(const JobFile& job) {
    json doc;
    if (job.kind == JobFile::Kind::ActionDatum) {
        doc["kind"] = "action_datum";
        doc["form"] = matrix_json(job.datum.form);
        doc["betas"] = matrix_json(job.datum.betas);
    } else {
        doc["kind"] = "cartan";
        json cm = json::array();
        for (const auto& row : job.cartan.cartan_matrix.entries) cm.push_back(row);
        doc["cartan_matrix"] = std::move(cm);
        doc["symmetrizer"] = job.cartan.symmetrizer;
        json word = json::array();
        for (std::size_t idx : job.cartan.word) word.push_back(idx + 1);
        doc["word"] = std::move(word);
        if (!job.cartan.c.empty()) {
            json c;
            for (const auto& [j, value] : job.cartan.c) c[std::to_string(j + 1)] = to_string(value);
            doc["c"] = std::move(c);
        }
    }
    json opts;
    opts["level_cap"] = job.options.level_cap;
    opts["oracle_box"] = job.options.oracle_box;
    if (job.options.subset) {
        auto sorted = *job.options.subset;
        std::sort(sorted.begin(), sorted.end());
        json subset = json::array();
        for (const auto& [j, k] : sorted) subset.push_back(border_key(j, k));
        opts["subset"] = std::move(subset);
    }
    if (!job.options.c_overrides.empty()) {
        json c;
        for (const auto& [key, value] : job.options.c_overrides) c[key] = to_string(value);
        opts["c"] = std::move(c);
    }
    doc["options"] = std::move(opts);
    return doc;
}

ResolvedJob resolve(const JobFile& job) {
    ResolvedJob r;
    if (job.kind == JobFile::Kind::ActionDatum) {
        r.datum = job.datum;
    } else {
        validate(job.cartan);
        r.datum = build_datum(job.cartan);
    }
    r.analysis = analyze(r.datum);
    r.structure = induced_structure(r.datum);
    r.s_pi0 = smoothable_weights(r.structure);

    if (job.options.subset) {
        for (const auto& [j, k] : *job.options.subset) {
            bool found = false;
            for (std::size_t idx = 0; idx < r.s_pi0.size(); ++idx)
                if (r.s_pi0[idx].j == j && r.s_pi0[idx].k == k) {
                    r.subset_indices.push_back(idx);
                    found = true;
                    break;
                }
            if (!found)
                throw ValidationError("border " + border_key(j, k) + " is not smoothable");
        }
        std::sort(r.subset_indices.begin(), r.subset_indices.end());
        r.subset_indices.erase(
            std::unique(r.subset_indices.begin(), r.subset_indices.end()), r.subset_indices.end());
    } else {
        for (std::size_t idx = 0; idx < r.s_pi0.size(); ++idx) r.subset_indices.push_back(idx);
    }

    // default coefficients, then explicit Cartan c, then CLI overrides
    for (std::size_t idx : r.subset_indices) {
        const auto& theta = r.s_pi0[idx];
        Rational c(1);
        if (job.kind == JobFile::Kind::Cartan) {
            c = Rational(-2 * job.cartan.symmetrizer[job.cartan.word[theta.j]]);
            auto it = job.cartan.c.find(theta.j);
            if (it != job.cartan.c.end()) c = it->second;
        }
        r.coefficients.push_back(c);
    }
    if (job.kind == JobFile::Kind::Cartan)
        for (const auto& [j, value] : job.cartan.c) {
            (void)value;
            bool used = false;
            for (std::size_t idx : r.subset_indices) used = used || r.s_pi0[idx].j == j;
            if (!used)
                throw ValidationError("coefficient key " + std::to_string(j + 1) +
                                      " does not start a selected smoothable border");
        }

    for (const auto& [key, value] : job.options.c_overrides) {
        bool found = false;
        for (std::size_t t = 0; t < r.subset_indices.size(); ++t) {
            const auto& theta = r.s_pi0[r.subset_indices[t]];
            const bool match = key.find(':') != std::string::npos
                                   ? parse_border(key) == std::make_pair(theta.j, theta.k)
                                   : std::to_string(theta.j + 1) == key;
            if (match) {
                r.coefficients[t] = value;
                found = true;
            }
        }
        if (!found) throw ValidationError("coefficient key '" + key + "' matches no selected border");
    }
    for (const auto& c : r.coefficients)
        if (c == 0) throw ValidationError("deformation coefficients must be nonzero");
    return r;
}

nlohmann::json multivector_json(const Multivector& v) {
    json terms = json::array();
    for (const auto& [key, coeff] : v.terms()) {
        json term;
        term["coeff"] = to_string(coeff);
        term["exps"] = key.exps;
        json vars = json::array();
        for (std::size_t var : key.vars) vars.push_back(var + 1);
        term["vars"] = std::move(vars);
        terms.push_back(std::move(term));
    }
    return terms;
}

namespace {

json smoothable_json(const std::vector<SmoothableWeight>& weights, std::size_t n) {
    json out = json::array();
    for (const auto& w : weights) {
        json entry;
        entry["border"] = json::array({w.j + 1, w.k + 1});
        entry["theta"] = weight_json(w.theta);
        entry["a"] = to_string(w.a);
        entry["v_theta"] = render(v_theta(w, n));
        out.push_back(std::move(entry));
    }
    return out;
}

Deformation deform_for(const ResolvedJob& r, const JobOptions& options) {
    std::vector<SmoothableWeight> subset;
    for (std::size_t idx : r.subset_indices) subset.push_back(r.s_pi0[idx]);
    DeformOptions d;
    d.level_cap = options.level_cap;
    d.schedule_seed = options.schedule_seed;
    return deform(r.structure, subset, r.coefficients, d);
}

json deformation_json(const Deformation& d) {
    json out;
    json subset = json::array();
    for (const auto& theta : d.subset) subset.push_back(border_key(theta.j, theta.k));
    out["subset"] = std::move(subset);
    json c;
    for (std::size_t t = 0; t < d.subset.size(); ++t)
        c[border_key(d.subset[t].j, d.subset[t].k)] = to_string(d.coefficients[t]);
    out["c"] = std::move(c);
    json orders = json::array();
    for (const auto& order : d.orders) orders.push_back(multivector_json(order));
    out["orders"] = std::move(orders);
    out["total"] = multivector_json(d.total);
    return out;
}

} // namespace

nlohmann::json run_analyze(const JobFile& job) {
    const ResolvedJob r = resolve(job);
    const std::size_t n = r.structure.n;
    json report;
    report["input_echo"] = canonical_job(job);
    report["n"] = n;
    report["torus_rank"] = r.datum.torus_rank;
    report["lambda"] = matrix_json(r.structure.lambda);
    report["t_log_symplectic"] = is_t_log_symplectic(r.structure);
    report["pi0"] = multivector_json(log_canonical_bivector(r.structure));
    report["s_pi0"] = smoothable_json(r.s_pi0, n);

    json gammas = json::array();
    for (const auto& gamma : r.analysis.gammas) {
        json g = json::array();
        for (const auto& x : gamma) g.push_back(to_string(x));
        gammas.push_back(std::move(g));
    }
    report["gamma"] = std::move(gammas);

    const SmoothingDiagram diagram = smoothing_diagram(r.structure);
    json edges = json::array();
    for (const auto& edge : diagram.edges) {
        json e;
        e["border"] = json::array({edge.j + 1, edge.k + 1});
        json arcs;
        for (const auto& [vertex, count] : edge.arcs) arcs[std::to_string(vertex + 1)] = count;
        e["arcs"] = std::move(arcs);
        edges.push_back(std::move(e));
    }
    report["diagram"] = {{"vertices", n}, {"edges", std::move(edges)}};

    try {
        report["w1"] = check_w1(r.s_pi0, job.options.level_cap);
    } catch (const CapExceeded&) {
        report["w1"] = "inconclusive";
    }
    try {
        report["w2"] = check_w2(r.s_pi0, job.options.level_cap);
    } catch (const CapExceeded&) {
        report["w2"] = "inconclusive";
    }

    const DatumPredicates p = predicates(r.analysis);
    report["predicates"] = {{"distinguished", p.distinguished},
                            {"integral", p.integral},
                            {"strongly_integral", p.strongly_integral}};

    std::vector<Weight> expected;
    for (const auto& w : r.s_pi0) {
        bool within = true;
        for (long entry : w.theta) within = within && entry <= job.options.oracle_box;
        if (within) expected.push_back(w.theta);
    }
    std::sort(expected.begin(), expected.end());
    report["oracle"] = {{"box", job.options.oracle_box},
                        {"agrees", brute_force_smoothable(r.structure, job.options.oracle_box) ==
                                       expected}};
    return report;
}

nlohmann::json run_deform(const JobFile& job) {
    const ResolvedJob r = resolve(job);
    const Deformation d = deform_for(r, job.options);
    json report;
    report["input_echo"] = canonical_job(job);
    report["n"] = r.structure.n;
    report["s_pi0"] = smoothable_json(r.s_pi0, r.structure.n);
    report["deformation"] = deformation_json(d);
    report["checks"] = {{"jacobi", verify_jacobi(d.total) ? "pass" : "fail"}};
    return report;
}

nlohmann::json run_pfaffian(const JobFile& job) {
    const ResolvedJob r = resolve(job);
    const Deformation d = deform_for(r, job.options);
    json report;
    report["input_echo"] = canonical_job(job);
    report["pfaffian_pi0"] = multivector_json(t_pfaffian(r.structure, d.orders.front()));
    report["pfaffian_deformed"] = multivector_json(t_pfaffian(r.structure, d.total));
    return report;
}

nlohmann::json run_check_cgl(const JobFile& job) {
    const ResolvedJob r = resolve(job);
    const Deformation d = deform_for(r, job.options);
    const CGLReport cgl = check_cgl(r.datum, d.total);
    json report;
    report["input_echo"] = canonical_job(job);
    report["deformation"] = deformation_json(d);
    json failures = json::array();
    for (const auto& f : cgl.failures)
        failures.push_back({{"condition", f.condition}, {"witness", f.witness}});
    json weights = json::array();
    for (const auto& w : cgl.weights) {
        json entry = json::array();
        for (const auto& x : w) entry.push_back(to_string(x));
        weights.push_back(std::move(entry));
    }
    report["cgl"] = {{"passes", cgl.passes},
                     {"weights", std::move(weights)},
                     {"failures", std::move(failures)}};
    return report;
}

std::string run_export_dot(const JobFile& job) {
    const ResolvedJob r = resolve(job);
    return to_dot(smoothing_diagram(r.structure));
}

namespace {

std::string terms_text(const json& terms) {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& term : terms) {
        if (!out.empty()) out += " + ";
        out += term["coeff"].get<std::string>();
        for (std::size_t i = 0; i < term["exps"].size(); ++i) {
            const long e = term["exps"][i].get<long>();
            if (e == 0) continue;
            out += " * x" + std::to_string(i + 1);
            if (e != 1) out += "^" + std::to_string(e);
        }
        bool first = true;
        for (const auto& var : term["vars"]) {
            out += first ? " * " : "^";
            first = false;
            out += "d/dx" + std::to_string(var.get<long>());
        }
    }
    return out;
}

} // namespace

std::string analyze_text(const nlohmann::json& report) {
    std::ostringstream os;
    os << "n = " << report["n"].get<std::size_t>()
       << ", torus rank = " << report["torus_rank"].get<std::size_t>() << "\n";
    os << "pi0 = " << terms_text(report["pi0"]) << "\n";
    os << "T-log-symplectic: " << (report["t_log_symplectic"].get<bool>() ? "yes" : "no") << "\n";
    os << "smoothable weights (" << report["s_pi0"].size() << "):\n";
    for (const auto& entry : report["s_pi0"]) {
        os << "  " << entry["border"][0] << ":" << entry["border"][1] << "  theta = [";
        for (std::size_t i = 0; i < entry["theta"].size(); ++i)
            os << (i ? "," : "") << entry["theta"][i].get<long>();
        os << "]  a = " << entry["a"].get<std::string>()
           << "  V = " << entry["v_theta"].get<std::string>() << "\n";
    }
    os << "diagram edges:";
    if (report["diagram"]["edges"].empty()) os << " none";
    for (const auto& edge : report["diagram"]["edges"]) {
        os << " " << edge["border"][0] << "--" << edge["border"][1];
        for (const auto& [vertex, count] : edge["arcs"].items())
            os << " arcs@" << vertex << "=" << count.get<long>();
    }
    os << "\n";
    auto verdict = [](const json& v) {
        return v.is_boolean() ? (v.get<bool>() ? std::string("holds") : std::string("fails"))
                              : v.get<std::string>();
    };
    os << "W1: " << verdict(report["w1"]) << ", W2: " << verdict(report["w2"]) << "\n";
    const auto& p = report["predicates"];
    os << "predicates: distinguished=" << (p["distinguished"].get<bool>() ? "yes" : "no")
       << " integral=" << (p["integral"].get<bool>() ? "yes" : "no")
       << " strongly_integral=" << (p["strongly_integral"].get<bool>() ? "yes" : "no") << "\n";
    os << "oracle box " << report["oracle"]["box"].get<long>() << ": "
       << (report["oracle"]["agrees"].get<bool>() ? "agrees" : "DISAGREES") << "\n";
    return os.str();
}

std::string deform_text(const nlohmann::json& report) {
    std::ostringstream os;
    const auto& d = report["deformation"];
    os << "subset:";
    if (d["subset"].empty()) os << " (empty)";
    for (const auto& b : d["subset"])
        os << " " << b.get<std::string>() << " (c = "
           << d["c"][b.get<std::string>()].get<std::string>() << ")";
    os << "\n";
    for (std::size_t m = 0; m < d["orders"].size(); ++m)
        os << "pi_" << m << " = " << terms_text(d["orders"][m]) << "\n";
    os << "total = " << terms_text(d["total"]) << "\n";
    os << "jacobi: " << report["checks"]["jacobi"].get<std::string>() << "\n";
    return os.str();
}

std::string pfaffian_text(const nlohmann::json& report) {
    std::ostringstream os;
    os << "Pf(pi0) = " << terms_text(report["pfaffian_pi0"]) << "\n";
    os << "Pf(pi)  = " << terms_text(report["pfaffian_deformed"]) << "\n";
    return os.str();
}

std::string check_cgl_text(const nlohmann::json& report) {
    std::ostringstream os;
    const auto& cgl = report["cgl"];
    os << "CGL check: " << (cgl["passes"].get<bool>() ? "PASS" : "FAIL") << "\n";
    for (const auto& f : cgl["failures"])
        os << "  condition " << f["condition"].get<int>() << ": "
           << f["witness"].get<std::string>() << "\n";
    return os.str();
}

} // namespace logsymp
