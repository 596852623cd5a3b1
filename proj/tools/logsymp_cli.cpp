#include "logsymp/errors.hpp"
#include "logsymp/jobio.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

namespace {

using logsymp::JobFile;

struct CommonArgs {
    std::vector<std::string> inputs;
    std::string output;
    std::string format = "text";
    std::string subset;
    std::vector<std::string> c_values;
    std::size_t level_cap = 64;
    long oracle_box = 8;
    unsigned schedule_seed = 0;
    unsigned jobs = 1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--input", args.inputs, "job file (repeatable)")->required();
    cmd->add_option("--output", args.output, "write the report here instead of stdout");
    cmd->add_option("--format", args.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--subset", args.subset, "comma-separated border pairs j:k");
    cmd->add_option("--c", args.c_values, "coefficient override key=p/q (repeatable)");
    cmd->add_option("--level-cap", args.level_cap, "enumeration level cap");
    cmd->add_option("--oracle-box", args.oracle_box, "brute-force search box");
    cmd->add_option("--schedule-seed", args.schedule_seed,
                    "permutes independent solve order; results are identical");
    cmd->add_option("--jobs", args.jobs, "worker threads across input files");
}

void apply_overrides(JobFile& job, const CommonArgs& args) {
    if (!args.subset.empty()) {
        std::vector<std::pair<std::size_t, std::size_t>> subset;
        std::stringstream ss(args.subset);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos)
                throw logsymp::ValidationError("--subset entries must look like j:k");
            const long j = std::stol(item.substr(0, colon));
            const long k = std::stol(item.substr(colon + 1));
            if (j < 1 || k <= j) throw logsymp::ValidationError("--subset needs 1 <= j < k");
            subset.emplace_back(j - 1, k - 1);
        }
        job.options.subset = std::move(subset);
    }
    for (const auto& kv : args.c_values) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw logsymp::ValidationError("--c expects key=p/q, got '" + kv + "'");
        const auto value = logsymp::parse_rational(kv.substr(eq + 1));
        if (!value) throw logsymp::ValidationError("--c has a malformed rational in '" + kv + "'");
        job.options.c_overrides.emplace_back(kv.substr(0, eq), *value);
    }
    job.options.level_cap = args.level_cap;
    job.options.oracle_box = args.oracle_box;
    job.options.schedule_seed = args.schedule_seed;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const logsymp::CapExceeded*>(&e)) return 3;
    if (dynamic_cast<const logsymp::ValidationError*>(&e)) return 2;
    if (dynamic_cast<const logsymp::Error*>(&e)) return 4;
    return 4;
}

// One invocation per input file; outputs are buffered and never interleave.
int run_all(const CommonArgs& args,
            const std::function<std::string(const JobFile&)>& runner) {
    if (args.inputs.size() > 1 && !args.output.empty()) {
        std::cerr << "error: --output requires a single --input\n";
        return 2;
    }
    std::vector<std::string> outputs(args.inputs.size());
    std::vector<int> codes(args.inputs.size(), 0);
    std::mutex index_lock;
    std::size_t next = 0;

    auto worker = [&]() {
        while (true) {
            std::size_t mine;
            {
                std::lock_guard<std::mutex> guard(index_lock);
                if (next == args.inputs.size()) return;
                mine = next++;
            }
            try {
                JobFile job = logsymp::load_job(args.inputs[mine]);
                apply_overrides(job, args);
                outputs[mine] = runner(job);
            } catch (const std::exception& e) {
                outputs[mine] = std::string("error: ") + e.what() + "\n";
                codes[mine] = exit_code_for(e);
            }
        }
    };

    const unsigned thread_count =
        std::max(1u, std::min<unsigned>(args.jobs, args.inputs.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t + 1 < thread_count; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    int code = 0;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        if (codes[i] != 0) {
            std::cerr << args.inputs[i] << ": " << outputs[i];
            code = std::max(code, codes[i]);
            continue;
        }
        if (!args.output.empty()) {
            std::ofstream out(args.output);
            if (!out) {
                std::cerr << "error: cannot write '" << args.output << "'\n";
                return 2;
            }
            out << outputs[i];
        } else {
            std::cout << outputs[i];
        }
    }
    return code;
}

std::function<std::string(const JobFile&)>
json_or_text(const CommonArgs& args, nlohmann::json (*run)(const JobFile&),
             std::string (*text)(const nlohmann::json&)) {
    const bool as_json = args.format == "json";
    return [run, text, as_json](const JobFile& job) {
        const nlohmann::json report = run(job);
        return as_json ? report.dump(2) + "\n" : text(report);
    };
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact torus-invariant Poisson deformations of log-canonical structures"};
    app.require_subcommand(1);

    CommonArgs analyze_args, deform_args, pfaffian_args, cgl_args, dot_args;
    CLI::App* analyze = app.add_subcommand("analyze", "structure, smoothable weights, diagram");
    add_common(analyze, analyze_args);
    CLI::App* deform = app.add_subcommand("deform", "solve the Poisson deformation");
    add_common(deform, deform_args);
    CLI::App* pfaffian = app.add_subcommand("pfaffian", "T-Pfaffians of the base and deformation");
    add_common(pfaffian, pfaffian_args);
    CLI::App* check_cgl = app.add_subcommand("check-cgl", "symmetric CGL extension check");
    add_common(check_cgl, cgl_args);
    CLI::App* export_dot = app.add_subcommand("export-dot", "smoothing diagram as DOT");
    add_common(export_dot, dot_args);

    CLI11_PARSE(app, argc, argv);

    if (analyze->parsed())
        return run_all(analyze_args,
                       json_or_text(analyze_args, logsymp::run_analyze, logsymp::analyze_text));
    if (deform->parsed())
        return run_all(deform_args,
                       json_or_text(deform_args, logsymp::run_deform, logsymp::deform_text));
    if (pfaffian->parsed())
        return run_all(pfaffian_args,
                       json_or_text(pfaffian_args, logsymp::run_pfaffian, logsymp::pfaffian_text));
    if (check_cgl->parsed())
        return run_all(cgl_args,
                       json_or_text(cgl_args, logsymp::run_check_cgl, logsymp::check_cgl_text));
    if (export_dot->parsed())
        return run_all(dot_args, [](const JobFile& job) { return logsymp::run_export_dot(job); });
    return 1;
}
