// Command-line harness for index computation, runtime benchmarks and the
// suboptimality-gap studies.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "switchdex/at_scheme.hpp"
#include "switchdex/generator.hpp"
#include "switchdex/instance_io.hpp"
#include "switchdex/oracle.hpp"
#include "switchdex/stage2.hpp"
#include "switchdex/study.hpp"

namespace {

using namespace switchdex;

constexpr int kExitVerifyFailure = 1;
constexpr int kExitBadFlags = 2;
constexpr int kExitNumerical = 3;

CostModel parse_cost_model(const std::string& s) {
    if (s == "uniform" || s == "uniform01") return CostModel::uniform01();
    if (s.rfind("const:", 0) == 0) return CostModel::constant(std::stod(s.substr(6)));
    if (s.rfind("per:", 0) == 0) {
        std::vector<double> values;
        std::stringstream ss(s.substr(4));
        std::string tok;
        while (std::getline(ss, tok, ';'))
            if (!tok.empty()) values.push_back(std::stod(tok));
        return CostModel::per_project(std::move(values));
    }
    // bare number = constant
    return CostModel::constant(std::stod(s));
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

int cmd_gen(const InstanceEnsembleConfig& cfg, const std::string& outPrefix) {
    for (int k = 0; k < cfg.count; ++k) {
        Instance inst;
        inst.beta = cfg.beta;
        inst.projects = generate_instance(cfg, k);
        char suffix[32];
        std::snprintf(suffix, sizeof(suffix), "_%04d.json", k);
        auto out = open_output(outPrefix + suffix);
        write_instance_json(out, inst);
    }
    return 0;
}

int cmd_index(const std::string& input, const std::string& method, bool withOps,
              const std::string& outPath) {
    const Instance inst = read_instance_file(input);
    auto out = open_output(outPath);
    const bool multi = inst.projects.size() > 1;
    for (size_t m = 0; m < inst.projects.size(); ++m) {
        IndexTable table;
        const NormalizedProjectSpec norm = normalize(inst.projects[m]);
        if (method == "two-stage") {
            table = compute_index_table(norm);
        } else if (method == "at") {
            table = at_index_table(norm);
        } else if (method == "oracle") {
            table.nuCont = brute_force_index_all(norm, 1);
            table.nuSwitch = brute_force_index_all(norm, 0);
        } else {
            throw CLI::ValidationError("--method must be two-stage, at or oracle");
        }
        if (multi) out << "# project " << m + 1 << "\n";
        write_index_csv(out, table);
        if (withOps)
            out << "# op_count_stage1=" << table.opCountStage1
                << " op_count_stage2=" << table.opCountStage2 << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continuation/switching index computation for bandits with switching costs"};
    app.require_subcommand(1);
    bool noTimestamp = false;
    app.add_flag("--no-timestamp", noTimestamp, "suppress the timestamp header in CSV outputs");

    // gen
    auto* gen = app.add_subcommand("gen", "write random instance JSON files");
    InstanceEnsembleConfig cfg;
    std::string startup = "const:0", shutdown = "const:0", genOut = "instance";
    gen->add_option("--projects,-M", cfg.projects, "projects per instance")->default_val(2);
    gen->add_option("--states,-n", cfg.states, "states per project")->default_val(10);
    gen->add_option("--seed", cfg.seed, "ensemble seed")->default_val(20070101);
    gen->add_option("--count", cfg.count, "number of instances")->default_val(1);
    gen->add_option("--beta", cfg.beta, "discount factor")->default_val(0.9);
    gen->add_option("--startup", startup, "startup cost model: const:V | uniform | per:V1;V2;..");
    gen->add_option("--shutdown", shutdown, "shutdown cost model, same shapes");
    gen->add_option("-o,--out", genOut, "output file prefix");

    // index
    auto* index = app.add_subcommand("index", "compute an index table for an instance file");
    std::string indexInput, indexMethod = "two-stage", indexOut = "index.csv";
    bool withOps = false;
    index->add_option("--input", indexInput, "instance JSON file")->required();
    index->add_option("--method", indexMethod, "two-stage | at | oracle");
    index->add_flag("--ops", withOps, "append operation counters");
    index->add_option("-o,--out", indexOut, "output CSV");

    // bench
    auto* bench = app.add_subcommand("bench", "runtime rows for the index algorithms");
    std::string sizesArg = "100,200,400,800,1600", benchOut = "bench.csv";
    std::uint64_t benchSeed = 20070101;
    int repeats = 1;
    bench->add_option("--sizes", sizesArg, "comma-separated state counts");
    bench->add_option("--seed", benchSeed, "instance seed");
    bench->add_option("--repeats", repeats, "timing repeats per size");
    bench->add_option("-o,--out", benchOut, "output CSV");
    bench->add_flag("--no-timestamp", noTimestamp, "suppress the timestamp header");

    // study
    auto* study = app.add_subcommand("study", "suboptimality-gap grid study");
    StudyOptions sopt;
    std::string gridArg, studyOut = "study.csv";
    study->add_option("--exp", sopt.experiment, "experiment id in {2,..,6}")->required();
    study->add_option("--instances", sopt.instances, "instances per cell")->default_val(100);
    study->add_option("--grid", gridArg, "grid spec, e.g. c=0:0.1:1,beta=0.2:0.1:0.9");
    study->add_option("--seed", sopt.seed, "ensemble seed")->default_val(20070101);
    study->add_option("--projects", sopt.projects, "override project count");
    study->add_option("--states", sopt.states, "override state count");
    study->add_option("--threads", sopt.threads, "worker threads (0 = auto)");
    study->add_option("-o,--out", studyOut, "output CSV");
    study->add_flag("--no-timestamp", noTimestamp, "suppress the timestamp header");

    // verify
    auto* verify = app.add_subcommand("verify", "run the oracle equivalence and lemma suites");
    std::string level = "fast";
    verify->add_option("--level", level, "fast | full");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadFlags;
    }

    try {
        if (gen->parsed()) {
            cfg.startup = parse_cost_model(startup);
            cfg.shutdown = parse_cost_model(shutdown);
            return cmd_gen(cfg, genOut);
        }
        if (index->parsed()) return cmd_index(indexInput, indexMethod, withOps, indexOut);
        if (bench->parsed()) {
            std::vector<int> sizes;
            std::stringstream ss(sizesArg);
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!tok.empty()) sizes.push_back(std::stoi(tok));
            const auto rows = run_bench(sizes, benchSeed, repeats);
            auto out = open_output(benchOut);
            write_bench_csv(out, rows, !noTimestamp);
            return 0;
        }
        if (study->parsed()) {
            if (!gridArg.empty()) sopt.grid = parse_grid(gridArg);
            const StudyReport report = run_study(sopt);
            auto out = open_output(studyOut);
            write_study_csv(out, report, !noTimestamp);
            return 0;
        }
        if (verify->parsed()) {
            const bool full = level == "full";
            const EquivalenceSummary eq =
                run_equivalence_suite(full ? 500 : 60, 20070101, full ? 25 : 12, 10);
            const LemmaSuiteSummary lm = run_lemma_suite(full ? 100 : 25, 20070102);
            std::cout << "equivalence: instances=" << eq.instances
                      << " brute_checked=" << eq.bruteChecked
                      << " max_err_vs_at=" << eq.maxErrTwoStageVsAt
                      << " max_err_vs_brute=" << eq.maxErrVsBrute
                      << " monotone=" << eq.monotoneOk << " hysteresis=" << eq.hysteresisOk
                      << " ref_fast=" << eq.refFastOk << "\n";
            std::cout << "lemmas: triples=" << lm.triples << " clause_failures=" << lm.clauseFailures
                      << "\n";
            for (const auto& msg : lm.messages) std::cout << "  " << msg << "\n";
            const bool ok = eq.pass() && lm.clauseFailures == 0;
            std::cout << (ok ? "verification PASSED" : "verification FAILED") << "\n";
            return ok ? 0 : kExitVerifyFailure;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadFlags;
    } catch (const NumericalError& e) {
        std::cerr << "numerical-quality failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadFlags;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
