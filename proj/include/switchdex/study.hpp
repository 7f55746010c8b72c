#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "switchdex/generator.hpp"
#include "switchdex/project.hpp"

namespace switchdex {

struct Axis {
    std::string name;
    std::vector<double> values;
};
using Grid = std::vector<Axis>;

/// Parses "c=0:0.1:1,beta=0.2:0.1:0.9" (start:step:stop, inclusive) or
/// explicit lists "c=0;0.3;0.7".
Grid parse_grid(const std::string& spec);

struct StudyRow {
    std::vector<double> cell;
    int instance = 0;
    double vOpt = 0.0, vMpi = 0.0, vBench = 0.0;
    double delta = 0.0, rho = 0.0;
    bool rhoDefined = true;
};

struct StudyCellMean {
    std::vector<double> cell;
    double meanDelta = 0.0;
    double meanRho = 0.0;  // over instances where rho is defined
    int rhoCount = 0;
    int count = 0;
};

struct StudyReport {
    int experiment = 0;
    Grid grid;
    std::vector<StudyRow> rows;        // ordered by (cell, instance)
    std::vector<StudyCellMean> means;  // ordered by cell
};

struct StudyOptions {
    int experiment = 2;
    int instances = 100;
    std::uint64_t seed = 20070101;
    int projects = 0;  // 0 -> experiment default
    int states = 0;
    Grid grid;      // empty -> experiment default
    int threads = 0;  // 0 -> SWITCHDEX_THREADS or hardware
};

StudyReport run_study(const StudyOptions& opt);

void write_study_csv(std::ostream& os, const StudyReport& report, bool timestamp);

struct BenchRow {
    int n = 0;
    std::string method;
    double seconds = 0.0;
    long long opCount = 0;
};

/// Wall-clock rows for stage 1, stage 2 and the joint scheme per size.
std::vector<BenchRow> run_bench(const std::vector<int>& sizes, std::uint64_t seed, int repeats);
void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows, bool timestamp);

/// Cross-implementation verification suites (shared by the CLI and the
/// acceptance harness).
struct EquivalenceSummary {
    int instances = 0;
    int bruteChecked = 0;
    double maxErrTwoStageVsAt = 0.0;
    double maxErrVsBrute = 0.0;
    bool monotoneOk = true;    // emitted sequences nonincreasing
    bool hysteresisOk = true;  // nuSwitch <= nuCont
    bool refFastOk = true;     // reference vs fast stage 1
    bool pass(double tol = 1e-9) const {
        return maxErrTwoStageVsAt <= tol && maxErrVsBrute <= tol && monotoneOk && hysteresisOk &&
               refFastOk;
    }
};

/// Random mixed-cost instances, n in [2, maxN]; two-stage vs joint-scheme
/// agreement everywhere, brute-force agreement for n <= bruteMaxN.
EquivalenceSummary run_equivalence_suite(int instances, std::uint64_t seed, int maxN, int bruteMaxN,
                                         int threads = 0);

struct LemmaSuiteSummary {
    int triples = 0;
    int clauseFailures = 0;
    std::vector<std::string> messages;
};

LemmaSuiteSummary run_lemma_suite(int triples, std::uint64_t seed, int maxN = 6);

/// Draws one instance's projects and applies per-cell overrides used by the
/// studies (constant or state-dependent costs, per-cell beta).
std::vector<ProjectSpec> study_instance(int experiment, int projects, int states, std::uint64_t seed,
                                        int k);

int resolve_threads(int requested);

}  // namespace switchdex
