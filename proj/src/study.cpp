#include "switchdex/study.hpp"

#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <ostream>
#include <sstream>
#include <thread>

#include "switchdex/at_scheme.hpp"
#include "switchdex/joint_mdp.hpp"
#include "switchdex/oracle.hpp"
#include "switchdex/stage1.hpp"
#include "switchdex/stage2.hpp"

namespace switchdex {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SWITCHDEX_THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) return t;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

// Runs tasks 0..count-1 on a small pool; results must be written to
// preallocated slots so output order is independent of scheduling.
void parallel_for(long long count, int threads, const std::function<void(long long)>& body) {
    threads = std::min<long long>(threads, count);
    if (threads <= 1) {
        for (long long i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<long long> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex errorMutex;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const long long i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(errorMutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::vector<double> parse_values(const std::string& s) {
    std::vector<double> out;
    if (s.find(':') != std::string::npos) {
        double start, step, stop;
        if (std::sscanf(s.c_str(), "%lf:%lf:%lf", &start, &step, &stop) != 3 || step <= 0.0)
            throw std::invalid_argument("bad grid range: " + s);
        const int count = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
        for (int i = 0; i < count; ++i) out.push_back(start + i * step);
    } else {
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ';'))
            if (!tok.empty()) out.push_back(std::stod(tok));
    }
    if (out.empty()) throw std::invalid_argument("empty grid axis: " + s);
    return out;
}

}  // namespace

Grid parse_grid(const std::string& spec) {
    Grid grid;
    std::stringstream ss(spec);
    std::string axis;
    while (std::getline(ss, axis, ',')) {
        if (axis.empty()) continue;
        const auto eq = axis.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad grid axis: " + axis);
        grid.push_back({axis.substr(0, eq), parse_values(axis.substr(eq + 1))});
    }
    if (grid.empty()) throw std::invalid_argument("empty grid spec");
    return grid;
}

namespace {

struct ExpDefaults {
    int projects;
    int states;
    const char* grid;
};

ExpDefaults experiment_defaults(int exp) {
    switch (exp) {
        case 2: return {2, 10, "c=0:0.1:1,beta=0.2:0.1:0.9"};
        case 3: return {2, 10, "d=0:0.1:1,beta=0.2:0.1:0.9"};
        case 4: return {2, 10, "c1=0:0.1:1,c2=0:0.1:1"};
        case 5: return {2, 10, "beta=0.2:0.1:0.9"};
        case 6: return {3, 8, "c=0:0.1:1,beta=0.2:0.1:0.9"};
        default: throw std::invalid_argument("experiment id must be in {2,..,6}");
    }
}

double axis_value(const Grid& grid, const std::vector<double>& cell, const std::string& name,
                  double fallback) {
    for (size_t a = 0; a < grid.size(); ++a)
        if (grid[a].name == name) return cell[a];
    return fallback;
}

}  // namespace

std::vector<ProjectSpec> study_instance(int experiment, int projects, int states, std::uint64_t seed,
                                        int k) {
    InstanceEnsembleConfig cfg;
    cfg.projects = projects;
    cfg.states = states;
    cfg.seed = seed;
    cfg.count = k + 1;
    cfg.beta = 0.9;  // per-cell value applied by the caller
    cfg.startup = experiment == 5 ? CostModel::uniform01() : CostModel::constant(0.0);
    cfg.shutdown = CostModel::constant(0.0);
    return generate_instance(cfg, k);
}

StudyReport run_study(const StudyOptions& opt) {
    const ExpDefaults def = experiment_defaults(opt.experiment);
    StudyReport report;
    report.experiment = opt.experiment;
    report.grid = opt.grid.empty() ? parse_grid(def.grid) : opt.grid;
    const int M = opt.projects > 0 ? opt.projects : def.projects;
    const int n = opt.states > 0 ? opt.states : def.states;
    if (opt.instances < 1) throw std::invalid_argument("instance count must be >= 1");

    // Cartesian product of the grid axes, lexicographic.
    std::vector<std::vector<double>> cells;
    std::vector<size_t> idx(report.grid.size(), 0);
    for (;;) {
        std::vector<double> cell;
        for (size_t a = 0; a < report.grid.size(); ++a) cell.push_back(report.grid[a].values[idx[a]]);
        cells.push_back(std::move(cell));
        size_t a = report.grid.size();
        while (a > 0) {
            --a;
            if (++idx[a] < report.grid[a].values.size()) break;
            idx[a] = 0;
            if (a == 0) goto done;
        }
        if (report.grid.empty()) break;
    }
done:

    const long long tasks = static_cast<long long>(cells.size()) * opt.instances;
    report.rows.resize(tasks);

    parallel_for(tasks, resolve_threads(opt.threads), [&](long long task) {
        const size_t cellIdx = static_cast<size_t>(task) / opt.instances;
        const int k = static_cast<int>(task % opt.instances);
        const std::vector<double>& cell = cells[cellIdx];

        std::vector<ProjectSpec> specs = study_instance(opt.experiment, M, n, opt.seed, k);
        const double beta = axis_value(report.grid, cell, "beta", 0.9);
        for (int m = 0; m < M; ++m) {
            specs[m].beta = beta;
            switch (opt.experiment) {
                case 2:
                case 6:
                    specs[m].c.setConstant(axis_value(report.grid, cell, "c", 0.0));
                    specs[m].d.setZero();
                    break;
                case 3:
                    specs[m].c.setZero();
                    specs[m].d.setConstant(axis_value(report.grid, cell, "d", 0.0));
                    break;
                case 4:
                    specs[m].c.setConstant(
                        axis_value(report.grid, cell, m == 0 ? "c1" : "c2", 0.0));
                    specs[m].d.setZero();
                    break;
                case 5:
                    specs[m].d.setZero();  // startup costs already drawn per state
                    break;
            }
        }

        std::vector<IndexTable> mpi;
        std::vector<Eigen::VectorXd> bench;
        for (int m = 0; m < M; ++m) {
            mpi.push_back(compute_index_table(specs[m]));
            ProjectSpec bare = specs[m];
            bare.c.setZero();
            bare.d.setZero();
            bench.push_back(gittins_index(bare));
        }

        const OptimalSolution opt_ = solve_optimal(specs, beta);
        const PolicyValue vMpi = evaluate_priority_policy(
            specs, beta,
            [&](int m, int aPrev, int i) { return aPrev ? mpi[m].nuCont(i) : mpi[m].nuSwitch(i); });
        const PolicyValue vBench = evaluate_priority_policy(
            specs, beta, [&](int m, int /*aPrev*/, int i) { return bench[m](i); });
        const GapMetrics gap = gap_metrics(opt_.value.scalar, vMpi.scalar, vBench.scalar);

        StudyRow& row = report.rows[task];
        row.cell = cell;
        row.instance = k;
        row.vOpt = opt_.value.scalar;
        row.vMpi = vMpi.scalar;
        row.vBench = vBench.scalar;
        row.delta = gap.delta;
        row.rho = gap.rho;
        row.rhoDefined = gap.rhoDefined;
    });

    // Per-cell means from the retained rows, in cell order.
    for (size_t cidx = 0; cidx < cells.size(); ++cidx) {
        StudyCellMean mean;
        mean.cell = cells[cidx];
        double sumDelta = 0.0, sumRho = 0.0;
        for (int k = 0; k < opt.instances; ++k) {
            const StudyRow& row = report.rows[cidx * opt.instances + k];
            sumDelta += row.delta;
            ++mean.count;
            if (row.rhoDefined) {
                sumRho += row.rho;
                ++mean.rhoCount;
            }
        }
        mean.meanDelta = sumDelta / mean.count;
        mean.meanRho = mean.rhoCount > 0 ? sumRho / mean.rhoCount : 0.0;
        report.means.push_back(std::move(mean));
    }
    return report;
}

namespace {

void write_timestamp(std::ostream& os, bool timestamp) {
    if (!timestamp) return;
    const std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    os << "# generated " << buf << "\n";
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void write_study_csv(std::ostream& os, const StudyReport& report, bool timestamp) {
    write_timestamp(os, timestamp);
    os << "row,exp";
    for (const auto& axis : report.grid) os << "," << axis.name;
    os << ",instance,v_opt,v_mpi,v_bench,delta_pct,rho_pct,rho_defined\n";
    for (const auto& row : report.rows) {
        os << "instance," << report.experiment;
        for (double v : row.cell) os << "," << fmt(v);
        os << "," << row.instance << "," << fmt(row.vOpt) << "," << fmt(row.vMpi) << ","
           << fmt(row.vBench) << "," << fmt(row.delta) << ","
           << (row.rhoDefined ? fmt(row.rho) : std::string()) << "," << (row.rhoDefined ? 1 : 0)
           << "\n";
    }
    for (const auto& mean : report.means) {
        os << "mean," << report.experiment;
        for (double v : mean.cell) os << "," << fmt(v);
        os << ",,,,," << fmt(mean.meanDelta) << "," << fmt(mean.meanRho) << "," << mean.rhoCount
           << "\n";
    }
}

std::vector<BenchRow> run_bench(const std::vector<int>& sizes, std::uint64_t seed, int repeats) {
    if (repeats < 1) throw std::invalid_argument("repeats must be >= 1");
    std::vector<BenchRow> rows;
    using clock = std::chrono::steady_clock;
    for (int n : sizes) {
        InstanceEnsembleConfig cfg;
        cfg.projects = 1;
        cfg.states = n;
        cfg.seed = seed;
        cfg.count = 1;
        cfg.beta = 0.9;
        cfg.startup = CostModel::uniform01();
        const ProjectSpec spec = generate_instance(cfg, 0)[0];
        const NormalizedProjectSpec norm = normalize(spec);

        double tStage1 = 0.0, tStage2 = 0.0, tAt = 0.0;
        long long opsStage1 = 0, opsStage2 = 0, opsAt = 0;
        Stage1Output s1;
        for (int r = 0; r < repeats; ++r) {
            auto t0 = clock::now();
            s1 = compute_stage1(norm, Stage1Mode::Fast);
            auto t1 = clock::now();
            tStage1 += std::chrono::duration<double>(t1 - t0).count();
            opsStage1 = s1.opCount;
        }
        {
            // Stage 2 is fast; loop until the sample is long enough to time.
            int reps = repeats;
            double elapsed = 0.0;
            long long done = 0;
            for (;;) {
                auto t0 = clock::now();
                for (int r = 0; r < reps; ++r) {
                    const IndexTable table = compute_switching_index(s1, norm.c, norm.beta);
                    opsStage2 = table.opCountStage2;
                }
                elapsed += std::chrono::duration<double>(clock::now() - t0).count();
                done += reps;
                if (elapsed > 0.05 || done > 100000) break;
                reps *= 4;
            }
            tStage2 = elapsed / done * repeats;
        }
        for (int r = 0; r < repeats; ++r) {
            auto t0 = clock::now();
            const IndexTable table = at_index_table(norm);
            auto t1 = clock::now();
            tAt += std::chrono::duration<double>(t1 - t0).count();
            opsAt = table.opCountStage1;
        }
        rows.push_back({n, "stage1", tStage1 / repeats, opsStage1});
        rows.push_back({n, "stage2", tStage2 / repeats, opsStage2});
        rows.push_back({n, "at", tAt / repeats, opsAt});
    }
    return rows;
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows, bool timestamp) {
    write_timestamp(os, timestamp);
    os << "n,method,seconds,op_count\n";
    for (const auto& row : rows)
        os << row.n << "," << row.method << "," << fmt(row.seconds) << "," << row.opCount << "\n";
}

EquivalenceSummary run_equivalence_suite(int instances, std::uint64_t seed, int maxN, int bruteMaxN,
                                         int threads) {
    EquivalenceSummary sum;
    sum.instances = instances;
    std::mutex mtx;
    std::atomic<int> bruteChecked{0};

    parallel_for(instances, resolve_threads(threads), [&](long long k) {
        const int n = 2 + static_cast<int>(k % std::max(1, maxN - 1));
        InstanceEnsembleConfig cfg;
        cfg.projects = 1;
        cfg.states = n;
        cfg.seed = seed;
        cfg.count = static_cast<int>(k) + 1;
        cfg.beta = 0.3 + 0.6 * ((k * 7) % 11) / 10.0;  // beta in [0.3, 0.9]
        switch (k % 4) {
            case 0: cfg.startup = CostModel::uniform01(); break;
            case 1:
                cfg.startup = CostModel::constant(0.3);
                cfg.shutdown = CostModel::constant(0.2);
                break;
            case 2: cfg.shutdown = CostModel::uniform01(); break;
            case 3:
                cfg.startup = CostModel::uniform01();
                cfg.shutdown = CostModel::uniform01();
                break;
        }
        const ProjectSpec spec = generate_instance(cfg, static_cast<int>(k))[0];
        const NormalizedProjectSpec norm = normalize(spec);

        const IndexTable two = compute_index_table(norm, Stage1Mode::Fast);
        const IndexTable at = at_index_table(norm);
        const IndexTable ref = compute_index_table(norm, Stage1Mode::Reference);

        double errAt = 0.0, errRef = 0.0;
        errAt = std::max((two.nuCont - at.nuCont).lpNorm<Eigen::Infinity>(),
                         (two.nuSwitch - at.nuSwitch).lpNorm<Eigen::Infinity>());
        errRef = std::max((two.nuCont - ref.nuCont).lpNorm<Eigen::Infinity>(),
                          (two.nuSwitch - ref.nuSwitch).lpNorm<Eigen::Infinity>());

        bool monotone = true;
        for (size_t i = 1; i < two.merged.size(); ++i)
            if (two.merged[i] > two.merged[i - 1] + 1e-12) monotone = false;
        const bool hysteresis = ((two.nuCont - two.nuSwitch).array() >= -1e-12).all();

        double errBrute = 0.0;
        if (n <= bruteMaxN) {
            const Eigen::VectorXd b1 = brute_force_index_all(norm, 1);
            const Eigen::VectorXd b0 = brute_force_index_all(norm, 0);
            errBrute = std::max((two.nuCont - b1).lpNorm<Eigen::Infinity>(),
                                (two.nuSwitch - b0).lpNorm<Eigen::Infinity>());
            bruteChecked.fetch_add(1);
        }

        std::lock_guard<std::mutex> lock(mtx);
        sum.maxErrTwoStageVsAt = std::max(sum.maxErrTwoStageVsAt, errAt);
        sum.maxErrVsBrute = std::max(sum.maxErrVsBrute, errBrute);
        sum.monotoneOk = sum.monotoneOk && monotone;
        sum.hysteresisOk = sum.hysteresisOk && hysteresis;
        sum.refFastOk = sum.refFastOk && errRef <= 1e-9;
    });
    sum.bruteChecked = bruteChecked.load();
    return sum;
}

LemmaSuiteSummary run_lemma_suite(int triples, std::uint64_t seed, int maxN) {
    LemmaSuiteSummary sum;
    sum.triples = triples;
    for (int t = 0; t < triples; ++t) {
        const int n = 2 + t % (maxN - 1);
        InstanceEnsembleConfig cfg;
        cfg.projects = 1;
        cfg.states = n;
        cfg.seed = seed + 1;
        cfg.count = t + 1;
        cfg.beta = 0.3 + 0.6 * ((t * 5) % 11) / 10.0;
        cfg.startup = CostModel::uniform01();
        const NormalizedProjectSpec spec = normalize(generate_instance(cfg, t)[0]);

        SplitMix64 rng(derive_stream(seed, t, 99, 7));
        std::vector<int> S0, S1;
        for (int i = 0; i < n; ++i) {
            const double u = rng.uniform01();
            if (u < 1.0 / 3) {
                S0.push_back(i);
                S1.push_back(i);
            } else if (u < 2.0 / 3) {
                S1.push_back(i);
            }
        }
        const LemmaReport report = verify_measure_lemmas(spec, S0, S1);
        for (const auto& clause : report.clauses) {
            if (!clause.pass) {
                ++sum.clauseFailures;
                sum.messages.push_back("triple " + std::to_string(t) + ": " + clause.clause +
                                       " err=" + std::to_string(clause.maxError));
            }
        }
    }
    return sum;
}

}  // namespace switchdex
