#include "switchdex/stage2.hpp"

#include <cstdio>
#include <limits>
#include <ostream>

namespace switchdex {

IndexTable compute_switching_index(const Stage1Output& s1, const Eigen::VectorXd& c, double beta,
                                   double tolerance) {
    const int n = s1.n;
    if (c.size() != n) throw std::invalid_argument("startup-cost vector does not match stage-1 output");
    if ((c.array() < 0.0).any()) throw std::invalid_argument("stage 2 requires normalized (nonnegative) startup costs");

    IndexTable out;
    out.nuCont.resize(n);
    out.nuSwitch.resize(n);
    out.orderCont = s1.order;
    out.opCountStage1 = s1.opCount;
    out.merged.reserve(2 * n);
    for (int k = 0; k < n; ++k) out.nuCont(s1.order[k]) = s1.nuAlongOrder(k);

    long long& ops = out.opCountStage2;
    Eigen::VectorXd cHat(n);
    const double oneMinusBeta = 1.0 - beta;
    ops += 1;
    for (int j = 0; j < n; ++j) cHat(j) = oneMinusBeta * c(j);
    ops += n;

    std::vector<char> inS0(n, 0);
    std::vector<double> cand(n, 0.0);
    int k0 = 0;

    for (int k1 = 1; k1 <= n; ++k1) {
        // Candidate switching values for j in S1^{k1} \ S0^{k0}, taken
        // against the active set S1^{k1}.
        for (int t = 0; t < k1; ++t) {
            const int j = s1.order[t];
            if (inS0[j]) continue;
            cand[j] = s1.nuAt(k1, t) - cHat(j) / s1.wAt(k1, t);
            ops += 2;
        }
        out.merged.push_back(s1.nuAlongOrder(k1 - 1));
        // States whose switching value beats the next continuation value are
        // emitted now, against the current set; the merged stream stays
        // nonincreasing. At k1 = n everything left is flushed.
        const double next =
            k1 < n ? s1.nuAlongOrder(k1) : -std::numeric_limits<double>::infinity();
        while (k0 < k1) {
            int j0 = -1;
            double best = -std::numeric_limits<double>::infinity();
            for (int t = 0; t < k1; ++t) {
                const int j = s1.order[t];
                if (!inS0[j]) {
                    if (cand[j] > best) {
                        best = cand[j];
                        j0 = j;
                    }
                }
            }
            if (k1 == n || next < best - tolerance) {
                out.orderSwitch.push_back(j0);
                out.nuSwitch(j0) = best;
                out.merged.push_back(best);
                inS0[j0] = 1;
                ++k0;
            } else {
                break;
            }
        }
    }
    return out;
}

IndexTable compute_index_table(const NormalizedProjectSpec& spec, Stage1Mode mode) {
    const Stage1Output s1 = compute_stage1(spec, mode);
    return compute_switching_index(s1, spec.c, spec.beta);
}

IndexTable compute_index_table(const ProjectSpec& spec, Stage1Mode mode) {
    return compute_index_table(normalize(spec), mode);
}

void write_index_csv(std::ostream& os, const IndexTable& table) {
    os << "state,nu_cont,nu_switch\n";
    char buf[128];
    for (int i = 0; i < table.nuCont.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", i + 1, table.nuCont(i), table.nuSwitch(i));
        os << buf;
    }
}

}  // namespace switchdex
