#include "switchdex/at_scheme.hpp"

#include "switchdex/stage1.hpp"

namespace switchdex {

AugmentedProjectSpec build_augmented(const NormalizedProjectSpec& spec) {
    const int n = spec.n();
    AugmentedProjectSpec aug;
    aug.beta = spec.beta;
    aug.P.setZero(2 * n, 2 * n);
    aug.R.resize(2 * n);
    for (int a = 0; a < 2; ++a) {
        for (int i = 0; i < n; ++i) {
            const int id = a * n + i;
            aug.P.block(id, n, 1, n) = spec.P.row(i);
            aug.R(id) = spec.R(i) - (1 - a) * spec.c(i);
        }
    }
    return aug;
}

IndexTable at_index_table(const NormalizedProjectSpec& spec, Stage1Mode mode) {
    const int n = spec.n();
    const AugmentedProjectSpec aug = build_augmented(spec);
    const Stage1Output s1 = compute_stage1(aug.as_project(), mode);
    const Eigen::VectorXd nu = s1.nu_by_state();

    IndexTable out;
    out.nuCont.resize(n);
    out.nuSwitch.resize(n);
    out.opCountStage1 = s1.opCount;
    for (int i = 0; i < n; ++i) {
        out.nuSwitch(i) = nu(i);
        out.nuCont(i) = nu(n + i);
    }
    out.merged.assign(s1.nuAlongOrder.data(), s1.nuAlongOrder.data() + 2 * n);
    for (int k = 0; k < 2 * n; ++k) {
        const int id = s1.order[k];
        if (id < n)
            out.orderSwitch.push_back(id);
        else
            out.orderCont.push_back(id - n);
    }
    return out;
}

IndexTable at_index_table(const ProjectSpec& spec, Stage1Mode mode) {
    return at_index_table(normalize(spec), mode);
}

}  // namespace switchdex
