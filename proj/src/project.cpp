#include "switchdex/project.hpp"

#include <cmath>
#include <sstream>

namespace switchdex {

namespace {
constexpr double kRowSumTol = 1e-12;
}

std::vector<Violation> validate(const ProjectSpec& spec) {
    std::vector<Violation> out;
    const int n = spec.n();
    if (n < 1) {
        out.push_back({"n", -1, static_cast<double>(n), "state count must be >= 1"});
        return out;
    }
    if (spec.P.rows() != n || spec.P.cols() != n)
        out.push_back({"P", -1, 0.0, "transition matrix must be n x n"});
    if (spec.c.size() != n)
        out.push_back({"c", -1, 0.0, "startup cost vector must have length n"});
    if (spec.d.size() != n)
        out.push_back({"d", -1, 0.0, "shutdown cost vector must have length n"});
    if (!(spec.beta > 0.0 && spec.beta < 1.0))
        out.push_back({"beta", -1, spec.beta, "discount factor must lie in (0,1)"});
    if (!out.empty()) return out;

    for (int i = 0; i < n; ++i) {
        double rowSum = 0.0;
        for (int j = 0; j < n; ++j) {
            const double p = spec.P(i, j);
            if (p < 0.0)
                out.push_back({"P", i, p, "negative transition probability in row " + std::to_string(i + 1)});
            rowSum += p;
        }
        if (std::abs(rowSum - 1.0) > kRowSumTol)
            out.push_back({"P", i, rowSum, "row " + std::to_string(i + 1) + " of P does not sum to 1"});
    }
    for (int i = 0; i < n; ++i) {
        const double s = spec.c(i) + spec.d(i);
        if (s < 0.0)
            out.push_back({"c+d", i, s, "c_i + d_i must be nonnegative at state " + std::to_string(i + 1)});
    }
    return out;
}

void require_valid(const ProjectSpec& spec) {
    const auto v = validate(spec);
    if (v.empty()) return;
    std::ostringstream os;
    os << "invalid project spec: " << v.front().field;
    if (v.front().index >= 0) os << "[" << v.front().index + 1 << "]";
    os << ": " << v.front().message;
    if (v.size() > 1) os << " (+" << v.size() - 1 << " more)";
    throw std::invalid_argument(os.str());
}

NormalizedProjectSpec normalize(const ProjectSpec& spec) {
    require_valid(spec);
    NormalizedProjectSpec out;
    out.P = spec.P;
    out.beta = spec.beta;
    out.c = spec.c + spec.d;
    out.R = spec.R + spec.d - spec.beta * (spec.P * spec.d);
    return out;
}

}  // namespace switchdex
