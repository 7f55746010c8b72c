#include "switchdex/instance_io.hpp"

#include <fstream>
#include <json.hpp>

namespace switchdex {

using nlohmann::json;

namespace {

json vector_to_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

Eigen::VectorXd vector_from_json(const json& j) {
    Eigen::VectorXd v(j.size());
    for (size_t i = 0; i < j.size(); ++i) v(i) = j[i].get<double>();
    return v;
}

}  // namespace

void write_instance_json(std::ostream& os, const Instance& inst) {
    json projects = json::array();
    for (const auto& p : inst.projects) {
        json mat = json::array();
        for (int i = 0; i < p.n(); ++i) {
            json row = json::array();
            for (int j = 0; j < p.n(); ++j) row.push_back(p.P(i, j));
            mat.push_back(row);
        }
        projects.push_back({{"P", mat}, {"R", vector_to_json(p.R)}, {"c", vector_to_json(p.c)},
                            {"d", vector_to_json(p.d)}});
    }
    os << json{{"beta", inst.beta}, {"projects", projects}}.dump(2) << "\n";
}

Instance read_instance_json(std::istream& is) {
    json j;
    is >> j;
    Instance inst;
    inst.beta = j.at("beta").get<double>();
    for (const auto& jp : j.at("projects")) {
        ProjectSpec p;
        p.beta = inst.beta;
        const auto& mat = jp.at("P");
        const int n = static_cast<int>(mat.size());
        p.P.resize(n, n);
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(mat[i].size()) != n)
                throw std::invalid_argument("transition matrix is not square");
            for (int c = 0; c < n; ++c) p.P(i, c) = mat[i][c].get<double>();
        }
        p.R = vector_from_json(jp.at("R"));
        p.c = vector_from_json(jp.at("c"));
        p.d = vector_from_json(jp.at("d"));
        inst.projects.push_back(std::move(p));
    }
    return inst;
}

Instance read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    return read_instance_json(in);
}

}  // namespace switchdex
