#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "switchdex/project.hpp"

namespace switchdex {

/// One instance file: shared discount factor plus M projects.
struct Instance {
    double beta = 0.0;
    std::vector<ProjectSpec> projects;
};

/// JSON schema: {"beta": number, "projects": [{"P": [[..]], "R": [..],
/// "c": [..], "d": [..]}]}. Doubles round-trip exactly.
void write_instance_json(std::ostream& os, const Instance& inst);
Instance read_instance_json(std::istream& is);
Instance read_instance_file(const std::string& path);

}  // namespace switchdex
