#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "stepkernel/ball.hpp"
#include "stepkernel/graph.hpp"
#include "stepkernel/kernel.hpp"

namespace stepkernel {

// Round a double to 12 significant digits (the precision all JSON reports
// carry) so that serialized numbers round-trip exactly.
double jround(double x);

// FNV-1a 64-bit digest, reported for every input file.
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::string fnv1a64_hex_file(const std::string& path);

struct ParsedKernel {
    StepAkernel akernel;
    bool symmetric = true;  // as declared (and then verified) in the file

    // Throws when the file declared symmetric=false or the matrix is not
    // actually symmetric.
    StepKernel kernel() const;
};

// Kernel file format:
//   { "types": [ {"label": "a", "mass": "1/2"}, ... ],
//     "w": [ ["0", "3/2"], ["3/2", "0"] ],
//     "symmetric": true }
// Masses and matrix entries are exact rationals written as strings (or JSON
// integers); floating-point literals are rejected. "symmetric" defaults to
// true and is verified against the matrix. Types with zero mass are dropped
// (together with their rows and columns) before validation.
ParsedKernel parse_kernel_json(const nlohmann::json& j);
ParsedKernel load_kernel_file(const std::string& path);
nlohmann::json kernel_to_json(const StepAkernel& A, bool symmetric);

// Graph file format: { "n": 4, "edges": [[0,1], [2,3]] }
Graph parse_graph_json(const nlohmann::json& j);
Graph load_graph_file(const std::string& path);
nlohmann::json graph_to_json(const Graph& G);

// Ball distribution format:
//   { "depth": 2, "entries": {"((()))": 0.25, ...}, "residual": 0.0 }
nlohmann::json ball_to_json(const BallDistribution& d);
BallDistribution parse_ball_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);

}  // namespace stepkernel
