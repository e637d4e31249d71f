#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "ultraplanar/instance.hpp"
#include "ultraplanar/solver.hpp"

namespace ultraplanar {

inline constexpr const char* kInstanceFormat = "ultraplanar-instance";
inline constexpr int kInstanceVersion = 1;

/// Checks that the graph is connected and its rotation system is a planar
/// embedding (Euler's formula over the traced faces), that θ >= 0, lengths
/// are positive and the schedule is strictly increasing. Bridges are allowed.
void validate_instance(const Instance& inst);

// JSON instance documents; see docs/formats.md.
Instance instance_from_json(const std::string& text);
std::string instance_to_json(const Instance& inst);
Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& inst, const std::filesystem::path& path);

SolverConfig config_from_json(const std::string& text);
std::string config_to_json(const SolverConfig& config);

/// rows × cols grid with a planted nested partition. The coarsest level
/// splits the grid in two, each finer level bisects every block again
/// (longer side first). An edge whose endpoints first separate at level l
/// gets θ = δ^l = l, interior edges θ = 0, then uniform noise in
/// [-noise, noise] is added and θ is clamped at 0.
Instance gen_grid(int rows, int cols, int levels, double noise, std::uint64_t seed);

/// Random bridgeless planar graph with integer θ in [0, 3L+3] and δ^l = 3l.
Instance gen_random(int vertices, int levels, std::uint64_t seed);

// Planted hierarchy of a noise-free gen_grid instance (finest level first).
BinaryHierarchy planted_hierarchy(int rows, int cols, int levels);

// Output writers; all numbers use round-trip precision.
void write_trace_csv(const SolveReport& report, std::ostream& out);
void write_timing_csv(const SolveReport& report, std::ostream& out);
void write_hierarchy_json(const Instance& inst, const BinaryHierarchy& hier, std::ostream& out);
void write_ultrametric_csv(const Instance& inst, const Ultrametric& um, std::ostream& out);
std::string summary_json(const Instance& inst, const SolveReport& report);

BinaryHierarchy hierarchy_from_json(const std::string& text);

std::string format_double(double v);

}  // namespace ultraplanar
