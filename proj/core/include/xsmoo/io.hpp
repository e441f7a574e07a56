#pragma once

#include <iosfwd>
#include <string>

#include "xsmoo/problem.hpp"
#include "xsmoo/solver.hpp"

namespace xsmoo {

inline constexpr const char* kInstanceSchema = "xsmoo-instance/1";
inline constexpr const char* kReportSchema = "xsmoo-report/1";
inline constexpr const char* kFrontierSchema = "xsmoo-frontier/1";

/// Instance JSON. Variables are DIMACS-style (1-based, negative = negated).
/// Throws ParseError on malformed text and std::invalid_argument when the
/// decoded problem violates a model invariant.
std::string problem_to_json(const SmooProblem& problem);
SmooProblem problem_from_json(const std::string& text);

SmooProblem load_problem(const std::string& path);
void save_problem(const SmooProblem& problem, const std::string& path);

/// Whole file as text; throws std::runtime_error when unreadable.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

/// Run report with every derived parameter. Wall time is omitted when
/// `include_timing` is false so that reruns compare byte for byte.
std::string report_to_json(const RunReport& report, bool include_timing = true);

/// Header "x,p_1..p_k[,cost]"; x as a bit string, values as exact rationals.
std::string frontier_to_csv(const Frontier& frontier, std::size_t objectives);
void write_frontier_csv(std::ostream& out, const Frontier& frontier, std::size_t objectives);

}  // namespace xsmoo
