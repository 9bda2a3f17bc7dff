#pragma once

#include <string>

#include "nashx/pipeline.hpp"

namespace nashx {

/// A parsed and validated problem file.
struct ProblemFile {
  NashProblem problem;
  std::vector<MPoly> equations;  // original equations (graph mode: in x and unknowns)
  double radius = 0.25;
  std::string radius_text = "1/4";
  int samples = 64;
};

/// Line-oriented syntax:
///   vars x1 x2
///   unknowns y1 y2
///   eq <poly>                          (repeatable)
///   variety vars=y;z1,z2 eq ... codim=2   (alternative to eq lines)
///   branch y1 : 1 + x1 + 1/2*x1^2
///   config jet_order=12 nu=2..8 seed=42 radius=1/4 samples=64
/// Throws std::runtime_error with a line-numbered message on syntax or
/// validation errors (including branch/equation defect order).
ProblemFile parse_problem(const std::string& text);

/// Canonical text form; parse(print(p)) == p.
std::string print_problem(const ProblemFile& p);

/// Run the pipeline and write a JSON report. Exit codes: 0 all checks pass,
/// 2 verification failure, 3 pipeline error, 4 I/O failure.
int run_report(const ProblemFile& problem, const std::string& out_path);

}  // namespace nashx
