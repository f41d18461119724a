#pragma once

#include <string>
#include <vector>

#include "nphase/exec.hpp"
#include "nphase/fringe.hpp"
#include "nphase/table.hpp"

namespace nphase {

// One swept variable: inclusive grid min, min+step, ... clamped to max. The
// endpoint is snapped onto max when it lands within a relative 1e-9 of it, so
// grids like 0.05:0.05:1.00 end exactly at 1.
struct SweepAxis {
  std::string name;  // "bias", "visibility" or "efficiency"
  double min = 0.0;
  double max = 0.0;
  double step = 0.0;
};

std::vector<double> axis_points(const SweepAxis& axis);

// Grid description driving sensitivity tables. One axis sweeps the bias and
// tabulates S(Phi0); two axes sweep visibility x efficiency and tabulate S_M
// with a beats-SQL marker. The fixed parameters come from `base`.
struct SweepSpec {
  std::vector<SweepAxis> axes;
  FringeParams base;

  // Grids above this many total points are rejected as runaway.
  static constexpr double kMaxGridPoints = 1e7;

  void validate() const;
};

// Dense grid evaluation. Rows are ordered by ascending axis value (first axis
// major) regardless of evaluation order; serial and parallel policies produce
// identical tables.
//
// 1 axis:  columns bias,S
// 2 axes:  columns <axis0>,<axis1>,S_M,beats_sql
OutputTable sensitivity_sweep(const SweepSpec& spec, Exec policy = Exec::Parallel);

}  // namespace nphase
