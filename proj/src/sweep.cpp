#include "nphase/sweep.hpp"

#include <cmath>

#include "nphase/errors.hpp"
#include "nphase/sensitivity.hpp"

namespace nphase {

std::vector<double> axis_points(const SweepAxis& axis) {
  if (!std::isfinite(axis.min) || !std::isfinite(axis.max) || !std::isfinite(axis.step)) {
    throw validation_error("sweep axis bounds and step must be finite");
  }
  if (axis.step <= 0.0) {
    throw validation_error("sweep axis step must be > 0");
  }
  if (axis.min > axis.max) {
    throw validation_error("sweep axis requires min <= max");
  }
  const double span = axis.max - axis.min;
  if (span / axis.step > SweepSpec::kMaxGridPoints) {
    throw validation_error("sweep axis exceeds the grid-size guard");
  }
  const auto count = static_cast<std::int64_t>(std::floor(span / axis.step + 1e-9));
  std::vector<double> points;
  points.reserve(static_cast<std::size_t>(count) + 1);
  for (std::int64_t i = 0; i <= count; ++i) {
    double value = axis.min + static_cast<double>(i) * axis.step;
    if (value > axis.max) {
      value = axis.max;
    }
    points.push_back(value);
  }
  return points;
}

void SweepSpec::validate() const {
  base.validate();
  if (axes.size() == 1) {
    if (axes[0].name != "bias") {
      throw validation_error("one-axis sweeps sweep the bias");
    }
    if (base.efficiency <= 0.0) {
      throw validation_error("bias sweep requires efficiency > 0");
    }
  } else if (axes.size() == 2) {
    if (axes[0].name != "visibility" || axes[1].name != "efficiency") {
      throw validation_error("two-axis sweeps sweep visibility then efficiency");
    }
    if (axes[1].min <= 0.0) {
      throw validation_error("efficiency axis must start above 0");
    }
    if (axes[0].min < 0.0 || axes[0].max > 1.0 || axes[1].max > 1.0) {
      throw validation_error("visibility and efficiency axes must stay inside [0, 1]");
    }
  } else {
    throw validation_error("sweep needs one or two axes");
  }
  double total = 1.0;
  for (const auto& axis : axes) {
    total *= std::floor((axis.max - axis.min) / axis.step + 1e-9) + 1.0;
  }
  if (total > kMaxGridPoints) {
    throw validation_error("sweep exceeds the grid-size guard");
  }
}

OutputTable sensitivity_sweep(const SweepSpec& spec, Exec policy) {
  spec.validate();
  OutputTable table;
  // The kernels write into flat slots; row assembly stays serial so the
  // parallel loop never touches the allocator.
  if (spec.axes.size() == 1) {
    const std::vector<double> biases = axis_points(spec.axes[0]);
    table.header = {"phi0", "S"};
    std::vector<double> values(biases.size());
    for_each_index(static_cast<std::int64_t>(biases.size()), policy, [&](std::int64_t i) {
      FringeParams point = spec.base;
      point.bias = biases[static_cast<std::size_t>(i)];
      values[static_cast<std::size_t>(i)] = sensitivity(point);
    });
    table.rows.reserve(biases.size());
    for (std::size_t i = 0; i < biases.size(); ++i) {
      table.rows.push_back({biases[i], values[i]});
    }
    return table;
  }

  const std::vector<double> vis = axis_points(spec.axes[0]);
  const std::vector<double> eff = axis_points(spec.axes[1]);
  table.header = {"V", "eta", "S_M", "beats_sql"};
  const std::int64_t count = static_cast<std::int64_t>(vis.size() * eff.size());
  std::vector<double> values(static_cast<std::size_t>(count));
  for_each_index(count, policy, [&](std::int64_t i) {
    FringeParams point = spec.base;
    point.visibility = vis[static_cast<std::size_t>(i) / eff.size()];
    point.efficiency = eff[static_cast<std::size_t>(i) % eff.size()];
    values[static_cast<std::size_t>(i)] = max_sensitivity(point);
  });
  table.rows.reserve(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < static_cast<std::size_t>(count); ++i) {
    const double sm = values[i];
    table.rows.push_back({vis[i / eff.size()], eff[i % eff.size()], sm, sm > 1.0 ? 1.0 : 0.0});
  }
  return table;
}

}  // namespace nphase
