#include "entspec/convergence.hpp"

#include <algorithm>
#include <cmath>

#include "entspec/errors.hpp"

namespace entspec {

SimConfig refined_config(const SimConfig& cfg) {
  SimConfig out = cfg;
  out.n_max = std::max(cfg.n_max + 1, (3 * cfg.n_max) / 2);
  out.modes = {};
  return out;
}

SimConfig doubled_box_config(const SimConfig& cfg) {
  SimConfig out = cfg;
  out.box_length = 2.0 * cfg.box_length;
  out.n_max = 2 * cfg.n_max;
  for (auto* p : {&out.packet1, &out.packet2}) {
    p->central_momentum = {2.0 * p->central_momentum[0], 2.0 * p->central_momentum[1]};
    p->sigma = 2.0 * p->sigma;
  }
  out.modes = {};
  return out;
}

double max_deviation(const std::vector<SpectrumRow>& a, const std::vector<SpectrumRow>& b,
                     int ranks) {
  if (a.size() != b.size()) throw NumericError("convergence runs differ in sample count");
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const auto n = std::min({static_cast<std::size_t>(ranks), a[j].p.size(), b[j].p.size()});
    for (std::size_t r = 0; r < n; ++r) worst = std::max(worst, std::abs(a[j].p[r] - b[j].p[r]));
  }
  return worst;
}

bool ConvergenceReport::pass() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

ConvergenceReport convergence_check(const SimConfig& cfg, const RunOptions& options) {
  RunOptions opts = options;
  opts.cache_dir.reset();
  opts.keep_blocks = false;
  SimConfig base_cfg = cfg;
  base_cfg.modes = {};
  const auto base = run_simulation(base_cfg, opts);

  ConvergenceReport report;
  const std::pair<const char*, SimConfig> variants[] = {
      {"n_max x1.5", refined_config(base_cfg)}, {"L x2", doubled_box_config(base_cfg)}};
  for (const auto& [name, variant] : variants) {
    const auto other = run_simulation(variant, opts);
    ConvergenceCheck check;
    check.name = name;
    check.n_max = variant.n_max;
    check.box_length = variant.box_length;
    check.deviation = max_deviation(base.series, other.series);
    check.pass = check.deviation <= kConvergenceTolerance;
    report.checks.push_back(check);
  }
  return report;
}

}  // namespace entspec
