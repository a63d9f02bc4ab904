#pragma once

#include <span>
#include <string>

#include "config.hpp"
#include "emit.hpp"
#include "unicrit/presets.hpp"
#include "unicrit/returns.hpp"
#include "unicrit/series.hpp"

namespace unicrit::cli {

enum class SeriesTrend { shrinking, growing, inconclusive };

// ratio < 0.95 on every tail ratio: shrinking; > 1.0 on every: growing.
SeriesTrend trend_from_ratios(std::span<const double> ratios);
std::string trend_label(SeriesTrend trend);

// both-shrinking | both-growing | mixed | inconclusive
std::string paired_verdict(SeriesTrend poincare, SeriesTrend forward);

Report orbit_report(const Config& config);
Report preimages_report(const Config& config);
Report poincare_report(const Config& config);
Report forward_report(const Config& config);
Report exponent_report(const Config& config);
Report rprofile_report(const Config& config);
Report children_report(const Config& config);
Report returns_report(const Config& config);
Report theoremb_report(const Config& config);
Report lb2bc_report(const Config& config);
Report decay_report(const Config& config);
Report regen_feigenbaum_report(const Config& config);

}  // namespace unicrit::cli
