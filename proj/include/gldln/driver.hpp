// Copyright gldln developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef GLDLN_DRIVER_HPP
#define GLDLN_DRIVER_HPP

#include <string>
#include <vector>

#include "gldln/analysis.hpp"

namespace gldln {

enum class SweepMode { spatial, temporal, single, plateau };
enum class TableFormat { csv, markdown };

/// Batch-run description. In spatial/plateau/single mode `tau` fixes the time
/// step (non-positive selects the documented default: 1e-3 for degree <= 2,
/// 2e-4 for degree 3); temporal mode couples tau = h = 1/n.
struct RunConfig {
  int example = 1;
  double theta = 0.5;
  int degree = 1;
  SweepMode mode = SweepMode::spatial;
  std::vector<int> n_list;
  double tau = 0.0;
  double T = 1.0;
  double tol = 1e-10;
  std::string out_path;
  TableFormat format = TableFormat::csv;
};

double effective_tau(const RunConfig& config);

/// Thrown when a sweep row fails; carries the rows completed so far.
struct SweepAborted : std::runtime_error {
  SweepAborted(const std::string& what, RateTable completed_)
      : std::runtime_error(what), completed(std::move(completed_)) {}
  RateTable completed;
};

/// Runs every row of the sweep, computes errors and orders, writes the output
/// file when a path is configured, and returns the table.
RateTable run_convergence_study(const RunConfig& config);

void emit_table(const RateTable& table, TableFormat format,
                const std::string& path);

std::string format_table(const RateTable& table, TableFormat format);

/// Parses a CSV produced by emit_table ("--" cells become NaN).
RateTable parse_table_csv(const std::string& path);

SweepMode parse_mode(const std::string& name);          // throws ConfigurationError
TableFormat parse_format(const std::string& name);      // throws ConfigurationError

}  // namespace gldln

#endif  // GLDLN_DRIVER_HPP
