// Copyright gldln developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "gldln/driver.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gldln/dln.hpp"
#include "gldln/mesh.hpp"
#include "gldln/problems.hpp"

namespace gldln {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4e", v);
  return buf;
}

std::string ord(double v) {
  if (std::isnan(v)) return "--";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

void validate(const RunConfig& config) {
  if (config.example < 1 || config.example > 3)
    throw ConfigurationError("config: example must be 1, 2 or 3");
  if (!(config.theta >= 0.0 && config.theta <= 1.0))
    throw ConfigurationError("config: theta must lie in [0,1]");
  if (config.n_list.empty())
    throw ConfigurationError("config: empty mesh list");
  for (std::size_t i = 0; i < config.n_list.size(); ++i) {
    if (config.n_list[i] < 1)
      throw ConfigurationError("config: mesh subdivisions must be positive");
    if (i > 0 && config.n_list[i] <= config.n_list[i - 1])
      throw ConfigurationError("config: mesh list must be strictly increasing");
  }
  if (!(config.T > 0.0)) throw ConfigurationError("config: T must be positive");
  if (!(config.tol > 0.0))
    throw ConfigurationError("config: tol must be positive");
}

void fill_orders(RateTable& table) {
  const std::size_t m = table.rows.size();
  std::vector<double> params(m);
  for (std::size_t i = 0; i < m; ++i) params[i] = table.rows[i].param;
  const double nan = std::numeric_limits<double>::quiet_NaN();

  auto column = [&](auto member_error, auto member_order) {
    std::vector<double> errs(m);
    for (std::size_t i = 0; i < m; ++i) errs[i] = table.rows[i].*member_error;
    table.rows[0].*member_order = nan;
    if (m < 2) return;
    const std::vector<double> orders = convergence_order(errs, params);
    for (std::size_t i = 1; i < m; ++i)
      table.rows[i].*member_order = orders[i - 1];
  };
  if (m >= 1) {
    column(&RateRow::E1_u, &RateRow::ord1_u);
    column(&RateRow::E0_u, &RateRow::ord0_u);
    column(&RateRow::E1_v, &RateRow::ord1_v);
    column(&RateRow::E0_v, &RateRow::ord0_v);
  }
}

}  // namespace

double effective_tau(const RunConfig& config) {
  if (config.tau > 0.0) return config.tau;
  return config.degree >= 3 ? 2e-4 : 1e-3;
}

SweepMode parse_mode(const std::string& name) {
  if (name == "spatial" || name == "spatial-sweep") return SweepMode::spatial;
  if (name == "temporal" || name == "temporal-sweep") return SweepMode::temporal;
  if (name == "single") return SweepMode::single;
  if (name == "plateau") return SweepMode::plateau;
  throw ConfigurationError("config: unknown mode '" + name + "'");
}

TableFormat parse_format(const std::string& name) {
  if (name == "csv") return TableFormat::csv;
  if (name == "markdown" || name == "md") return TableFormat::markdown;
  throw ConfigurationError("config: unknown format '" + name + "'");
}

RateTable run_convergence_study(const RunConfig& config) {
  validate(config);
  const GlProblem problem = make_example(config.example);

  RateTable table;
  table.param_name = config.mode == SweepMode::temporal ? 't' : 'h';

  for (int n : config.n_list) {
    const double tau =
        config.mode == SweepMode::temporal ? 1.0 / n : effective_tau(config);
    try {
      const DlnConfig dln_config =
          make_config(config.theta, tau, config.T, config.tol);
      const SimulationResult sim =
          run_simulation(problem, dln_config, n, config.degree);

      const Mesh mesh = problem.dim == 2 ? build_unit_square_mesh(n)
                                         : build_unit_cube_mesh(n);
      const FeSpace space = build_space(mesh, config.degree);
      const auto [e0u, e1u] = error_norms(space, sim.u, *problem.exact_u, config.T);
      const auto [e0v, e1v] = error_norms(space, sim.v, *problem.exact_v, config.T);

      RateRow row;
      row.n = n;
      row.param = 1.0 / n;
      row.E0_u = e0u;
      row.E1_u = e1u;
      row.E0_v = e0v;
      row.E1_v = e1v;
      table.rows.push_back(row);
    } catch (const std::exception& e) {
      fill_orders(table);
      throw SweepAborted("sweep aborted at n=" + std::to_string(n) + ": " +
                             e.what(),
                         table);
    }
  }

  fill_orders(table);
  if (!config.out_path.empty())
    emit_table(table, config.format, config.out_path);
  return table;
}

std::string format_table(const RateTable& table, TableFormat format) {
  std::ostringstream out;
  if (format == TableFormat::csv) {
    out << "param,E1_u,order1_u,E0_u,order0_u,E1_v,order1_v,E0_v,order0_v\n";
    for (const RateRow& r : table.rows) {
      out << "1/" << r.n << ',' << sci(r.E1_u) << ',' << ord(r.ord1_u) << ','
          << sci(r.E0_u) << ',' << ord(r.ord0_u) << ',' << sci(r.E1_v) << ','
          << ord(r.ord1_v) << ',' << sci(r.E0_v) << ',' << ord(r.ord0_v)
          << '\n';
    }
  } else {
    const std::string p = table.param_name == 't' ? "tau" : "h";
    out << "| " << p
        << " | E1_u | Order | E0_u | Order | E1_v | Order | E0_v | Order |\n";
    out << "|---|---|---|---|---|---|---|---|---|\n";
    for (const RateRow& r : table.rows) {
      out << "| 1/" << r.n << " | " << sci(r.E1_u) << " | " << ord(r.ord1_u)
          << " | " << sci(r.E0_u) << " | " << ord(r.ord0_u) << " | "
          << sci(r.E1_v) << " | " << ord(r.ord1_v) << " | " << sci(r.E0_v)
          << " | " << ord(r.ord0_v) << " |\n";
    }
  }
  return out.str();
}

void emit_table(const RateTable& table, TableFormat format,
                const std::string& path) {
  if (table.rows.empty())
    throw std::invalid_argument("emit_table: empty table");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("emit_table: cannot open '" + path + "'");
  out << format_table(table, format);
  if (!out) throw IoError("emit_table: write failed for '" + path + "'");
}

RateTable parse_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("parse_table_csv: cannot open '" + path + "'");

  RateTable table;
  std::string line;
  if (!std::getline(in, line))
    throw IoError("parse_table_csv: missing header");

  auto parse_cell = [](const std::string& cell) {
    if (cell == "--") return std::numeric_limits<double>::quiet_NaN();
    return std::stod(cell);
  };

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 9)
      throw IoError("parse_table_csv: malformed row '" + line + "'");

    RateRow row;
    const std::string& p = cells[0];
    const auto slash = p.find('/');
    if (slash != std::string::npos) {
      const double num = std::stod(p.substr(0, slash));
      const double den = std::stod(p.substr(slash + 1));
      row.n = static_cast<int>(std::llround(den / num));
      row.param = num / den;
    } else {
      row.param = std::stod(p);
      row.n = static_cast<int>(std::llround(1.0 / row.param));
    }
    row.E1_u = parse_cell(cells[1]);
    row.ord1_u = parse_cell(cells[2]);
    row.E0_u = parse_cell(cells[3]);
    row.ord0_u = parse_cell(cells[4]);
    row.E1_v = parse_cell(cells[5]);
    row.ord1_v = parse_cell(cells[6]);
    row.E0_v = parse_cell(cells[7]);
    row.ord0_v = parse_cell(cells[8]);
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace gldln
