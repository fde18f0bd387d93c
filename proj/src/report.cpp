#include "sstqp/report.hpp"

#include "sstqp/closedform.hpp"
#include "sstqp/relax.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <sstream>

namespace sstqp {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

BoundCell run(const ConicModel& m, const SolverOptions& opts) {
  const auto t0 = Clock::now();
  const SolveResult r = solve(m, opts);
  BoundCell c;
  c.status = r.status;
  c.value = r.value;
  c.millis = ms_since(t0);
  return c;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

nlohmann::json cell_json(const BoundCell& c) {
  if (c.status == SolveStatus::kOptimal && c.value) return *c.value;
  return c.text();
}

}  // namespace

std::string BoundCell::text() const {
  switch (status) {
    case SolveStatus::kOptimal:
      return value ? fmt(*value) : "failure";
    case SolveStatus::kUnbounded:
      return "unbounded";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kNumericalFailure:
      return "failure";
  }
  return "failure";
}

std::vector<BoundReportRow> compute_bounds(const SymMatrix& Q, const std::vector<int>& rhos,
                                           const BoundsOptions& opts) {
  const int n = Q.n();
  std::optional<double> ell;
  std::vector<double> chain;
  double chain_ms = 0.0;
  try {
    const auto t0 = Clock::now();
    chain = bound_chain(Q, opts.oracle);
    chain_ms = ms_since(t0);
    ell = chain.back();
  } catch (const CapExceeded&) {
  }

  std::vector<BoundReportRow> rows;
  for (int rho : rhos) {
    if (rho < 1 || rho > n) throw InvalidArgument("bounds: rho must lie in [1, n]");
    BoundReportRow row;
    row.rho = rho;
    if (!chain.empty()) {
      row.ell_rho_oracle = chain[static_cast<std::size_t>(rho - 1)];
      row.oracle_millis = chain_ms;
    } else {
      try {
        const auto t0 = Clock::now();
        row.ell_rho_oracle = solve_sparse_stqp_exact(Q, rho, opts.oracle).value;
        row.oracle_millis = ms_since(t0);
      } catch (const CapExceeded&) {
      }
    }
    row.r1 = run(build_r1_rho(Q, rho), opts.solver);
    row.r2 = run(build_r2_rho(Q, rho), opts.solver);
    row.r3 = run(build_r3_rho(Q, rho), opts.solver);
    row.rlt_exact = rlt_exact(Q, rho, opts.tol);
    if (ell && row.ell_rho_oracle) {
      ToleranceConfig t = opts.tol;
      t.eq_tol = opts.exact_tol;
      row.shor_exact = shor_exact(Q, *ell, *row.ell_rho_oracle, t);
    }
    if (row.ell_rho_oracle && row.r3.value) {
      row.r3_exact = std::fabs(*row.r3.value - *row.ell_rho_oracle) <= opts.exact_tol;
    }

    const bool have_r1 = row.r1.status == SolveStatus::kOptimal;
    const bool have_r3 = row.r3.status == SolveStatus::kOptimal;
    const bool r2_ok = row.r2.status == SolveStatus::kOptimal ||
                       row.r2.status == SolveStatus::kUnbounded;
    if (have_r1 && have_r3 && r2_ok) {
      const double tol = opts.sandwich_tol;
      bool ok = *row.r1.value <= *row.r3.value + tol;
      if (row.r2.value) ok = ok && *row.r2.value <= *row.r3.value + tol;
      if (row.ell_rho_oracle) ok = ok && *row.r3.value <= *row.ell_rho_oracle + tol;
      row.sandwich_ok = ok;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string bounds_to_csv(const std::vector<BoundReportRow>& rows) {
  std::ostringstream os;
  os << "rho,ell_rho_oracle,r1,r2,r3,rlt_exact,shor_exact,r3_exact,sandwich_ok,"
        "ms_oracle,ms_r1,ms_r2,ms_r3\n";
  auto opt_bool = [](const std::optional<bool>& b) -> std::string {
    return b ? (*b ? "true" : "false") : "";
  };
  for (const auto& r : rows) {
    os << r.rho << ',' << (r.ell_rho_oracle ? fmt(*r.ell_rho_oracle) : "") << ','
       << r.r1.text() << ',' << r.r2.text() << ',' << r.r3.text() << ','
       << (r.rlt_exact ? "true" : "false") << ',' << opt_bool(r.shor_exact) << ','
       << opt_bool(r.r3_exact) << ',' << opt_bool(r.sandwich_ok) << ',' << fmt(r.oracle_millis)
       << ',' << fmt(r.r1.millis) << ',' << fmt(r.r2.millis) << ',' << fmt(r.r3.millis) << '\n';
  }
  return os.str();
}

std::string bounds_to_json(const std::vector<BoundReportRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j;
    j["rho"] = r.rho;
    j["ell_rho_oracle"] = r.ell_rho_oracle ? nlohmann::json(*r.ell_rho_oracle) : nullptr;
    j["r1"] = cell_json(r.r1);
    j["r2"] = cell_json(r.r2);
    j["r3"] = cell_json(r.r3);
    j["rlt_exact"] = r.rlt_exact;
    j["shor_exact"] = r.shor_exact ? nlohmann::json(*r.shor_exact) : nullptr;
    j["r3_exact"] = r.r3_exact ? nlohmann::json(*r.r3_exact) : nullptr;
    j["sandwich_ok"] = r.sandwich_ok ? nlohmann::json(*r.sandwich_ok) : nullptr;
    j["wall_times_ms"] = {{"oracle", r.oracle_millis},
                          {"r1", r.r1.millis},
                          {"r2", r.r2.millis},
                          {"r3", r.r3.millis}};
    out.push_back(std::move(j));
  }
  return out.dump(2) + "\n";
}

}  // namespace sstqp
