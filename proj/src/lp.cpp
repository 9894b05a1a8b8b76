// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mcoss/lp.hpp"

#include <Eigen/LU>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace mcoss {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kDualTol = 1e-9;
constexpr double kDegenerateStep = 1e-12;
constexpr int kBlandTrigger = 50;  // degenerate steps before Bland pricing
constexpr int kRefactorPeriod = 768;

enum class VarState { basic, at_lower, at_upper, fixed };

struct UnboundedSignal {};

// How an original variable maps onto internal columns (all internal
// columns live in [0, u]).
struct VarMap {
  enum class Kind { shifted, mirrored, split } kind = Kind::shifted;
  Index col_a = -1;
  Index col_b = -1;  // split only
  double offset = 0.0;
};

// The working standard form: equality rows over structural columns plus
// unit columns (slacks and artificials), right-hand side >= 0.
class Simplex {
 public:
  Simplex(const LpProblem& p, double feasibility_tol)
      : problem_(p), feas_tol_(feasibility_tol) {
    build();
  }

  LpSolution run();

 private:
  struct UnitCol {
    Index row = 0;
    double sign = 1.0;
    bool artificial = false;
  };

  void build();
  Index add_unit_column(Index row, double sign, bool artificial);

  double upper_of(Index col) const {
    return col < n_struct_ ? upper_(col) : unit_upper_[col - n_struct_];
  }
  double cost_of(Index col) const {
    if (phase1_) return is_artificial(col) ? 1.0 : 0.0;
    return col < n_struct_ ? cost_(col) : 0.0;
  }
  bool is_artificial(Index col) const {
    return col >= n_struct_ && units_[col - n_struct_].artificial;
  }
  Vector column(Index col) const {
    if (col < n_struct_) return a_.col(col);
    Vector v = Vector::Zero(rows_);
    const auto& u = units_[col - n_struct_];
    v(u.row) = u.sign;
    return v;
  }
  Vector tableau_column(Index col) const {
    if (col < n_struct_) return binv_ * a_.col(col);
    const auto& u = units_[col - n_struct_];
    return Vector(u.sign * binv_.col(u.row));
  }
  double nonbasic_value(Index col) const {
    return state_[col] == VarState::at_upper ? upper_of(col) : 0.0;
  }

  void refactorize();
  void recompute_basic_values();
  double phase_objective() const;
  Index choose_entering(const Vector& ya_struct, const Vector& y) const;
  bool iterate();  // one pivot or bound flip; false at phase optimum
  void apply_pivot(Index entering, Index leave_row, const Vector& w,
                   double entering_value, VarState leaving_state);
  void drive_out_artificials();
  LpSolution extract();

  const LpProblem& problem_;
  double feas_tol_;

  Index rows_ = 0;
  Index n_struct_ = 0;
  Matrix a_;     // rows_ x n_struct_
  Vector b_;
  Vector cost_;  // phase-2 structural costs
  Vector upper_;
  std::vector<double> unit_upper_;
  std::vector<UnitCol> units_;
  std::vector<VarMap> var_maps_;
  Index n_cols_ = 0;

  std::vector<VarState> state_;
  std::vector<Index> basis_;
  Matrix binv_;
  Vector xb_;
  Vector w_buf_;
  Eigen::RowVectorXd pivot_row_buf_;
  bool phase1_ = true;
  bool bland_ = false;
  int degenerate_run_ = 0;
  int iterations_ = 0;
  int pivots_since_refactor_ = 0;
};

void Simplex::build() {
  const Index n = problem_.num_vars();
  const Index eq_rows = problem_.a_eq.rows();
  const Index ub_rows = problem_.a_ub.rows();
  rows_ = eq_rows + ub_rows;

  Index cols = 0;
  for (Index j = 0; j < n; ++j) {
    const bool lo_finite = std::isfinite(problem_.lower(j));
    const bool hi_finite = std::isfinite(problem_.upper(j));
    cols += (!lo_finite && !hi_finite) ? 2 : 1;  // free variables split
  }
  n_struct_ = cols;
  a_.setZero(rows_, n_struct_);
  b_.setZero(rows_);
  cost_.setZero(n_struct_);
  upper_.setConstant(n_struct_, kInf);
  var_maps_.resize(static_cast<size_t>(n));

  if (eq_rows > 0) b_.head(eq_rows) = problem_.b_eq;
  if (ub_rows > 0) b_.tail(ub_rows) = problem_.b_ub;

  auto source_column = [&](Index j) {
    Vector col = Vector::Zero(rows_);
    if (eq_rows > 0) col.head(eq_rows) = problem_.a_eq.col(j);
    if (ub_rows > 0) col.tail(ub_rows) = problem_.a_ub.col(j);
    return col;
  };

  Index next = 0;
  for (Index j = 0; j < n; ++j) {
    const double lo = problem_.lower(j);
    const double hi = problem_.upper(j);
    const Vector col = source_column(j);
    if (std::isfinite(lo)) {
      var_maps_[j] = {VarMap::Kind::shifted, next, -1, lo};  // x = lo + x'
      a_.col(next) = col;
      cost_(next) = problem_.c(j);
      upper_(next) = std::isfinite(hi) ? hi - lo : kInf;
      b_ -= col * lo;
      ++next;
    } else if (std::isfinite(hi)) {
      var_maps_[j] = {VarMap::Kind::mirrored, next, -1, hi};  // x = hi - x'
      a_.col(next) = -col;
      cost_(next) = -problem_.c(j);
      b_ -= col * hi;
      ++next;
    } else {
      var_maps_[j] = {VarMap::Kind::split, next, next + 1, 0.0};  // x = x+ - x-
      a_.col(next) = col;
      cost_(next) = problem_.c(j);
      a_.col(next + 1) = -col;
      cost_(next + 1) = -problem_.c(j);
      next += 2;
    }
  }

  // Slacks for the <= block, then sign-normalize rows to b >= 0.
  std::vector<Index> slack_of_row(static_cast<size_t>(rows_), -1);
  for (Index r = eq_rows; r < rows_; ++r)
    slack_of_row[r] = add_unit_column(r, 1.0, /*artificial=*/false);
  for (Index r = 0; r < rows_; ++r) {
    if (b_(r) < 0.0) {
      a_.row(r) = -a_.row(r);
      b_(r) = -b_(r);
      if (slack_of_row[r] >= 0) units_[slack_of_row[r] - n_struct_].sign = -1.0;
    }
  }

  n_cols_ = n_struct_ + static_cast<Index>(units_.size());
  state_.assign(static_cast<size_t>(n_cols_), VarState::at_lower);
  for (Index j = 0; j < n_struct_; ++j)
    if (upper_(j) == 0.0) state_[j] = VarState::fixed;

  // Initial basis: positive slacks where available, artificials elsewhere.
  basis_.assign(static_cast<size_t>(rows_), -1);
  for (Index r = 0; r < rows_; ++r) {
    const Index s = slack_of_row[r];
    if (s >= 0 && units_[s - n_struct_].sign > 0.0) {
      basis_[r] = s;
    } else {
      basis_[r] = add_unit_column(r, 1.0, /*artificial=*/true);
      state_.push_back(VarState::at_lower);
      ++n_cols_;
    }
    state_[basis_[r]] = VarState::basic;
  }

  binv_ = Matrix::Identity(rows_, rows_);
  xb_ = b_;
  phase1_ = true;
}

Index Simplex::add_unit_column(Index row, double sign, bool artificial) {
  units_.push_back({row, sign, artificial});
  unit_upper_.push_back(kInf);
  return n_struct_ + static_cast<Index>(units_.size()) - 1;
}

void Simplex::refactorize() {
  Matrix basis_matrix(rows_, rows_);
  for (Index r = 0; r < rows_; ++r) basis_matrix.col(r) = column(basis_[r]);
  Eigen::PartialPivLU<Matrix> lu(basis_matrix);
  binv_ = lu.inverse();
  recompute_basic_values();
  pivots_since_refactor_ = 0;
}

void Simplex::recompute_basic_values() {
  Vector rhs = b_;
  for (Index j = 0; j < n_cols_; ++j) {
    if (state_[j] != VarState::at_upper) continue;
    const double u = upper_of(j);
    if (j < n_struct_)
      rhs -= a_.col(j) * u;
    else
      rhs(units_[j - n_struct_].row) -= units_[j - n_struct_].sign * u;
  }
  xb_ = binv_ * rhs;
}

double Simplex::phase_objective() const {
  double obj = 0.0;
  for (Index r = 0; r < rows_; ++r) obj += cost_of(basis_[r]) * xb_(r);
  for (Index j = 0; j < n_cols_; ++j)
    if (state_[j] == VarState::at_upper) obj += cost_of(j) * upper_of(j);
  return obj;
}

Index Simplex::choose_entering(const Vector& ya_struct, const Vector& y) const {
  Index best = -1;
  double best_score = kDualTol;
  for (Index j = 0; j < n_cols_; ++j) {
    if (state_[j] == VarState::basic || state_[j] == VarState::fixed) continue;
    if (!phase1_ && is_artificial(j)) continue;
    const double ya = j < n_struct_
                          ? ya_struct(j)
                          : units_[j - n_struct_].sign * y(units_[j - n_struct_].row);
    const double d = cost_of(j) - ya;
    double score = 0.0;
    if (state_[j] == VarState::at_lower && d < -kDualTol) score = -d;
    if (state_[j] == VarState::at_upper && d > kDualTol) score = d;
    if (score <= 0.0) continue;
    if (bland_) return j;  // lowest eligible index
    if (score > best_score) {
      best_score = score;
      best = j;
    }
  }
  return best;
}

void Simplex::apply_pivot(Index entering, Index leave_row, const Vector& w,
                          double entering_value, VarState leaving_state) {
  const Index leaving = basis_[leave_row];
  state_[leaving] = leaving_state;
  basis_[leave_row] = entering;
  state_[entering] = VarState::basic;
  xb_(leave_row) = entering_value;

  // Rank-1 product-form update: B'^-1 = B^-1 - (w - e_r) * (row_r / pivot).
  const double pivot = w(leave_row);
  pivot_row_buf_ = binv_.row(leave_row) / pivot;
  w_buf_ = w;
  w_buf_(leave_row) -= 1.0;
  binv_.noalias() -= w_buf_ * pivot_row_buf_;
  if (++pivots_since_refactor_ >= kRefactorPeriod) refactorize();
}

bool Simplex::iterate() {
  Vector cb(rows_);
  for (Index r = 0; r < rows_; ++r) cb(r) = cost_of(basis_[r]);
  const Vector y = binv_.transpose() * cb;
  const Vector ya_struct = a_.transpose() * y;

  const Index q = choose_entering(ya_struct, y);
  if (q < 0) return false;

  const double dir = state_[q] == VarState::at_lower ? 1.0 : -1.0;
  const Vector w = tableau_column(q);

  // Ratio test over basic bounds plus the entering variable's own span.
  double step = kInf;
  Index leave_row = -1;
  bool leave_at_upper = false;
  for (Index r = 0; r < rows_; ++r) {
    const double g = dir * w(r);
    double t;
    bool at_upper;
    if (g > kPivotTol) {
      t = xb_(r) / g;
      at_upper = false;
    } else if (g < -kPivotTol) {
      const double ub = upper_of(basis_[r]);
      if (!std::isfinite(ub)) continue;
      t = (ub - xb_(r)) / (-g);
      at_upper = true;
    } else {
      continue;
    }
    if (t < 0.0) t = 0.0;
    const bool better =
        t < step - kDegenerateStep ||
        (t < step + kDegenerateStep && leave_row >= 0 && basis_[r] < basis_[leave_row]);
    if (leave_row < 0 ? t < step : better) {
      step = t;
      leave_row = r;
      leave_at_upper = at_upper;
    }
  }
  const double own_span = upper_of(q);
  const bool flip = std::isfinite(own_span) && own_span < step - kDegenerateStep;
  if (flip) step = own_span;

  if (!std::isfinite(step)) {
    if (phase1_) throw std::runtime_error("lp: unbounded phase-1 step (internal)");
    throw UnboundedSignal{};
  }

  if (step <= kDegenerateStep) {
    if (++degenerate_run_ > kBlandTrigger) bland_ = true;
  } else {
    degenerate_run_ = 0;
    bland_ = false;
  }

  xb_ -= step * dir * w;
  ++iterations_;

  if (flip) {
    state_[q] =
        state_[q] == VarState::at_lower ? VarState::at_upper : VarState::at_lower;
    return true;
  }

  const double entering_value = nonbasic_value(q) + dir * step;
  apply_pivot(q, leave_row, w, entering_value,
              leave_at_upper ? VarState::at_upper : VarState::at_lower);
  return true;
}

void Simplex::drive_out_artificials() {
  for (Index r = 0; r < rows_; ++r) {
    if (!is_artificial(basis_[r])) continue;
    // Any non-artificial column with a usable tableau entry in this row
    // can take over via a degenerate pivot; otherwise the row is
    // redundant and the artificial stays basic, pinned at zero.
    const Eigen::RowVectorXd row_struct = binv_.row(r) * a_;
    Index pivot_col = -1;
    for (Index j = 0; j < n_cols_ && pivot_col < 0; ++j) {
      if (is_artificial(j) || state_[j] == VarState::basic) continue;
      const double v = j < n_struct_
                           ? row_struct(j)
                           : units_[j - n_struct_].sign * binv_(r, units_[j - n_struct_].row);
      if (std::abs(v) > 1e-7) pivot_col = j;
    }
    if (pivot_col < 0) {
      unit_upper_[basis_[r] - n_struct_] = 0.0;
      continue;
    }
    const Index leaving = basis_[r];
    const Vector w = tableau_column(pivot_col);
    apply_pivot(pivot_col, r, w, nonbasic_value(pivot_col), VarState::fixed);
    unit_upper_[leaving - n_struct_] = 0.0;
    ++iterations_;
  }
  refactorize();
}

LpSolution Simplex::extract() {
  LpSolution sol;
  sol.status = LpStatus::optimal;
  sol.iterations = iterations_;

  Vector internal = Vector::Zero(n_cols_);
  for (Index j = 0; j < n_cols_; ++j) internal(j) = nonbasic_value(j);
  for (Index r = 0; r < rows_; ++r) internal(basis_[r]) = xb_(r);

  const Index n = problem_.num_vars();
  sol.x.resize(n);
  for (Index j = 0; j < n; ++j) {
    const VarMap& vm = var_maps_[j];
    switch (vm.kind) {
      case VarMap::Kind::shifted:
        sol.x(j) = vm.offset + internal(vm.col_a);
        break;
      case VarMap::Kind::mirrored:
        sol.x(j) = vm.offset - internal(vm.col_a);
        break;
      case VarMap::Kind::split:
        sol.x(j) = internal(vm.col_a) - internal(vm.col_b);
        break;
    }
  }
  sol.objective_value = problem_.c.dot(sol.x);

  const double audit_tol = 10.0 * feas_tol_;
  if (problem_.a_eq.rows() > 0 &&
      (problem_.a_eq * sol.x - problem_.b_eq).cwiseAbs().maxCoeff() > audit_tol)
    throw std::runtime_error("lp: equality residual above tolerance");
  if (problem_.a_ub.rows() > 0 &&
      (problem_.a_ub * sol.x - problem_.b_ub).maxCoeff() > audit_tol)
    throw std::runtime_error("lp: inequality residual above tolerance");
  for (Index j = 0; j < n; ++j)
    if (sol.x(j) < problem_.lower(j) - audit_tol ||
        sol.x(j) > problem_.upper(j) + audit_tol)
      throw std::runtime_error("lp: bound violated above tolerance");
  return sol;
}

LpSolution Simplex::run() {
  const long cap = 20000 + 50L * (rows_ + n_cols_);
  long guard = 0;
  try {
    while (iterate()) {
      if (++guard > cap) throw std::runtime_error("lp: iteration limit (phase 1)");
    }
    if (phase_objective() > feas_tol_) {
      LpSolution sol;
      sol.status = LpStatus::infeasible;
      sol.iterations = iterations_;
      return sol;
    }
    drive_out_artificials();

    phase1_ = false;
    bland_ = false;
    degenerate_run_ = 0;
    guard = 0;
    while (iterate()) {
      if (++guard > cap) throw std::runtime_error("lp: iteration limit (phase 2)");
    }
  } catch (const UnboundedSignal&) {
    LpSolution sol;
    sol.status = LpStatus::unbounded;
    sol.iterations = iterations_;
    return sol;
  }
  refactorize();
  return extract();
}

}  // namespace

LpProblem LpProblem::sized(Index n, Index eq_rows, Index ub_rows) {
  LpProblem p;
  p.c = Vector::Zero(n);
  p.a_eq = Matrix::Zero(eq_rows, n);
  p.b_eq = Vector::Zero(eq_rows);
  p.a_ub = Matrix::Zero(ub_rows, n);
  p.b_ub = Vector::Zero(ub_rows);
  p.lower = Vector::Zero(n);
  p.upper = Vector::Constant(n, kInf);
  return p;
}

void LpProblem::validate() const {
  const Index n = num_vars();
  auto fail = [](const std::string& m) { throw std::invalid_argument("lp problem: " + m); };
  if (a_eq.rows() != b_eq.size()) fail("a_eq/b_eq row mismatch");
  if (a_ub.rows() != b_ub.size()) fail("a_ub/b_ub row mismatch");
  if (a_eq.rows() > 0 && a_eq.cols() != n) fail("a_eq column count");
  if (a_ub.rows() > 0 && a_ub.cols() != n) fail("a_ub column count");
  if (lower.size() != n || upper.size() != n) fail("bound vector length");
  for (Index j = 0; j < n; ++j) {
    if (std::isnan(lower(j)) || std::isnan(upper(j))) fail("NaN bound");
    if (lower(j) > upper(j)) fail("lower bound above upper bound");
  }
}

std::string_view to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal:
      return "optimal";
    case LpStatus::infeasible:
      return "infeasible";
    case LpStatus::unbounded:
      return "unbounded";
  }
  return "unknown";
}

LpSolution solve_lp(const LpProblem& problem, double feasibility_tol) {
  problem.validate();
  Simplex simplex(problem, feasibility_tol);
  return simplex.run();
}

void dump_lp_csv(const LpProblem& problem, std::ostream& out) {
  const Index n = problem.num_vars();
  out << "row_type";
  for (Index j = 0; j < n; ++j) out << ",x" << j;
  out << ",rhs\n";
  out << "objective";
  for (Index j = 0; j < n; ++j) out << "," << format_double(problem.c(j));
  out << ",\n";
  for (Index r = 0; r < problem.a_eq.rows(); ++r) {
    out << "eq";
    for (Index j = 0; j < n; ++j) out << "," << format_double(problem.a_eq(r, j));
    out << "," << format_double(problem.b_eq(r)) << "\n";
  }
  for (Index r = 0; r < problem.a_ub.rows(); ++r) {
    out << "ub";
    for (Index j = 0; j < n; ++j) out << "," << format_double(problem.a_ub(r, j));
    out << "," << format_double(problem.b_ub(r)) << "\n";
  }
  out << "lower";
  for (Index j = 0; j < n; ++j) out << "," << format_double(problem.lower(j));
  out << ",\n";
  out << "upper";
  for (Index j = 0; j < n; ++j) out << "," << format_double(problem.upper(j));
  out << ",\n";
}

}  // namespace mcoss
