#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace ldes::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct VarId {
  std::int32_t index = -1;
  constexpr bool valid() const { return index >= 0; }
  friend constexpr auto operator<=>(VarId, VarId) = default;
};

struct RowId {
  std::int32_t index = -1;
  constexpr bool valid() const { return index >= 0; }
  friend constexpr auto operator<=>(RowId, RowId) = default;
};

enum class Sense { minimize, maximize };
enum class Relation { less_equal, equal, greater_equal };

struct Term {
  VarId var;
  double coef = 0.0;
  friend bool operator==(const Term&, const Term&) = default;
};

using SparseRow = std::vector<Term>;

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
};

struct Constraint {
  std::string name;
  SparseRow row;
  Relation relation = Relation::less_equal;
  double rhs = 0.0;
};

struct Objective {
  std::string name = "COST";
  Sense sense = Sense::minimize;
  SparseRow coefficients;
  double constant = 0.0;
};

/// Sparse LP in row form. Variables and rows keep insertion order; names are
/// unique within each namespace and the objective name is reserved.
class LinearProgram {
 public:
  explicit LinearProgram(std::string name = "LP");

  VarId add_variable(std::string name, double lower, double upper);
  RowId add_constraint(std::string name, SparseRow row, Relation relation, double rhs);

  void set_bounds(VarId var, double lower, double upper);
  void set_sense(Sense sense) { objective_.sense = sense; }
  void set_objective_name(std::string name);
  /// Accumulates into any existing coefficient of `var`.
  void add_objective_term(VarId var, double coef);
  void set_objective_constant(double constant) { objective_.constant = constant; }

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const Objective& objective() const { return objective_; }
  const Variable& variable(VarId id) const { return variables_.at(static_cast<std::size_t>(id.index)); }
  const Constraint& constraint(RowId id) const {
    return constraints_.at(static_cast<std::size_t>(id.index));
  }

  Eigen::Index num_variables() const { return static_cast<Eigen::Index>(variables_.size()); }
  Eigen::Index num_constraints() const { return static_cast<Eigen::Index>(constraints_.size()); }

  std::optional<VarId> find_variable(std::string_view name) const;
  std::optional<RowId> find_constraint(std::string_view name) const;

  /// Every violated structural invariant; empty when the LP is well formed.
  std::vector<std::string> validate() const;

  Eigen::SparseMatrix<double, Eigen::RowMajor> constraint_matrix() const;
  Eigen::VectorXd objective_vector() const;
  Eigen::VectorXd lower_bounds() const;
  Eigen::VectorXd upper_bounds() const;
  /// Objective including the constant term.
  double evaluate_objective(const Eigen::Ref<const Eigen::VectorXd>& x) const;

 private:
  void check_var(VarId var) const;
  SparseRow merged(SparseRow row) const;

  std::string name_;
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  Objective objective_;
  std::unordered_map<std::string, VarId> var_index_;
  std::unordered_map<std::string, RowId> row_index_;
};

/// Same variables (compared by name, order-insensitive), same rows, same
/// objective. Zero coefficients are ignored; numbers compare within
/// `rel_tol` relative.
bool structurally_equal(const LinearProgram& a, const LinearProgram& b, double rel_tol = 0.0);

// ---------------------------------------------------------------------------
// Fixed-format MPS

inline constexpr std::size_t kMpsNameLimit = 8;

class MpsFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MpsParseError : public std::runtime_error {
 public:
  MpsParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Deterministic fixed MPS. Throws MpsFormatError naming the offending
/// variable/row when a name does not fit the 8-character fields.
std::string emit_standard_form(const LinearProgram& lp);

LinearProgram parse_standard_form(std::string_view text);

/// Shortest-round-trip number rendering that fits a 12-character MPS field.
std::string format_mps_number(double value);

// ---------------------------------------------------------------------------
// Solving

enum class SolveStatus { optimal, infeasible, unbounded, limit };

std::string to_string(SolveStatus status);

struct SolverConfig {
  std::string backend = "highs";
  double feasibility_tol = 1e-8;
  double optimality_tol = 1e-8;
  double time_limit_s = kInfinity;
  int threads = 1;
  std::uint64_t seed = 0;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::limit;
  double objective = 0.0;  // includes the objective constant
  Eigen::VectorXd primal;
  std::optional<Eigen::VectorXd> duals;
  double wall_seconds = 0.0;
  std::string diagnostics;

  bool optimal() const { return status == SolveStatus::optimal; }
};

class SolverUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> available_backends();

/// Dispatches to the named backend. Throws SolverUnavailable for unknown
/// backends and std::invalid_argument for malformed LPs.
SolveOutcome solve(const LinearProgram& lp, const SolverConfig& config = {});

// ---------------------------------------------------------------------------
// Verification

struct ResidualReport {
  double max_bound_violation = 0.0;
  VarId worst_variable;
  /// Per row, signed: activity - rhs for "<=" and "=", rhs - activity for
  /// ">=". Positive entries on inequality rows are violations.
  Eigen::VectorXd row_residual;
  double max_constraint_violation = 0.0;
  RowId worst_constraint;
  double objective_delta = 0.0;
  double tolerance = 0.0;

  bool passed() const {
    return max_bound_violation <= tolerance && max_constraint_violation <= tolerance &&
           objective_delta <= tolerance;
  }
};

/// `objective_delta` is |recomputed - reported| scaled by max(1, |reported|).
ResidualReport check_solution(const LinearProgram& lp, const SolveOutcome& outcome, double tol);

}  // namespace ldes::lp
